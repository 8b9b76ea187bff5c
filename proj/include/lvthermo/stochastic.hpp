#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "lvthermo/model.hpp"

namespace lvthermo {

/// Integer prey (m) and predator (n) counts in a habitat of size omega.
struct DiscreteState {
  std::int64_t m = 0;
  std::int64_t n = 0;
  double omega = 1.0;

  [[nodiscard]] double x() const noexcept { return static_cast<double>(m) / omega; }
  [[nodiscard]] double y() const noexcept { return static_cast<double>(n) / omega; }
};

/// Birth-death channel rates.
struct SsaRates {
  double prey_birth = 0.0;      // m
  double prey_death = 0.0;      // m n / omega
  double predator_birth = 0.0;  // alpha n m / omega
  double predator_death = 0.0;  // alpha n

  [[nodiscard]] double total() const noexcept {
    return prey_birth + prey_death + predator_birth + predator_death;
  }
};

[[nodiscard]] SsaRates ssa_rates(const DiscreteState& s, const ModelParams& params);

struct JumpEvent {
  double t = 0.0;
  std::int64_t m = 0;
  std::int64_t n = 0;
};

/// Piecewise-constant realization; events[0] is the initial state at t = 0.
struct JumpPath {
  std::vector<JumpEvent> events;
  double omega = 1.0;
  double alpha = 1.0;
  double t_max = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  bool absorbed = false;  // all rates vanished (m = n = 0) before t_max
  bool prey_extinct = false;
  bool predator_extinct = false;

  /// State holding at time t (right-continuous).
  [[nodiscard]] DiscreteState state_at(double t) const;
};

/// Gillespie direct method on [0, t_max]. Reproducible given (seed, stream).
[[nodiscard]] JumpPath ssa_simulate(const DiscreteState& start, const ModelParams& params,
                                    double t_max, std::uint64_t seed, std::uint64_t stream = 0);

/// Inflow minus outflow of the stationary master equation evaluated on the
/// measure p(m, n) = 1/(m n). Interior states only (m, n >= 2); otherwise
/// throws BoundaryState.
[[nodiscard]] double master_stationarity_residual(const DiscreteState& s,
                                                  const ModelParams& params);

struct SdeSample {
  double t = 0.0;
  PhaseState state;
};

struct SdeOptions {
  std::size_t record_every = 1;  // keep every k-th step (the last step is always kept)
  int max_resamples = 100;       // Gaussian redraws before halving the step
  int max_halvings = 30;
};

struct SdePath {
  std::vector<SdeSample> samples;
  double epsilon = 0.0;
  double dt = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::size_t resamples = 0;
  std::size_t halvings = 0;
};

/// Euler-Maruyama for the Ito system
///   dX = X(1-Y) dt + sqrt(eps X (1+Y)) dW1
///   dY = alpha Y (X-1) dt + sqrt(eps alpha Y (X+1)) dW2.
/// Steps that would leave the positive quadrant are redrawn, then halved.
/// Throws StepRejectionLimit when halving is exhausted.
[[nodiscard]] SdePath sde_simulate(PhaseState start, const ModelParams& params, double epsilon,
                                   double dt, double t_max, std::uint64_t seed,
                                   std::uint64_t stream = 0, const SdeOptions& options = {});

/// Deterministic part of the divergence-form dynamics:
///   -eps D grad(ln G) + G (-dH/dy, dH/dx),  D = diag(x(1+y), alpha y(x+1)) / 2.
[[nodiscard]] Vector2 decomposition_drift(PhaseState s, const ModelParams& params, double epsilon);

struct FixedPointSpectrum {
  PhaseState fixed_point;
  std::array<double, 4> jacobian{};  // row-major
  std::complex<double> lambda_plus;  // Im >= 0
  std::complex<double> lambda_minus;
};

/// Locates the fixed point of decomposition_drift by Newton iteration and
/// returns the eigenvalues of its central-difference Jacobian.
/// Throws FixedPointNotFound if Newton fails.
[[nodiscard]] FixedPointSpectrum fixed_point_eigenvalues(const ModelParams& params, double epsilon);

}  // namespace lvthermo
