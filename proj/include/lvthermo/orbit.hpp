#pragma once

#include <cstddef>
#include <vector>

#include "lvthermo/integrator.hpp"
#include "lvthermo/model.hpp"

namespace lvthermo {

inline constexpr double kDefaultRelTol = 1e-10;
inline constexpr double kDefaultAbsTol = 1e-12;

/// Bound on |H(t) - H(0)| per unit time for DOPRI5 at relative tolerance
/// `tol` on the LV field: drift <= kEnergyDriftFactor * tol * max(1, t).
inline constexpr double kEnergyDriftFactor = 10.0;

[[nodiscard]] inline double energy_drift_bound(double tol, double duration) noexcept {
  return kEnergyDriftFactor * tol * (duration > 1.0 ? duration : 1.0);
}

struct TrajectorySample {
  double t = 0.0;
  PhaseState state;
};

/// Accepted-step samples plus the continuous extension of every step, so the
/// path can be evaluated at any time in [t_begin, t_end].
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(std::vector<TrajectorySample> samples, std::vector<DenseStep<2>> segments,
             double tol)
      : samples_(std::move(samples)), segments_(std::move(segments)), tol_(tol) {}

  [[nodiscard]] const std::vector<TrajectorySample>& samples() const noexcept { return samples_; }
  [[nodiscard]] double tol() const noexcept { return tol_; }
  [[nodiscard]] double t_begin() const noexcept { return samples_.front().t; }
  [[nodiscard]] double t_end() const noexcept { return samples_.back().t; }
  [[nodiscard]] const PhaseState& front() const noexcept { return samples_.front().state; }
  [[nodiscard]] const PhaseState& back() const noexcept { return samples_.back().state; }

  /// Dense-output evaluation; t is clamped to the covered interval.
  [[nodiscard]] PhaseState state_at(double t) const;

  /// n points equally spaced in time over [t_begin, t_end], endpoints included.
  [[nodiscard]] std::vector<TrajectorySample> resample(std::size_t n) const;

 private:
  std::vector<TrajectorySample> samples_;
  std::vector<DenseStep<2>> segments_;
  double tol_ = kDefaultRelTol;
};

/// One closed orbit Gamma_{H=h}: seeded on the section y = 1, x > 1 and
/// integrated until the next upward crossing of that section.
struct Orbit {
  ModelParams params;
  double h = 0.0;
  double period_tau = 0.0;
  Trajectory dense;
  PhaseState seed;
  double tol = kDefaultRelTol;
};

[[nodiscard]] SolverOptions solver_options(double tol);

/// Integrates the LV flow from `start` over [0, t_end]. A negative-time
/// integration is available through integrate_backward().
/// Throws StepSizeUnderflow if the step controller stalls.
[[nodiscard]] Trajectory integrate(PhaseState start, const ModelParams& params, double t_end,
                                   double tol = kDefaultRelTol);

/// State reached by flowing backward for time `t` (pre-image under the flow).
[[nodiscard]] PhaseState integrate_backward(PhaseState end, const ModelParams& params, double t,
                                            double tol = kDefaultRelTol);

/// Root x+ > 1 of alpha (x - 1 - ln x) = h - h_min on the section y = 1.
[[nodiscard]] PhaseState seed_point(double h, const ModelParams& params);

/// Both roots of u - 1 - ln u = c (c >= 0): {u_minus <= 1, u_plus >= 1}.
/// Used for orbit extremes: x range solves with c = (h - h_min)/alpha,
/// y range with c = h - h_min.
struct RootPair {
  double lower;
  double upper;
};
[[nodiscard]] RootPair log_excess_roots(double c);

/// Axis-aligned bounding box of the closed orbit H = h.
struct OrbitBounds {
  double x_min, x_max, y_min, y_max;
};
[[nodiscard]] OrbitBounds orbit_bounds(double h, const ModelParams& params);

/// Time cap for the period search, in units of the small-oscillation period.
inline constexpr double kPeriodCapFactor = 100.0;

/// Builds Gamma_{H=h}; the period is located by event root-finding on the
/// dense output to 1e-12 in time. Throws EnergyBelowMinimum for h <= h_min and
/// PeriodNotFound if no return happens within the time cap.
[[nodiscard]] Orbit orbit_from_energy(double h, const ModelParams& params,
                                      double tol = kDefaultRelTol);

/// max_i |H(sample_i) - h| over accepted steps and step midpoints.
[[nodiscard]] double max_energy_deviation(const Orbit& orbit);

}  // namespace lvthermo
