#pragma once

#include <array>
#include <cstddef>
#include <functional>

#include "lvthermo/orbit.hpp"

namespace lvthermo {

/// Per-orbit state variables. All integrals are over one period.
struct OrbitSummary {
  double h = 0.0;
  double alpha = 0.0;
  double tau = 0.0;
  double mean_x = 0.0;
  double mean_y = 0.0;
  double var_x = 0.0;  // <(x-1)^2>
  double var_y = 0.0;  // <(y-1)^2>
  /// Invariant-measure area of the enclosed region, int (y-1) ln y dt.
  double area_invariant = 0.0;
  /// Same area from the other line-integral form, int alpha (x-1) ln x dt.
  double area_invariant_alt = 0.0;
  /// Lebesgue area, the line integral of x dy.
  double area_lebesgue = 0.0;
  double theta_x = 0.0;  // <alpha (x-1) ln x>
  double theta_y = 0.0;  // <(y-1) ln y>
  double f_alpha = 0.0;  // -<x - ln x>
  double dA_dalpha = 0.0;  // -int (x - ln x) dt, at fixed h

  [[nodiscard]] double theta() const noexcept { return theta_y; }
};

/// Integrates K orbit functionals alongside the flow over [0, tau]:
///   result[k] = int_0^tau integrands(x(t), y(t))[k] dt.
/// `integrands` maps PhaseState to std::array<double, K>.
template <std::size_t K, class Integrands>
std::array<double, K> orbit_integrals(const Orbit& orbit, Integrands&& integrands) {
  const double alpha = orbit.params.alpha();
  auto rhs = [alpha, &integrands](const StateVec<K + 2>& s, StateVec<K + 2>& d) {
    d[0] = s[0] * (1.0 - s[1]);
    d[1] = alpha * s[1] * (s[0] - 1.0);
    const std::array<double, K> v = integrands(PhaseState{s[0], s[1]});
    for (std::size_t k = 0; k < K; ++k) d[k + 2] = v[k];
  };
  StateVec<K + 2> y0{};
  y0[0] = orbit.seed.x;
  y0[1] = orbit.seed.y;
  const auto y = integrate_system<K + 2>(rhs, 0.0, y0, orbit.period_tau, solver_options(orbit.tol));
  std::array<double, K> out;
  for (std::size_t k = 0; k < K; ++k) out[k] = y[k + 2];
  return out;
}

/// (1/tau) int_0^tau psi(x(t), y(t)) dt via an accumulator state.
[[nodiscard]] double time_average(const Orbit& orbit,
                                  const std::function<double(PhaseState)>& integrand);

/// All state variables from one augmented integration pass.
[[nodiscard]] OrbitSummary summarize(const Orbit& orbit);

/// Independent oracle for the invariant-measure area: midpoint indicator
/// quadrature of {H <= h} on a grid_n x grid_n grid in (ln x, ln y).
/// Requires grid_n >= 64; throws EnergyBelowMinimum for h <= alpha + 1.
[[nodiscard]] double area_invariant_direct(double h, const ModelParams& params, int grid_n);

}  // namespace lvthermo
