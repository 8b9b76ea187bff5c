#pragma once

#include <string>
#include <vector>

#include "lvthermo/orbit_stats.hpp"

namespace lvthermo {

/// One row of the equation-of-state table. `error` is empty for a good row;
/// failed cells keep their (alpha, h) and carry the error name instead.
struct EosRecord {
  double alpha = 0.0;
  double h = 0.0;
  double tau = 0.0;
  double area_A = 0.0;
  double ln_area = 0.0;
  double theta = 0.0;
  double f_alpha_abs = 0.0;
  double area_lebesgue = 0.0;
  std::string error;

  [[nodiscard]] bool ok() const noexcept { return error.empty(); }
};

struct HelmholtzResidual {
  double dh_actual = 0.0;
  double dh_predicted = 0.0;
  double residual = 0.0;
  double step_h = 0.0;
  double step_alpha = 0.0;
};

/// Invariant-measure area A(h, alpha) of the region enclosed by H = h.
[[nodiscard]] double invariant_area(double h, const ModelParams& params,
                                    double tol = kDefaultRelTol);

/// Default central-difference step in h: 1e-4 max(1, h), capped at a quarter
/// of the distance to h_min so both stencil points stay on closed orbits.
[[nodiscard]] double default_h_step(double h, const ModelParams& params);

/// (dA/dh)_alpha by Richardson-extrapolated central differences. Equals the
/// period tau(h, alpha). step <= 0 selects default_h_step().
[[nodiscard]] double dA_dh(double h, const ModelParams& params, double step = 0.0,
                           double tol = kDefaultRelTol);

/// (dA/dalpha)_h by Richardson-extrapolated central differences; h is held
/// fixed by re-seeding every orbit at the perturbed alpha.
[[nodiscard]] double dA_dalpha(double h, const ModelParams& params, double step = 0.0,
                               double tol = kDefaultRelTol);

/// theta = <(y-1) ln y> over the orbit.
[[nodiscard]] double theta_fn(double h, const ModelParams& params, double tol = kDefaultRelTol);
/// F_alpha = -<x - ln x> over the orbit (always <= -1).
[[nodiscard]] double f_alpha_fn(double h, const ModelParams& params, double tol = kDefaultRelTol);

/// theta recomputed as A / (dA/dh), independent of the orbit average.
[[nodiscard]] double theta_from_area(double h, const ModelParams& params,
                                     double tol = kDefaultRelTol);

/// Compares the actual energy step d_h with theta d(ln A) - F_alpha d(alpha)
/// between (h, alpha) and (h + d_h, alpha + d_alpha). The residual is the
/// second-order Taylor remainder.
[[nodiscard]] HelmholtzResidual helmholtz_residual(double h, const ModelParams& params, double d_h,
                                                   double d_alpha, double tol = kDefaultRelTol);

[[nodiscard]] std::vector<double> default_eos_alphas();
/// n offsets log-spaced in [1e-2, 2].
[[nodiscard]] std::vector<double> default_eos_offsets(std::size_t n = 12);

/// One record per (alpha, alpha + 1 + offset), alpha-major. Cells are
/// evaluated on `threads` workers; a failing cell becomes an error row.
[[nodiscard]] std::vector<EosRecord> eos_grid(const std::vector<double>& alphas,
                                              const std::vector<double>& h_offsets,
                                              double tol = kDefaultRelTol, unsigned threads = 1);

/// Cell at an absolute energy (used for fixed-h slices across alpha).
[[nodiscard]] EosRecord eos_record(double alpha, double h, double tol = kDefaultRelTol);

}  // namespace lvthermo
