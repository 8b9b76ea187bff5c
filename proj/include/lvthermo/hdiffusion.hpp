#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lvthermo/orbit_stats.hpp"
#include "lvthermo/parallel.hpp"
#include "lvthermo/stochastic.hpp"

namespace lvthermo {

/// Drift of the averaged energy diffusion.
///   reduced: b = 1/2 <(1+y)/x + alpha (x+1)/y>
///   ito:     b = 1/2 <alpha (1+y)/x + alpha (x+1)/y>  (Ito's formula applied to H)
/// The two agree at alpha = 1.
enum class DriftForm { reduced, ito };

/// Noise amplitude of the averaged energy diffusion.
///   factored:   A = alpha <sqrt((x-1)^2 (1+y)/x + (y-1)^2 (x+1)/y)>
///   mean_root:  A = <sqrt(s2)>,  s2 = alpha^2 (x-1)^2 (1+y)/x + alpha (y-1)^2 (x+1)/y
///   rms:        A = sqrt(<s2>)
/// s2 is the instantaneous variance rate of H / eps under the Ito system.
enum class NoiseForm { factored, mean_root, rms };

[[nodiscard]] std::string_view to_string(DriftForm f) noexcept;
[[nodiscard]] std::string_view to_string(NoiseForm f) noexcept;
/// Throws InvalidArgument on unknown names.
[[nodiscard]] DriftForm drift_form_from_string(std::string_view s);
[[nodiscard]] NoiseForm noise_form_from_string(std::string_view s);

/// Every coefficient form from one orbit pass.
struct CoefficientForms {
  double tau = 0.0;
  double b_reduced = 0.0;
  double b_ito = 0.0;
  double a_factored = 0.0;
  double a_mean_root = 0.0;
  double a_rms = 0.0;

  [[nodiscard]] double b(DriftForm f) const noexcept;
  [[nodiscard]] double a(NoiseForm f) const noexcept;
};

[[nodiscard]] CoefficientForms coefficient_forms(double h, const ModelParams& params,
                                                 double tol = kDefaultRelTol);

struct AveragedCoefficients {
  double b = 0.0;
  double a = 0.0;
};

/// Orbit-averaged (b, A) at energy h. Throws EnergyBelowMinimum for h <= alpha + 1.
[[nodiscard]] AveragedCoefficients averaged_coefficients(double h, const ModelParams& params,
                                                         NoiseForm noise = NoiseForm::factored,
                                                         DriftForm drift = DriftForm::reduced,
                                                         double tol = kDefaultRelTol);

/// Tabulated coefficients and the unnormalized stationary density
///   p(H) = A(H)^-2 exp(2 int_{h_ref}^{H} b / A^2 dh).
/// The density is not normalizable: it grows without bound in H. ln_pss is
/// kept alongside pss because the latter overflows on wide grids.
struct HDiffusionTable {
  double alpha = 0.0;
  double h_ref = 0.0;
  DriftForm drift = DriftForm::reduced;
  NoiseForm noise = NoiseForm::factored;
  std::vector<double> h_grid;
  std::vector<double> b_values;
  std::vector<double> a_values;
  std::vector<double> pss_values;
  std::vector<double> ln_pss_values;
  std::vector<std::string> warnings;  // dropped grid points
};

/// 64 log-spaced offsets in [1e-3, 10] above alpha + 1.
[[nodiscard]] std::vector<double> default_h_grid(const ModelParams& params, std::size_t n = 64);
[[nodiscard]] inline double default_h_ref(const ModelParams& params) { return params.h_min() + 1.0; }

/// Tabulates b and A on h_grid (strictly increasing, all > alpha + 1) and
/// integrates b / A^2 by the trapezoid rule. h_ref must lie in the grid range
/// and is inserted into the grid if absent. Points where A underflows are
/// dropped with a warning; SingularCoefficient if that hits h_ref.
[[nodiscard]] HDiffusionTable pss_curve(const ModelParams& params, std::vector<double> h_grid,
                                        double h_ref, NoiseForm noise = NoiseForm::factored,
                                        DriftForm drift = DriftForm::reduced,
                                        double tol = kDefaultRelTol,
                                        unsigned threads = default_thread_count());

struct HSample {
  double t = 0.0;
  double h = 0.0;
};

/// H evaluated along each sample of an SDE path.
[[nodiscard]] std::vector<HSample> h_path_extract(const SdePath& path, const ModelParams& params);

}  // namespace lvthermo
