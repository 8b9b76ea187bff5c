#include "lvthermo/hdiffusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "lvthermo/parallel.hpp"

namespace lvthermo {

std::string_view to_string(DriftForm f) noexcept {
  return f == DriftForm::reduced ? "reduced" : "ito";
}

std::string_view to_string(NoiseForm f) noexcept {
  switch (f) {
    case NoiseForm::factored:
      return "factored";
    case NoiseForm::mean_root:
      return "mean_root";
    case NoiseForm::rms:
      return "rms";
  }
  return "factored";
}

DriftForm drift_form_from_string(std::string_view s) {
  if (s == "reduced") return DriftForm::reduced;
  if (s == "ito") return DriftForm::ito;
  throw Error(ErrorKind::InvalidArgument, fmt::format("unknown drift form '{}'", s));
}

NoiseForm noise_form_from_string(std::string_view s) {
  if (s == "factored") return NoiseForm::factored;
  if (s == "mean_root") return NoiseForm::mean_root;
  if (s == "rms") return NoiseForm::rms;
  throw Error(ErrorKind::InvalidArgument, fmt::format("unknown noise form '{}'", s));
}

double CoefficientForms::b(DriftForm f) const noexcept {
  return f == DriftForm::reduced ? b_reduced : b_ito;
}

double CoefficientForms::a(NoiseForm f) const noexcept {
  switch (f) {
    case NoiseForm::factored:
      return a_factored;
    case NoiseForm::mean_root:
      return a_mean_root;
    case NoiseForm::rms:
      return a_rms;
  }
  return a_factored;
}

CoefficientForms coefficient_forms(double h, const ModelParams& params, double tol) {
  const Orbit orbit = orbit_from_energy(h, params, tol);
  const double a = params.alpha();
  const auto sums = orbit_integrals<5>(orbit, [a](PhaseState s) {
    const double u = (s.x - 1.0) * (s.x - 1.0) * (1.0 + s.y) / s.x;
    const double v = (s.y - 1.0) * (s.y - 1.0) * (s.x + 1.0) / s.y;
    const double s2 = a * a * u + a * v;
    return std::array<double, 5>{(1.0 + s.y) / s.x + a * (s.x + 1.0) / s.y,
                                 a * (1.0 + s.y) / s.x + a * (s.x + 1.0) / s.y,
                                 std::sqrt(u + v), std::sqrt(s2), s2};
  });
  const double tau = orbit.period_tau;
  CoefficientForms c;
  c.tau = tau;
  c.b_reduced = 0.5 * sums[0] / tau;
  c.b_ito = 0.5 * sums[1] / tau;
  c.a_factored = a * sums[2] / tau;
  c.a_mean_root = sums[3] / tau;
  c.a_rms = std::sqrt(sums[4] / tau);
  return c;
}

AveragedCoefficients averaged_coefficients(double h, const ModelParams& params, NoiseForm noise,
                                           DriftForm drift, double tol) {
  const auto c = coefficient_forms(h, params, tol);
  return {c.b(drift), c.a(noise)};
}

std::vector<double> default_h_grid(const ModelParams& params, std::size_t n) {
  std::vector<double> out;
  if (n == 0) return out;
  if (n == 1) return {params.h_min() + 1e-3};
  const double lo = std::log(1e-3), hi = std::log(10.0);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(params.h_min() + std::exp(lo + (hi - lo) * static_cast<double>(i) / (n - 1)));
  }
  return out;
}

HDiffusionTable pss_curve(const ModelParams& params, std::vector<double> h_grid, double h_ref,
                          NoiseForm noise, DriftForm drift, double tol, unsigned threads) {
  if (h_grid.size() < 2) throw Error(ErrorKind::InvalidArgument, "h grid needs at least 2 points");
  for (std::size_t i = 0; i < h_grid.size(); ++i) {
    if (!(h_grid[i] > params.h_min())) {
      throw Error(ErrorKind::EnergyBelowMinimum,
                  fmt::format("grid point h = {} is not above alpha + 1", h_grid[i]));
    }
    if (i > 0 && !(h_grid[i] > h_grid[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "h grid must be strictly increasing");
    }
  }
  if (!(h_ref >= h_grid.front() && h_ref <= h_grid.back())) {
    throw Error(ErrorKind::InvalidArgument, "h_ref outside the grid range");
  }
  if (!std::binary_search(h_grid.begin(), h_grid.end(), h_ref)) {
    h_grid.insert(std::upper_bound(h_grid.begin(), h_grid.end(), h_ref), h_ref);
  }

  const auto coeffs = parallel_map(h_grid.size(), threads, [&](std::size_t i) {
    return averaged_coefficients(h_grid[i], params, noise, drift, tol);
  });

  HDiffusionTable table;
  table.alpha = params.alpha();
  table.h_ref = h_ref;
  table.drift = drift;
  table.noise = noise;
  for (std::size_t i = 0; i < h_grid.size(); ++i) {
    const double a2 = coeffs[i].a * coeffs[i].a;
    if (!(a2 >= std::numeric_limits<double>::min()) || !std::isfinite(coeffs[i].b / a2)) {
      if (h_grid[i] == h_ref) {
        throw Error(ErrorKind::SingularCoefficient, "A(h) underflows at h_ref");
      }
      table.warnings.push_back(
          fmt::format("dropped h = {:.17g}: A(h) = {:.3g} underflows", h_grid[i], coeffs[i].a));
      continue;
    }
    table.h_grid.push_back(h_grid[i]);
    table.b_values.push_back(coeffs[i].b);
    table.a_values.push_back(coeffs[i].a);
  }

  // Cumulative trapezoid of b / A^2, shifted to vanish at h_ref.
  const std::size_t n = table.h_grid.size();
  std::vector<double> integral(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const double f0 = table.b_values[i - 1] / (table.a_values[i - 1] * table.a_values[i - 1]);
    const double f1 = table.b_values[i] / (table.a_values[i] * table.a_values[i]);
    integral[i] = integral[i - 1] + 0.5 * (f0 + f1) * (table.h_grid[i] - table.h_grid[i - 1]);
  }
  const auto ref_it = std::lower_bound(table.h_grid.begin(), table.h_grid.end(), h_ref);
  const double shift = integral[static_cast<std::size_t>(ref_it - table.h_grid.begin())];
  for (std::size_t i = 0; i < n; ++i) {
    const double ln_p = 2.0 * (integral[i] - shift) - 2.0 * std::log(table.a_values[i]);
    table.ln_pss_values.push_back(ln_p);
    table.pss_values.push_back(std::exp(ln_p));
  }
  return table;
}

std::vector<HSample> h_path_extract(const SdePath& path, const ModelParams& params) {
  std::vector<HSample> out;
  out.reserve(path.samples.size());
  for (const auto& s : path.samples) out.push_back({s.t, hamiltonian(s.state, params)});
  return out;
}

}  // namespace lvthermo
