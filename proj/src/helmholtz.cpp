#include "lvthermo/helmholtz.hpp"

#include <algorithm>
#include <cmath>

#include "lvthermo/parallel.hpp"

namespace lvthermo {

namespace {

template <class F>
double richardson_central(F&& f, double x, double step) {
  const auto central = [&](double s) { return (f(x + s) - f(x - s)) / (2.0 * s); };
  const double coarse = central(step);
  const double fine = central(0.5 * step);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace

double invariant_area(double h, const ModelParams& params, double tol) {
  return summarize(orbit_from_energy(h, params, tol)).area_invariant;
}

double default_h_step(double h, const ModelParams& params) {
  return std::min(1e-4 * std::max(1.0, h), 0.25 * (h - params.h_min()));
}

double dA_dh(double h, const ModelParams& params, double step, double tol) {
  if (!(h > params.h_min())) {
    throw Error(ErrorKind::EnergyBelowMinimum, "dA/dh needs h > alpha + 1");
  }
  if (step <= 0.0) step = default_h_step(h, params);
  if (!(h - step > params.h_min())) {
    throw Error(ErrorKind::EnergyBelowMinimum, "finite-difference stencil crosses alpha + 1");
  }
  return richardson_central([&](double v) { return invariant_area(v, params, tol); }, h, step);
}

double dA_dalpha(double h, const ModelParams& params, double step, double tol) {
  const double a = params.alpha();
  if (step <= 0.0) step = std::min({1e-4 * std::max(1.0, a), 0.25 * (h - params.h_min()), 0.5 * a});
  if (!(h > a + step + 1.0)) {
    throw Error(ErrorKind::EnergyBelowMinimum, "alpha stencil pushes h_min above h");
  }
  return richardson_central([&](double v) { return invariant_area(h, ModelParams(v), tol); }, a,
                            step);
}

double theta_fn(double h, const ModelParams& params, double tol) {
  return summarize(orbit_from_energy(h, params, tol)).theta();
}

double f_alpha_fn(double h, const ModelParams& params, double tol) {
  return summarize(orbit_from_energy(h, params, tol)).f_alpha;
}

double theta_from_area(double h, const ModelParams& params, double tol) {
  return invariant_area(h, params, tol) / dA_dh(h, params, 0.0, tol);
}

HelmholtzResidual helmholtz_residual(double h, const ModelParams& params, double d_h,
                                     double d_alpha, double tol) {
  const ModelParams moved(params.alpha() + d_alpha);
  if (!(h > params.h_min()) || !(h + d_h > moved.h_min())) {
    throw Error(ErrorKind::EnergyBelowMinimum, "Helmholtz step leaves the closed-orbit region");
  }
  const auto base = summarize(orbit_from_energy(h, params, tol));
  const double area_moved = invariant_area(h + d_h, moved, tol);
  const double dlnA = std::log(area_moved) - std::log(base.area_invariant);
  HelmholtzResidual r;
  r.step_h = d_h;
  r.step_alpha = d_alpha;
  r.dh_actual = d_h;
  r.dh_predicted = base.theta() * dlnA - base.f_alpha * d_alpha;
  r.residual = r.dh_actual - r.dh_predicted;
  return r;
}

std::vector<double> default_eos_alphas() { return {0.5, 0.6, 0.8, 1.0, 1.2}; }

std::vector<double> default_eos_offsets(std::size_t n) {
  std::vector<double> out;
  if (n == 0) return out;
  if (n == 1) return {1e-2};
  const double lo = std::log(1e-2), hi = std::log(2.0);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(std::exp(lo + (hi - lo) * static_cast<double>(i) / (n - 1)));
  }
  return out;
}

EosRecord eos_record(double alpha, double h, double tol) {
  EosRecord rec;
  rec.alpha = alpha;
  rec.h = h;
  try {
    const auto s = summarize(orbit_from_energy(h, ModelParams(alpha), tol));
    rec.tau = s.tau;
    rec.area_A = s.area_invariant;
    rec.ln_area = std::log(s.area_invariant);
    rec.theta = s.theta();
    rec.f_alpha_abs = -s.f_alpha;
    rec.area_lebesgue = s.area_lebesgue;
  } catch (const Error& e) {
    rec.error = std::string(e.name());
  }
  return rec;
}

std::vector<EosRecord> eos_grid(const std::vector<double>& alphas,
                                const std::vector<double>& h_offsets, double tol,
                                unsigned threads) {
  const std::size_t n_off = h_offsets.size();
  return parallel_map(alphas.size() * n_off, threads, [&](std::size_t i) {
    const double a = alphas[i / n_off];
    const double off = h_offsets[i % n_off];
    if (!(off > 0.0) || !(a > 0.0)) {
      EosRecord rec;
      rec.alpha = a;
      rec.h = a + 1.0 + off;
      rec.error = !(a > 0.0) ? "InvalidArgument" : "EnergyBelowMinimum";
      return rec;
    }
    return eos_record(a, a + 1.0 + off, tol);
  });
}

}  // namespace lvthermo
