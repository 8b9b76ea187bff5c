#include "lvthermo/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace lvthermo {

namespace {

struct LvRhs {
  double alpha;
  double sign;
  void operator()(const StateVec<2>& s, StateVec<2>& d) const noexcept {
    d[0] = sign * s[0] * (1.0 - s[1]);
    d[1] = sign * alpha * s[1] * (s[0] - 1.0);
  }
};

void check_tol(double tol) {
  if (!(tol > 0.0) || tol > 1e-3) {
    throw Error(ErrorKind::InvalidArgument, "tolerance must lie in (0, 1e-3]");
  }
}

void check_energy(double h, const ModelParams& params) {
  if (!(h > params.h_min())) {
    throw Error(ErrorKind::EnergyBelowMinimum,
                "h=" + std::to_string(h) + " must exceed alpha+1=" + std::to_string(params.h_min()));
  }
}

// phi(u) = u - 1 - ln u, minus the target. Monotone on each side of u = 1.
double log_excess(double u) { return (u - 1.0) - std::log(u); }

double bracket_newton(double lo, double hi, double c) {
  // Bisection safeguarded Newton on phi(u) - c over [lo, hi] with a sign change.
  double u = 0.5 * (lo + hi);
  const double f_lo = log_excess(lo) - c;
  for (int it = 0; it < 200; ++it) {
    const double f = log_excess(u) - c;
    if (f == 0.0) return u;
    if ((f < 0.0) == (f_lo < 0.0)) {
      lo = u;
    } else {
      hi = u;
    }
    const double df = 1.0 - 1.0 / u;
    double next = df != 0.0 ? u - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 1e-16 * std::abs(u)) return next;
    u = next;
  }
  return u;
}

}  // namespace

SolverOptions solver_options(double tol) {
  SolverOptions opt;
  opt.rtol = tol;
  opt.atol = std::min(kDefaultAbsTol, tol * 1e-2);
  return opt;
}

PhaseState Trajectory::state_at(double t) const {
  if (segments_.empty()) return samples_.front().state;
  t = std::clamp(t, t_begin(), t_end());
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](double v, const DenseStep<2>& s) { return v < s.t0; });
  if (it != segments_.begin()) --it;
  const auto v = it->eval(t);
  return {v[0], v[1]};
}

std::vector<TrajectorySample> Trajectory::resample(std::size_t n) const {
  std::vector<TrajectorySample> out;
  if (n < 2) n = 2;
  out.reserve(n);
  const double t0 = t_begin();
  const double span = t_end() - t0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = i + 1 == n ? t_end() : t0 + span * static_cast<double>(i) / (n - 1);
    out.push_back({t, i + 1 == n ? back() : state_at(t)});
  }
  return out;
}

Trajectory integrate(PhaseState start, const ModelParams& params, double t_end, double tol) {
  check_tol(tol);
  if (!(t_end > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_end must be positive");
  if (!start.valid()) throw Error(ErrorKind::InvalidArgument, "start state must be positive");

  std::vector<TrajectorySample> samples{{0.0, start}};
  std::vector<DenseStep<2>> segments;
  integrate_system<2>(LvRhs{params.alpha(), 1.0}, 0.0, {start.x, start.y}, t_end,
                      solver_options(tol), [&](const DenseStep<2>& step) {
                        segments.push_back(step);
                        const auto end = step.eval(step.t1());
                        samples.push_back({step.t1(), {end[0], end[1]}});
                      });
  // The final accepted step lands exactly on t_end; use the stepper's value.
  samples.back().t = t_end;
  return Trajectory(std::move(samples), std::move(segments), tol);
}

PhaseState integrate_backward(PhaseState end, const ModelParams& params, double t, double tol) {
  check_tol(tol);
  if (t == 0.0) return end;
  const double sign = t > 0.0 ? -1.0 : 1.0;
  const auto y = integrate_system<2>(LvRhs{params.alpha(), sign}, 0.0, {end.x, end.y},
                                     std::abs(t), solver_options(tol));
  return {y[0], y[1]};
}

RootPair log_excess_roots(double c) {
  if (c < 0.0) throw Error(ErrorKind::InvalidArgument, "log-excess level must be >= 0");
  if (c == 0.0) return {1.0, 1.0};
  // Upper branch: grow geometrically until phi > c.
  double hi = 2.0;
  while (log_excess(hi) <= c) hi *= 2.0;
  const double upper = bracket_newton(1.0 + std::numeric_limits<double>::epsilon(), hi, c);
  // Lower branch. For large c the root sits far below the bisection's reach;
  // u = exp(u - 1 - c) contracts with factor u there and may underflow to 0.
  if (c > 30.0) {
    double lower = 0.0;
    for (int it = 0; it < 4; ++it) lower = std::exp(lower - 1.0 - c);
    return {lower, upper};
  }
  double lo = std::exp(-(c + 1.0));
  while (log_excess(lo) <= c) lo *= 0.5;
  const double lower = bracket_newton(lo, 1.0 - std::numeric_limits<double>::epsilon(), c);
  return {lower, upper};
}

PhaseState seed_point(double h, const ModelParams& params) {
  check_energy(h, params);
  const double c = (h - params.h_min()) / params.alpha();
  return {log_excess_roots(c).upper, 1.0};
}

OrbitBounds orbit_bounds(double h, const ModelParams& params) {
  check_energy(h, params);
  const double dh = h - params.h_min();
  const auto xr = log_excess_roots(dh / params.alpha());
  const auto yr = log_excess_roots(dh);
  return {xr.lower, xr.upper, yr.lower, yr.upper};
}

Orbit orbit_from_energy(double h, const ModelParams& params, double tol) {
  check_tol(tol);
  check_energy(h, params);
  // The orbit dips to about exp(-(h - h_min)) near the axes; below the
  // normal range the flow there is unresolvable.
  const auto box = orbit_bounds(h, params);
  if (!(std::min(box.x_min, box.y_min) >= std::numeric_limits<double>::min())) {
    throw Error(ErrorKind::StepSizeUnderflow,
                "orbit approaches the axes below double range; lower h");
  }
  const PhaseState seed = seed_point(h, params);
  const double t_cap = kPeriodCapFactor * 2.0 * std::numbers::pi / std::sqrt(params.alpha());

  DormandPrince<2, LvRhs> solver(LvRhs{params.alpha(), 1.0}, solver_options(tol));
  solver.reset(0.0, {seed.x, seed.y});

  std::vector<TrajectorySample> samples{{0.0, seed}};
  std::vector<DenseStep<2>> segments;
  bool left_section = false;  // y dropped below 1 at least once
  double period = -1.0;

  while (solver.time() < t_cap) {
    const DenseStep<2>& step = solver.step(t_cap);
    const auto& y0 = step.start();
    const auto& y1 = solver.state();
    const double g0 = y0[1] - 1.0;
    const double g1 = y1[1] - 1.0;
    if (g1 < 0.0 || g0 < 0.0) left_section = true;
    if (left_section && g0 < 0.0 && g1 >= 0.0 && y1[0] > 1.0) {
      // Illinois regula falsi on the continuous extension.
      double a = step.t0, b = step.t1();
      double fa = g0, fb = g1;
      int side = 0;
      for (int it = 0; it < 100 && (b - a) > 1e-13 * std::max(1.0, b); ++it) {
        const double c = (a * fb - b * fa) / (fb - fa);
        const double fc = step.eval(c)[1] - 1.0;
        if (fc == 0.0) {
          a = b = c;
          break;
        }
        if ((fc < 0.0) == (fa < 0.0)) {
          a = c;
          fa = fc;
          if (side == -1) fb *= 0.5;
          side = -1;
        } else {
          b = c;
          fb = fc;
          if (side == 1) fa *= 0.5;
          side = 1;
        }
      }
      period = 0.5 * (a + b);
      DenseStep<2> last = step;
      segments.push_back(last);
      const auto end = step.eval(period);
      samples.push_back({period, {end[0], end[1]}});
      break;
    }
    segments.push_back(step);
    samples.push_back({step.t1(), {y1[0], y1[1]}});
  }
  if (period < 0.0) {
    throw Error(ErrorKind::PeriodNotFound,
                "no return to the section y=1 within t=" + std::to_string(t_cap));
  }
  return Orbit{params, h, period, Trajectory(std::move(samples), std::move(segments), tol), seed,
               tol};
}

double max_energy_deviation(const Orbit& orbit) {
  double worst = 0.0;
  const auto& s = orbit.dense.samples();
  for (std::size_t i = 0; i < s.size(); ++i) {
    worst = std::max(worst, std::abs(hamiltonian(s[i].state, orbit.params) - orbit.h));
    if (i + 1 < s.size()) {
      const double tm = 0.5 * (s[i].t + s[i + 1].t);
      worst = std::max(worst,
                       std::abs(hamiltonian(orbit.dense.state_at(tm), orbit.params) - orbit.h));
    }
  }
  return worst;
}

}  // namespace lvthermo
