#include "lvthermo/orbit_stats.hpp"

#include <cmath>
#include <string>

namespace lvthermo {

double time_average(const Orbit& orbit, const std::function<double(PhaseState)>& integrand) {
  const auto r =
      orbit_integrals<1>(orbit, [&](PhaseState s) { return std::array<double, 1>{integrand(s)}; });
  return r[0] / orbit.period_tau;
}

OrbitSummary summarize(const Orbit& orbit) {
  const double a = orbit.params.alpha();
  enum : std::size_t { kX, kY, kVarX, kVarY, kAreaY, kAreaX, kLebesgue, kForce, kCount };
  const auto I = orbit_integrals<kCount>(orbit, [a](PhaseState s) {
    const double lx = std::log(s.x);
    const double ly = std::log(s.y);
    std::array<double, kCount> v{};
    v[kX] = s.x;
    v[kY] = s.y;
    v[kVarX] = (s.x - 1.0) * (s.x - 1.0);
    v[kVarY] = (s.y - 1.0) * (s.y - 1.0);
    v[kAreaY] = (s.y - 1.0) * ly;
    v[kAreaX] = a * (s.x - 1.0) * lx;
    v[kLebesgue] = s.x * a * s.y * (s.x - 1.0);  // x dy/dt
    v[kForce] = s.x - lx;
    return v;
  });
  const double tau = orbit.period_tau;
  OrbitSummary out;
  out.h = orbit.h;
  out.alpha = a;
  out.tau = tau;
  out.mean_x = I[kX] / tau;
  out.mean_y = I[kY] / tau;
  out.var_x = I[kVarX] / tau;
  out.var_y = I[kVarY] / tau;
  out.area_invariant = I[kAreaY];
  out.area_invariant_alt = I[kAreaX];
  out.area_lebesgue = I[kLebesgue];
  out.theta_x = I[kAreaX] / tau;
  out.theta_y = I[kAreaY] / tau;
  out.f_alpha = -I[kForce] / tau;
  out.dA_dalpha = -I[kForce];
  return out;
}

double area_invariant_direct(double h, const ModelParams& params, int grid_n) {
  if (grid_n < 64) throw Error(ErrorKind::InvalidArgument, "grid_n must be >= 64");
  const auto b = orbit_bounds(h, params);
  const double p_lo0 = std::log(b.x_min), p_hi0 = std::log(b.x_max);
  const double q_lo0 = std::log(b.y_min), q_hi0 = std::log(b.y_max);
  const double mp = 0.05 * (p_hi0 - p_lo0), mq = 0.05 * (q_hi0 - q_lo0);
  const double p_lo = p_lo0 - mp, q_lo = q_lo0 - mq;
  const double dp = (p_hi0 - p_lo0 + 2 * mp) / grid_n;
  const double dq = (q_hi0 - q_lo0 + 2 * mq) / grid_n;
  const double a = params.alpha();
  const double excess = h - params.h_min();
  // H - h_min = alpha (e^p - 1 - p) + (e^q - 1 - q), separable in (p, q).
  std::vector<double> qpart(static_cast<std::size_t>(grid_n));
  for (int j = 0; j < grid_n; ++j) {
    const double q = q_lo + (j + 0.5) * dq;
    qpart[j] = std::expm1(q) - q;
  }
  long long inside = 0;
  for (int i = 0; i < grid_n; ++i) {
    const double p = p_lo + (i + 0.5) * dp;
    const double pp = a * (std::expm1(p) - p);
    if (pp > excess) continue;
    for (int j = 0; j < grid_n; ++j) {
      if (pp + qpart[j] <= excess) ++inside;
    }
  }
  return static_cast<double>(inside) * dp * dq;
}

}  // namespace lvthermo
