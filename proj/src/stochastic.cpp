#include "lvthermo/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lvthermo/error.hpp"
#include "lvthermo/rng.hpp"

namespace lvthermo {

SsaRates ssa_rates(const DiscreteState& s, const ModelParams& params) {
  const double m = static_cast<double>(s.m);
  const double n = static_cast<double>(s.n);
  const double a = params.alpha();
  return {m, m * n / s.omega, a * n * m / s.omega, a * n};
}

DiscreteState JumpPath::state_at(double t) const {
  auto it = std::upper_bound(events.begin(), events.end(), t,
                             [](double v, const JumpEvent& e) { return v < e.t; });
  if (it != events.begin()) --it;
  return {it->m, it->n, omega};
}

JumpPath ssa_simulate(const DiscreteState& start, const ModelParams& params, double t_max,
                      std::uint64_t seed, std::uint64_t stream) {
  if (!(t_max > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_max must be positive");
  if (start.m < 0 || start.n < 0 || !(start.omega > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "counts must be >= 0 and omega > 0");
  }
  JumpPath path;
  path.omega = start.omega;
  path.alpha = params.alpha();
  path.t_max = t_max;
  path.seed = seed;
  path.stream = stream;
  path.events.push_back({0.0, start.m, start.n});

  CounterRng rng(seed, stream);
  DiscreteState s = start;
  double t = 0.0;
  for (;;) {
    const SsaRates r = ssa_rates(s, params);
    const double total = r.total();
    if (total <= 0.0) {
      path.absorbed = true;
      break;
    }
    t += rng.exponential() / total;
    if (t > t_max) break;
    const double pick = rng.uniform() * total;
    if (pick < r.prey_birth) {
      ++s.m;
    } else if (pick < r.prey_birth + r.prey_death) {
      --s.m;
    } else if (pick < r.prey_birth + r.prey_death + r.predator_birth) {
      ++s.n;
    } else {
      --s.n;
    }
    path.events.push_back({t, s.m, s.n});
  }
  path.prey_extinct = s.m == 0;
  path.predator_extinct = s.n == 0;
  return path;
}

double master_stationarity_residual(const DiscreteState& s, const ModelParams& params) {
  if (s.m < 2 || s.n < 2) {
    throw Error(ErrorKind::BoundaryState, "stationarity check needs m >= 2 and n >= 2");
  }
  const auto p = [](std::int64_t m, std::int64_t n) {
    return 1.0 / (static_cast<double>(m) * static_cast<double>(n));
  };
  const auto rates_at = [&](std::int64_t m, std::int64_t n) {
    return ssa_rates({m, n, s.omega}, params);
  };
  const std::int64_t m = s.m, n = s.n;
  const double inflow = p(m - 1, n) * rates_at(m - 1, n).prey_birth +
                        p(m + 1, n) * rates_at(m + 1, n).prey_death +
                        p(m, n - 1) * rates_at(m, n - 1).predator_birth +
                        p(m, n + 1) * rates_at(m, n + 1).predator_death;
  const SsaRates out = rates_at(m, n);
  const double outflow = p(m, n) * out.prey_birth + p(m, n) * out.prey_death +
                         p(m, n) * out.predator_birth + p(m, n) * out.predator_death;
  return inflow - outflow;
}

namespace {

struct EulerStepper {
  double alpha;
  double epsilon;
  const SdeOptions& options;
  CounterRng& rng;
  SdePath& path;

  void advance(PhaseState& s, double h, int depth) {
    const double drift_x = s.x * (1.0 - s.y);
    const double drift_y = alpha * s.y * (s.x - 1.0);
    const double sx = std::sqrt(epsilon * s.x * (1.0 + s.y) * h);
    const double sy = std::sqrt(epsilon * alpha * s.y * (s.x + 1.0) * h);
    for (int attempt = 0; attempt <= options.max_resamples; ++attempt) {
      const double z1 = rng.normal();
      const double z2 = rng.normal();
      const PhaseState next{s.x + drift_x * h + sx * z1, s.y + drift_y * h + sy * z2};
      if (next.x > 0.0 && next.y > 0.0) {
        s = next;
        return;
      }
      ++path.resamples;
    }
    if (depth >= options.max_halvings) {
      throw Error(ErrorKind::StepRejectionLimit,
                  "positivity could not be maintained; reduce dt");
    }
    ++path.halvings;
    advance(s, 0.5 * h, depth + 1);
    advance(s, 0.5 * h, depth + 1);
  }
};

}  // namespace

SdePath sde_simulate(PhaseState start, const ModelParams& params, double epsilon, double dt,
                     double t_max, std::uint64_t seed, std::uint64_t stream,
                     const SdeOptions& options) {
  if (!(epsilon >= 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be >= 0");
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt must be positive");
  if (!(t_max > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_max must be positive");
  if (!start.valid()) throw Error(ErrorKind::InvalidArgument, "start state must be positive");

  SdePath path;
  path.epsilon = epsilon;
  path.dt = dt;
  path.seed = seed;
  path.stream = stream;
  const std::size_t every = std::max<std::size_t>(1, options.record_every);
  const auto n_steps = static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
  path.samples.reserve(n_steps / every + 2);
  path.samples.push_back({0.0, start});

  CounterRng rng(seed, stream);
  EulerStepper stepper{params.alpha(), epsilon, options, rng, path};
  PhaseState s = start;
  for (std::size_t k = 1; k <= n_steps; ++k) {
    const double t_prev = static_cast<double>(k - 1) * dt;
    const double t_next = k == n_steps ? t_max : static_cast<double>(k) * dt;
    stepper.advance(s, t_next - t_prev, 0);
    if (k % every == 0 || k == n_steps) path.samples.push_back({t_next, s});
  }
  return path;
}

Vector2 decomposition_drift(PhaseState s, const ModelParams& params, double epsilon) {
  const double a = params.alpha();
  const double d_xx = 0.5 * s.x * (1.0 + s.y);
  const double d_yy = 0.5 * a * s.y * (s.x + 1.0);
  // grad ln G = (1/x, 1/y) for G = x y.
  const double grad_x = 1.0 / s.x;
  const double grad_y = 1.0 / s.y;
  const double g = scalar_factor(s);
  const auto dH = hamiltonian_gradient(s, params);
  return {-epsilon * d_xx * grad_x - g * dH.dy, -epsilon * d_yy * grad_y + g * dH.dx};
}

namespace {

std::array<double, 4> drift_jacobian(PhaseState s, const ModelParams& params, double epsilon,
                                     double step) {
  const double xp = s.x + step, xm = s.x - step;
  const double yp = s.y + step, ym = s.y - step;
  const auto fxp = decomposition_drift({xp, s.y}, params, epsilon);
  const auto fxm = decomposition_drift({xm, s.y}, params, epsilon);
  const auto fyp = decomposition_drift({s.x, yp}, params, epsilon);
  const auto fym = decomposition_drift({s.x, ym}, params, epsilon);
  // Divide by the representable stencil width, not 2*step.
  const double wx = xp - xm, wy = yp - ym;
  return {(fxp.dx - fxm.dx) / wx, (fyp.dx - fym.dx) / wy, (fxp.dy - fxm.dy) / wx,
          (fyp.dy - fym.dy) / wy};
}

}  // namespace

FixedPointSpectrum fixed_point_eigenvalues(const ModelParams& params, double epsilon) {
  if (!(epsilon >= 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be >= 0");
  constexpr double kJacobianStep = 1e-6;
  PhaseState s{1.0 + epsilon, 1.0 - epsilon};
  if (!s.valid()) s = {1.0, 1.0};
  bool converged = false;
  for (int it = 0; it < 100; ++it) {
    const auto f = decomposition_drift(s, params, epsilon);
    if (std::hypot(f.dx, f.dy) <= 1e-15) {
      converged = true;
      break;
    }
    const auto J = drift_jacobian(s, params, epsilon, kJacobianStep);
    const double det = J[0] * J[3] - J[1] * J[2];
    if (det == 0.0 || !std::isfinite(det)) break;
    const double dx = (J[3] * f.dx - J[1] * f.dy) / det;
    const double dy = (-J[2] * f.dx + J[0] * f.dy) / det;
    s = {s.x - dx, s.y - dy};
    if (!s.valid()) break;
    if (std::hypot(dx, dy) <= 1e-15 * (1.0 + std::hypot(s.x, s.y))) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw Error(ErrorKind::FixedPointNotFound,
                "Newton iteration for the drift fixed point did not converge");
  }
  FixedPointSpectrum out;
  out.fixed_point = s;
  out.jacobian = drift_jacobian(s, params, epsilon, kJacobianStep);
  const auto& J = out.jacobian;
  const double half_tr = 0.5 * (J[0] + J[3]);
  const double det = J[0] * J[3] - J[1] * J[2];
  const std::complex<double> root = std::sqrt(std::complex<double>(half_tr * half_tr - det, 0.0));
  out.lambda_plus = half_tr + root;
  out.lambda_minus = half_tr - root;
  if (out.lambda_plus.imag() < out.lambda_minus.imag()) std::swap(out.lambda_plus, out.lambda_minus);
  return out;
}

}  // namespace lvthermo
