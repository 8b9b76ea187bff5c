#pragma once

// Dormand-Prince 5(4) explicit Runge-Kutta pair with the standard
// 4th-order continuous extension (Hairer, Norsett & Wanner, DOPRI5).
// Templated on the state dimension so time averages can be integrated as
// extra accumulator components next to (x, y).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "lvthermo/error.hpp"

namespace lvthermo {

template <std::size_t N>
using StateVec = std::array<double, N>;

struct SolverOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_init = 0.0;  // 0: automatic
  double h_min = 1e-13;
  double h_max = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 50'000'000;
};

/// Continuous extension over one accepted step [t0, t0 + h].
template <std::size_t N>
struct DenseStep {
  double t0 = 0.0;
  double h = 0.0;
  std::array<StateVec<N>, 5> rcont{};

  [[nodiscard]] double t1() const noexcept { return t0 + h; }

  [[nodiscard]] StateVec<N> eval(double t) const noexcept {
    const double s = (t - t0) / h;
    const double s1 = 1.0 - s;
    StateVec<N> out;
    for (std::size_t i = 0; i < N; ++i) {
      out[i] = rcont[0][i] +
               s * (rcont[1][i] + s1 * (rcont[2][i] + s * (rcont[3][i] + s1 * rcont[4][i])));
    }
    return out;
  }
  [[nodiscard]] const StateVec<N>& start() const noexcept { return rcont[0]; }
};

namespace dopri {
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                        a75 = -2187.0 / 6784, a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
inline constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                        d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                        d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;
}  // namespace dopri

/// Adaptive stepper for an autonomous system y' = rhs(y).
/// Rhs must be callable as rhs(const StateVec<N>& y, StateVec<N>& dydt).
template <std::size_t N, class Rhs>
class DormandPrince {
 public:
  DormandPrince(Rhs rhs, SolverOptions opt) : rhs_(std::move(rhs)), opt_(opt) {}

  void reset(double t, const StateVec<N>& y) {
    t_ = t;
    y_ = y;
    rhs_(y_, k1_);
    h_ = opt_.h_init > 0.0 ? opt_.h_init : initial_step();
    steps_ = 0;
  }

  [[nodiscard]] double time() const noexcept { return t_; }
  [[nodiscard]] const StateVec<N>& state() const noexcept { return y_; }
  [[nodiscard]] std::size_t steps() const noexcept { return steps_; }
  [[nodiscard]] std::size_t rejected() const noexcept { return rejected_; }

  /// Takes one accepted step that does not pass t_limit (> time()).
  /// Returns the continuous extension of the step.
  const DenseStep<N>& step(double t_limit) {
    using namespace dopri;
    if (++steps_ > opt_.max_steps) {
      throw Error(ErrorKind::StepSizeUnderflow, "step budget exhausted");
    }
    bool last_rejected = false;
    for (;;) {
      double h = std::min(h_, opt_.h_max);
      bool hits_limit = false;
      if (t_ + h >= t_limit || t_ + 1.01 * h >= t_limit) {
        h = t_limit - t_;
        hits_limit = true;
      }
      if (h < opt_.h_min * std::max(1.0, std::abs(t_)) && !hits_limit) {
        throw Error(ErrorKind::StepSizeUnderflow,
                    "step size fell below " + std::to_string(opt_.h_min) + " at t=" +
                        std::to_string(t_));
      }

      StateVec<N> tmp;
      for (std::size_t i = 0; i < N; ++i) tmp[i] = y_[i] + h * a21 * k1_[i];
      rhs_(tmp, k2_);
      for (std::size_t i = 0; i < N; ++i) tmp[i] = y_[i] + h * (a31 * k1_[i] + a32 * k2_[i]);
      rhs_(tmp, k3_);
      for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y_[i] + h * (a41 * k1_[i] + a42 * k2_[i] + a43 * k3_[i]);
      rhs_(tmp, k4_);
      for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y_[i] + h * (a51 * k1_[i] + a52 * k2_[i] + a53 * k3_[i] + a54 * k4_[i]);
      rhs_(tmp, k5_);
      for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y_[i] + h * (a61 * k1_[i] + a62 * k2_[i] + a63 * k3_[i] + a64 * k4_[i] +
                              a65 * k5_[i]);
      rhs_(tmp, k6_);
      StateVec<N> y_new;
      for (std::size_t i = 0; i < N; ++i)
        y_new[i] = y_[i] + h * (a71 * k1_[i] + a73 * k3_[i] + a74 * k4_[i] + a75 * k5_[i] +
                                a76 * k6_[i]);
      rhs_(y_new, k7_);

      double err = 0.0;
      bool finite = true;
      for (std::size_t i = 0; i < N; ++i) {
        const double e = h * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] +
                              e6 * k6_[i] + e7 * k7_[i]);
        const double sk = opt_.atol + opt_.rtol * std::max(std::abs(y_[i]), std::abs(y_new[i]));
        const double r = e / sk;
        err += r * r;
        finite = finite && std::isfinite(y_new[i]);
      }
      err = std::sqrt(err / static_cast<double>(N));
      if (!finite) err = std::numeric_limits<double>::infinity();

      if (err <= 1.0) {
        dense_.t0 = t_;
        dense_.h = h;
        for (std::size_t i = 0; i < N; ++i) {
          const double dy = y_new[i] - y_[i];
          const double bspl = h * k1_[i] - dy;
          dense_.rcont[0][i] = y_[i];
          dense_.rcont[1][i] = dy;
          dense_.rcont[2][i] = bspl;
          dense_.rcont[3][i] = dy - h * k7_[i] - bspl;
          dense_.rcont[4][i] = h * (d1 * k1_[i] + d3 * k3_[i] + d4 * k4_[i] + d5 * k5_[i] +
                                    d6 * k6_[i] + d7 * k7_[i]);
        }
        t_ = hits_limit ? t_limit : t_ + h;
        y_ = y_new;
        k1_ = k7_;
        double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        fac = std::clamp(fac, 0.2, 5.0);
        if (last_rejected) fac = std::min(fac, 1.0);
        // Keep the controller's step if the limit clipped it.
        h_ = hits_limit ? std::max(h_, h * fac) : h * fac;
        return dense_;
      }
      ++rejected_;
      last_rejected = true;
      const double fac = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.1;
      h_ = h * fac;
    }
  }

 private:
  double initial_step() {
    // Hairer's starting-step heuristic.
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = opt_.atol + opt_.rtol * std::abs(y_[i]);
      dnf += (k1_[i] / sk) * (k1_[i] / sk);
      dny += (y_[i] / sk) * (y_[i] / sk);
    }
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
    StateVec<N> tmp, k2;
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y_[i] + h * k1_[i];
    rhs_(tmp, k2);
    double der2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = opt_.atol + opt_.rtol * std::abs(y_[i]);
      const double d = (k2[i] - k1_[i]) / sk;
      der2 += d * d;
    }
    der2 = std::sqrt(der2) / h;
    const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
    const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.2);
    return std::min({100.0 * h, h1, opt_.h_max});
  }

  Rhs rhs_;
  SolverOptions opt_;
  double t_ = 0.0;
  double h_ = 0.0;
  std::size_t steps_ = 0;
  std::size_t rejected_ = 0;
  StateVec<N> y_{};
  StateVec<N> k1_{}, k2_{}, k3_{}, k4_{}, k5_{}, k6_{}, k7_{};
  DenseStep<N> dense_;
};

/// Integrates from (t0, y0) to t_end (> t0), calling observer(step) after
/// every accepted step. Returns the state at t_end.
template <std::size_t N, class Rhs, class Observer>
StateVec<N> integrate_system(Rhs rhs, double t0, const StateVec<N>& y0, double t_end,
                             const SolverOptions& opt, Observer&& observer) {
  DormandPrince<N, Rhs> solver(std::move(rhs), opt);
  solver.reset(t0, y0);
  while (solver.time() < t_end) {
    observer(solver.step(t_end));
  }
  return solver.state();
}

template <std::size_t N, class Rhs>
StateVec<N> integrate_system(Rhs rhs, double t0, const StateVec<N>& y0, double t_end,
                             const SolverOptions& opt) {
  return integrate_system<N>(std::move(rhs), t0, y0, t_end, opt, [](const DenseStep<N>&) {});
}

}  // namespace lvthermo
