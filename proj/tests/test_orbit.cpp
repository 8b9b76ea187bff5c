#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lvthermo/orbit.hpp"

using namespace lvthermo;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("integrate: the fixed point stays put") {
  const auto traj = integrate({1.0, 1.0}, ModelParams(1.0), 10.0, 1e-10);
  CHECK(traj.t_end() == 10.0);
  for (const auto& s : traj.samples()) {
    CHECK(s.state.x == 1.0);
    CHECK(s.state.y == 1.0);
  }
}

TEST_CASE("integrate: small oscillation returns after 2 pi") {
  const ModelParams p(1.0);
  const auto traj = integrate({1.01, 1.0}, p, kTwoPi, 1e-10);
  // Linearized period is exactly 2 pi; the amplitude correction is O(amp^2).
  CHECK(traj.back().x == doctest::Approx(1.01).epsilon(1e-4));
  CHECK(std::abs(traj.back().y - 1.0) < 1e-4);
}

TEST_CASE("integrate: energy drift on H = 2.61 below 1e-8") {
  const ModelParams p(1.0);
  const auto seed = seed_point(2.61, p);
  const auto orbit = orbit_from_energy(2.61, p, 1e-10);
  const auto traj = integrate(seed, p, orbit.period_tau, 1e-10);
  double drift = 0.0;
  for (const auto& s : traj.samples()) drift = std::max(drift, std::abs(hamiltonian(s.state, p) - 2.61));
  CHECK(drift < 1e-8);
  CHECK(drift <= energy_drift_bound(1e-10, orbit.period_tau));
}

TEST_CASE("integrate: times strictly increase and dense output matches samples") {
  const ModelParams p(0.5);
  const auto traj = integrate({1.5, 0.7}, p, 7.0, 1e-9);
  const auto& s = traj.samples();
  REQUIRE(s.size() > 10);
  for (std::size_t i = 1; i < s.size(); ++i) {
    CHECK(s[i].t > s[i - 1].t);
    const auto mid = traj.state_at(s[i].t);
    CHECK(mid.x == doctest::Approx(s[i].state.x).epsilon(1e-12));
  }
  const auto pts = traj.resample(50);
  CHECK(pts.size() == 50);
  CHECK(pts.front().t == 0.0);
  CHECK(pts.back().t == 7.0);
}

TEST_CASE("integrate: rejects invalid tolerances") {
  CHECK_THROWS_AS((void)integrate({1.0, 1.0}, ModelParams(1.0), 1.0, 0.0), Error);
  CHECK_THROWS_AS((void)integrate({1.0, 1.0}, ModelParams(1.0), 1.0, 1e-2), Error);
  CHECK_THROWS_AS((void)integrate({1.0, 1.0}, ModelParams(1.0), -1.0, 1e-8), Error);
}

TEST_CASE("seed_point") {
  const ModelParams p(1.0);
  SUBCASE("x+ = e at h = e") {
    const auto s = seed_point(std::numbers::e, p);
    CHECK(s.x == doctest::Approx(std::numbers::e).epsilon(1e-13));
    CHECK(s.y == 1.0);
  }
  SUBCASE("near the minimum x+ - 1 ~ sqrt(2 delta)") {
    for (double delta : {1e-8, 1e-6, 1e-4}) {
      const auto s = seed_point(2.0 + delta, p);
      CHECK(s.x > 1.0);
      // Next term of the series u - ln(1+u) = u^2/2 - u^3/3 is 2 delta / 3.
      const double expected = std::sqrt(2.0 * delta) + 2.0 * delta / 3.0;
      CHECK((s.x - 1.0) == doctest::Approx(expected).epsilon(10.0 * delta + 1e-6));
    }
  }
  SUBCASE("H(seed) = h to 1e-12 relative") {
    for (double a : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const ModelParams q(a);
      for (double off : {1e-6, 1e-3, 0.1, 1.0, 10.0, 50.0}) {
        const double h = q.h_min() + off;
        const auto s = seed_point(h, q);
        CHECK(s.x > 1.0);
        CHECK(std::abs(hamiltonian(s, q) - h) <= 1e-12 * h);
      }
    }
  }
  SUBCASE("h at or below the minimum") {
    CHECK_THROWS_WITH_AS((void)seed_point(2.0, p), doctest::Contains("EnergyBelowMinimum"), Error);
    CHECK_THROWS_AS((void)seed_point(1.5, p), Error);
  }
}

TEST_CASE("orbit bounds bracket the orbit") {
  const ModelParams p(0.8);
  const auto b = orbit_bounds(2.61, p);
  const auto orbit = orbit_from_energy(2.61, p);
  for (const auto& s : orbit.dense.samples()) {
    CHECK(s.state.x >= b.x_min * (1 - 1e-9));
    CHECK(s.state.x <= b.x_max * (1 + 1e-9));
    CHECK(s.state.y >= b.y_min * (1 - 1e-9));
    CHECK(s.state.y <= b.y_max * (1 + 1e-9));
  }
  CHECK(hamiltonian({b.x_min, 1.0}, p) == doctest::Approx(2.61).epsilon(1e-12));
  CHECK(hamiltonian({1.0, b.y_max}, p) == doctest::Approx(2.61).epsilon(1e-12));
}

TEST_CASE("orbit_from_energy: small-oscillation periods") {
  SUBCASE("alpha = 1") {
    const auto o = orbit_from_energy(2.01, ModelParams(1.0));
    CHECK(o.period_tau == doctest::Approx(kTwoPi).epsilon(0.01));
  }
  SUBCASE("alpha = 4") {
    const auto o = orbit_from_energy(5.01, ModelParams(4.0));
    CHECK(o.period_tau == doctest::Approx(std::numbers::pi).epsilon(0.01));
  }
  SUBCASE("limit within 0.1% at offset 1e-4") {
    for (double a : {0.5, 1.0, 2.0, 4.0}) {
      const ModelParams q(a);
      const auto o = orbit_from_energy(q.h_min() + 1e-4, q);
      CHECK(o.period_tau == doctest::Approx(kTwoPi / std::sqrt(a)).epsilon(1e-3));
    }
  }
  SUBCASE("energy at the minimum") {
    CHECK_THROWS_WITH_AS((void)orbit_from_energy(2.0, ModelParams(1.0)),
                         doctest::Contains("EnergyBelowMinimum"), Error);
  }
}

TEST_CASE("orbit invariants: conservation and closure across a grid") {
  for (double a : {0.5, 1.0, 2.0}) {
    const ModelParams p(a);
    for (double off : {0.1, 1.0, 2.0, 5.0}) {
      const double h = p.h_min() + off;
      const auto o = orbit_from_energy(h, p, 1e-10);
      CAPTURE(a);
      CAPTURE(off);
      CHECK(max_energy_deviation(o) < 1e-8);
      const auto& end = o.dense.back();
      CHECK(std::hypot(end.x - o.seed.x, end.y - o.seed.y) < 1e-6);
      CHECK(o.dense.t_end() == o.period_tau);
      // Period grows with energy.
      CHECK(o.period_tau > 2.0 * std::numbers::pi / std::sqrt(a));
    }
  }
}

TEST_CASE("functions of H are conserved along the flow") {
  const ModelParams p(1.3);
  const PhaseState start{0.4, 2.2};
  const double h0 = hamiltonian(start, p);
  const auto traj = integrate(start, p, 20.0, 1e-10);
  for (const auto& s : traj.samples()) {
    const double h = hamiltonian(s.state, p);
    CHECK(std::abs(h - h0) < 1e-8);
    CHECK(std::abs(std::exp(-h) - std::exp(-h0)) < 1e-8);
  }
}

TEST_CASE("backward integration inverts forward flow") {
  const ModelParams p(2.0);
  const PhaseState start{1.7, 0.6};
  const auto fwd = integrate(start, p, 3.3, 1e-11);
  const auto back = integrate_backward(fwd.back(), p, 3.3, 1e-11);
  CHECK(back.x == doctest::Approx(start.x).epsilon(1e-8));
  CHECK(back.y == doctest::Approx(start.y).epsilon(1e-8));
}

TEST_CASE("log_excess_roots: both branches satisfy the level, including deep lower roots") {
  for (double c : {1e-6, 0.5, 3.0, 29.0, 31.0, 100.0, 600.0}) {
    const auto r = log_excess_roots(c);
    CHECK(r.upper - 1.0 - std::log(r.upper) == doctest::Approx(c).epsilon(1e-12));
    CHECK(r.lower - 1.0 - std::log(r.lower) == doctest::Approx(c).epsilon(1e-12));
    CHECK(r.lower < 1.0);
  }
  CHECK(log_excess_roots(100.0).lower == doctest::Approx(std::exp(-101.0)).epsilon(1e-12));
  CHECK(log_excess_roots(800.0).lower == 0.0);
}

TEST_CASE("orbit_from_energy: unrepresentable orbit is a StepSizeUnderflow") {
  try {
    (void)orbit_from_energy(1e4, ModelParams(1.0));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StepSizeUnderflow);
  }
}
