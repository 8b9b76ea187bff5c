#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lvthermo/entropy.hpp"
#include "lvthermo/helmholtz.hpp"

using namespace lvthermo;

TEST_CASE("Gauss-Legendre rule") {
  const auto g = gauss_legendre(64);
  double w = 0.0, x8 = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    w += g.weights[i];
    x8 += g.weights[i] * std::pow(g.nodes[i], 8);
  }
  CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(x8 == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
  const auto g5 = gauss_legendre(5);
  CHECK(g5.nodes[2] == 0.0);
  CHECK(g5.weights[2] == doctest::Approx(128.0 / 225.0).epsilon(1e-14));
  CHECK(gauss_legendre(1).weights[0] == 2.0);
}

TEST_CASE("stationary divergence") {
  CHECK(std::abs(stationary_divergence({2.0, 3.0}, ModelParams(1.0), weight_one())) < 1e-10);
  CHECK(std::abs(stationary_divergence({0.7, 1.4}, ModelParams(0.5), weight_exp(1.0))) < 1e-10);
  for (const auto& w : {weight_one(), weight_exp(1.0), weight_square()}) {
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        const PhaseState s{0.2 + 4.8 * i / 9.0, 0.2 + 4.8 * j / 9.0};
        CHECK(std::abs(stationary_divergence(s, ModelParams(1.3), w)) < 1e-10);
      }
    }
  }
}

TEST_CASE("finite-difference flux divergence") {
  const ModelParams p(0.8);
  const PhaseState s{1.7, 0.6};
  const auto stationary = [&](PhaseState q) {
    return std::exp(-hamiltonian(q, p)) / scalar_factor(q);
  };
  CHECK(std::abs(flux_divergence_fd(s, p, stationary)) < 1e-8);
  // Weight x is not a function of H: div(F x) = 2x - y + alpha(x - 1) - ... is nonzero.
  const double control = flux_divergence_fd(s, p, [](PhaseState q) { return q.x; });
  const double exact = 2.0 * s.x * (1.0 - s.y) + s.x * p.alpha() * (s.x - 1.0);
  CHECK(control == doctest::Approx(exact).epsilon(1e-8));
  CHECK(std::abs(control) > 0.1);
}

TEST_CASE("relative entropy on a level set") {
  const ModelParams p(1.0);
  const double h = 2.61;
  const double tau = orbit_from_energy(h, p).period_tau;
  SUBCASE("uniform ratio with psi = ln gives zero") {
    DensityField f{[](PhaseState) { return 1.0; }, weight_one(), psi_log(), {}, h, 32};
    CHECK(relative_entropy_at_time(f, p, 0.0).value == 0.0);
    CHECK(relative_entropy_at_time(f, p, 1.3).value == 0.0);
  }
  SUBCASE("indicator with psi = rho = 1 gives the invariant area") {
    DensityField f{[](PhaseState) { return 1.0; }, weight_one(), psi_one(), {}, h, 64};
    const double area = relative_entropy_at_time(f, p, 0.0).value;
    CHECK(area == doctest::Approx(invariant_area(h, p)).epsilon(1e-5));
  }
  SUBCASE("z ln z conserved over half a period") {
    for (const auto& w : {weight_one(), weight_exp(theta_fn(h, p))}) {
      DensityField f{smooth_bump({1.2, 1.0}, 0.6, 0.5), w, psi_z_log_z(), {}, h, 64};
      const double e0 = relative_entropy_at_time(f, p, 0.0).value;
      const double e1 = relative_entropy_at_time(f, p, 0.5 * tau).value;
      CHECK(e0 > 0.0);
      CHECK(std::abs(e1 - e0) / e0 < 1e-4);
    }
  }
  SUBCASE("ln conserved") {
    DensityField f{smooth_bump({1.3, 1.1}, 0.6, 0.8), weight_one(), psi_log(), {}, h, 64};
    const double e0 = relative_entropy_at_time(f, p, 0.0).value;
    const double e1 = relative_entropy_at_time(f, p, 0.3 * tau).value;
    CHECK(std::abs(e1 - e0) / std::abs(e0) < 1e-4);
  }
  SUBCASE("thread count does not change the sum") {
    DensityField f{smooth_bump({1.5, 1.0}, 0.25, 0.5), weight_one(), psi_z_log_z(), {}, h, 16};
    CHECK(relative_entropy_at_time(f, p, 1.0, kDefaultRelTol, 1).value ==
          relative_entropy_at_time(f, p, 1.0, kDefaultRelTol, 3).value);
  }
}

TEST_CASE("relative entropy on a rectangle") {
  const ModelParams p(1.0);
  DensityField f{smooth_bump({1.5, 1.0}, 0.25, 0.5), weight_one(), psi_z_log_z(),
                 Rect{0.5, 2.0, 0.5, 2.0}, {}, 16};
  const auto v0 = relative_entropy_at_time(f, p, 0.0);
  CHECK(v0.leaked_nodes == 0);
  CHECK(v0.warnings.empty());
  const auto v1 = relative_entropy_at_time(f, p, 1.0);
  CHECK(v1.leaked_nodes > 0);
  REQUIRE(v1.warnings.size() == 1);
  CHECK(v1.warnings[0].rfind("DomainLeak", 0) == 0);
  DensityField both = f;
  both.level_h = 2.61;
  CHECK_THROWS_AS((void)relative_entropy_at_time(both, p, 0.0), Error);
}

TEST_CASE("Boltzmann entropy density") {
  const ModelParams p(1.0);
  DensityField one{[](PhaseState) { return 1.0; }, weight_one(), psi_one(), {}, {}, 64};
  CHECK(boltzmann_entropy_density(one, p, 2.01) ==
        doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-2));
  CHECK(boltzmann_entropy_density(one, p, 2.61) == doctest::Approx(dA_dh(2.61, p)).epsilon(1e-4));
  DensityField ln{[](PhaseState) { return 1.0; }, weight_one(), psi_log(), {}, {}, 64};
  CHECK(boltzmann_entropy_density(ln, p, 2.61) == 0.0);
  DensityField c{[](PhaseState) { return 2.5; }, weight_one(), psi_one(), {}, {}, 64};
  CHECK(boltzmann_entropy_density(c, p, 2.61) ==
        doctest::Approx(2.5 * orbit_from_energy(2.61, p).period_tau).epsilon(1e-10));
  CHECK_THROWS_AS((void)boltzmann_entropy_density(one, p, 1.5), Error);
}
