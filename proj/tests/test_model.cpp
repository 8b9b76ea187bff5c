#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lvthermo/model.hpp"

using namespace lvthermo;

TEST_CASE("hamiltonian at the fixed point and by substitution") {
  CHECK(hamiltonian({1.0, 1.0}, ModelParams(1.0)) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(hamiltonian({1.0, 1.0}, ModelParams(0.5)) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(hamiltonian({std::numbers::e, 1.0}, ModelParams(1.0)) ==
        doctest::Approx(std::numbers::e).epsilon(1e-15));
}

TEST_CASE("vector field examples") {
  const ModelParams one(1.0);
  for (double a : {0.3, 1.0, 4.0}) {
    const auto v = vector_field({1.0, 1.0}, ModelParams(a));
    CHECK(v.dx == 0.0);
    CHECK(v.dy == 0.0);
  }
  auto v = vector_field({2.0, 1.0}, one);
  CHECK(v.dx == 0.0);
  CHECK(v.dy == 1.0);
  v = vector_field({1.0, 2.0}, one);
  CHECK(v.dx == -1.0);
  CHECK(v.dy == 0.0);
}

TEST_CASE("scalar factor") {
  CHECK(scalar_factor({1.0, 1.0}) == 1.0);
  CHECK(scalar_factor({2.0, 3.0}) == 6.0);
  CHECK(scalar_factor({0.5, 0.5}) == 0.25);
}

TEST_CASE("alpha must be positive") {
  CHECK_THROWS_AS(ModelParams(0.0), Error);
  CHECK_THROWS_AS(ModelParams(-1.0), Error);
  CHECK_THROWS_AS(ModelParams(std::nan("")), Error);
  CHECK(ModelParams(0.7).h_min() == doctest::Approx(1.7));
}

TEST_CASE("property: H >= h_min and the field is G times the skew gradient") {
  std::mt19937_64 gen(20240611);
  std::uniform_real_distribution<double> coord(0.05, 6.0);
  std::uniform_real_distribution<double> alpha(0.1, 5.0);
  for (int i = 0; i < 2000; ++i) {
    const ModelParams p(alpha(gen));
    const PhaseState s{coord(gen), coord(gen)};
    CHECK(hamiltonian(s, p) >= p.h_min());
    const auto f = vector_field(s, p);
    const auto grad = hamiltonian_gradient(s, p);
    const double g = scalar_factor(s);
    CHECK(f.dx == doctest::Approx(-g * grad.dy).epsilon(1e-12).scale(1.0));
    CHECK(f.dy == doctest::Approx(g * grad.dx).epsilon(1e-12).scale(1.0));
    // Orthogonality: dH/dt = 0.
    CHECK(std::abs(f.dx * grad.dx + f.dy * grad.dy) < 1e-12 * (1.0 + g * g));
  }
}
