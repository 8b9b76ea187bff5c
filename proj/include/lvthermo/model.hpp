#pragma once

#include <cmath>
#include <utility>

#include "lvthermo/error.hpp"

namespace lvthermo {

/// Nondimensional Lotka-Volterra model
///   dx/dt = x (1 - y),  dy/dt = alpha y (x - 1)
/// with the single coupling ratio alpha > 0.
class ModelParams {
 public:
  explicit ModelParams(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      throw Error(ErrorKind::InvalidArgument, "alpha must be positive and finite");
    }
  }

  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  /// Energy of the coexistence fixed point (1, 1).
  [[nodiscard]] double h_min() const noexcept { return alpha_ + 1.0; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double alpha_;
};

/// Normalized prey (x) and predator (y) densities.
struct PhaseState {
  double x = 1.0;
  double y = 1.0;

  [[nodiscard]] bool valid() const noexcept {
    return x > 0.0 && y > 0.0 && std::isfinite(x) && std::isfinite(y);
  }
  friend bool operator==(const PhaseState&, const PhaseState&) = default;
};

struct Vector2 {
  double dx = 0.0;
  double dy = 0.0;
};

/// H(x, y) = alpha x + y - alpha ln x - ln y. Minimum alpha + 1 at (1, 1).
[[nodiscard]] inline double hamiltonian(PhaseState s, const ModelParams& p) noexcept {
  const double a = p.alpha();
  return a * (s.x - 1.0 - std::log(s.x)) + (s.y - 1.0 - std::log(s.y)) + a + 1.0;
}

/// Gradient (dH/dx, dH/dy).
[[nodiscard]] inline Vector2 hamiltonian_gradient(PhaseState s, const ModelParams& p) noexcept {
  return {p.alpha() * (1.0 - 1.0 / s.x), 1.0 - 1.0 / s.y};
}

[[nodiscard]] inline Vector2 vector_field(PhaseState s, const ModelParams& p) noexcept {
  return {s.x * (1.0 - s.y), p.alpha() * s.y * (s.x - 1.0)};
}

/// G(x, y) = x y; the flow is G times the symplectic gradient of H.
[[nodiscard]] inline double scalar_factor(PhaseState s) noexcept { return s.x * s.y; }

}  // namespace lvthermo
