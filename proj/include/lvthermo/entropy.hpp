#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lvthermo/orbit_stats.hpp"
#include "lvthermo/parallel.hpp"

namespace lvthermo {

/// Weight rho(H) together with its derivative.
struct EnergyWeight {
  std::function<double(double)> rho;
  std::function<double(double)> drho;
};

[[nodiscard]] EnergyWeight weight_one();
[[nodiscard]] EnergyWeight weight_exp(double scale);  // exp(-h / scale)
[[nodiscard]] EnergyWeight weight_square();           // h^2

/// div(F G^-1 rho(H)) from the product rule,
///   rho(H) div(F/G) + rho'(H) G^-1 (F . grad H),
/// with each factor evaluated in closed form.
[[nodiscard]] double stationary_divergence(PhaseState s, const ModelParams& params,
                                           const EnergyWeight& weight);

/// div(F q) for an arbitrary density q(x, y) by central differences.
[[nodiscard]] double flux_divergence_fd(PhaseState s, const ModelParams& params,
                                        const std::function<double(PhaseState)>& q,
                                        double step = 1e-5);

/// Rectangle in (x, y) with positive bounds.
struct Rect {
  double x_lo, x_hi, y_lo, y_hi;
};

/// u(x, y, t) = w(x, y, t) G^-1 rho(H); w is carried unchanged along the flow.
/// The domain is either a rectangle or the sublevel set {H <= level_h}.
struct DensityField {
  std::function<double(PhaseState)> w0;
  EnergyWeight weight = weight_one();
  std::function<double(double)> psi;
  std::optional<Rect> rect;
  std::optional<double> level_h;
  int quadrature_n = 64;
};

/// w0 = 1 + height (1 - d^2/r^2)^8 for d < r around `center`, else 1.
/// C^7 with a gentle profile; Gauss-Legendre resolves it at modest n where
/// the exp(-1/(1-d^2)) bump needs several times more nodes.
[[nodiscard]] std::function<double(PhaseState)> smooth_bump(PhaseState center, double radius,
                                                            double height);

[[nodiscard]] std::function<double(double)> psi_log();      // ln z
[[nodiscard]] std::function<double(double)> psi_z_log_z();  // z ln z
[[nodiscard]] std::function<double(double)> psi_one();      // 1

struct EntropyValue {
  double value = 0.0;
  std::size_t nodes = 0;
  std::size_t leaked_nodes = 0;  // pre-images outside a rectangle domain
  std::vector<std::string> warnings;
};

/// int u(., t) psi(u / (G^-1 rho(H))) dx dy over the field's domain. Each
/// quadrature node is pulled back along the flow for time t and w0 is read
/// at the pre-image. On a sublevel set the nodes lie on the exact chords of
/// the region; on a rectangle the tensor grid is used and pre-images leaving
/// it are counted (DomainLeak warning).
[[nodiscard]] EntropyValue relative_entropy_at_time(const DensityField& field,
                                                    const ModelParams& params, double t,
                                                    double tol = kDefaultRelTol,
                                                    unsigned threads = default_thread_count());

/// One orbit integral of w0 psi(w0) with respect to time, i.e. the measure
/// G^-1 / |grad H| dl on Gamma_{H=h}. With w0 = psi = 1 this is tau = dA/dh.
[[nodiscard]] double boltzmann_entropy_density(const DensityField& field,
                                               const ModelParams& params, double h,
                                               double tol = kDefaultRelTol);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
[[nodiscard]] GaussLegendre gauss_legendre(int n);

/// Pairwise sum, stable for long vectors and independent of thread count.
[[nodiscard]] double pairwise_sum(const double* v, std::size_t n);

}  // namespace lvthermo
