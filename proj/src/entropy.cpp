#include "lvthermo/entropy.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include <fmt/format.h>

namespace lvthermo {

EnergyWeight weight_one() {
  return {[](double) { return 1.0; }, [](double) { return 0.0; }};
}

EnergyWeight weight_exp(double scale) {
  if (!(scale > 0.0)) throw Error(ErrorKind::InvalidArgument, "weight scale must be positive");
  return {[scale](double h) { return std::exp(-h / scale); },
          [scale](double h) { return -std::exp(-h / scale) / scale; }};
}

EnergyWeight weight_square() {
  return {[](double h) { return h * h; }, [](double h) { return 2.0 * h; }};
}

double stationary_divergence(PhaseState s, const ModelParams& params,
                             const EnergyWeight& weight) {
  const double h = hamiltonian(s, params);
  // F/G = ((1-y)/y, alpha(x-1)/x): the x-component has no x dependence and
  // the y-component no y dependence, so div(F/G) vanishes term by term.
  const double div_f_over_g = 0.0;
  const auto v = vector_field(s, params);
  const auto dH = hamiltonian_gradient(s, params);
  const double transport = v.dx * dH.dx + v.dy * dH.dy;
  return weight.rho(h) * div_f_over_g + weight.drho(h) / scalar_factor(s) * transport;
}

double flux_divergence_fd(PhaseState s, const ModelParams& params,
                          const std::function<double(PhaseState)>& q, double step) {
  const auto flux = [&](double x, double y) {
    const auto v = vector_field({x, y}, params);
    const double w = q({x, y});
    return Vector2{v.dx * w, v.dy * w};
  };
  const double xp = s.x + step, xm = s.x - step;
  const double yp = s.y + step, ym = s.y - step;
  return (flux(xp, s.y).dx - flux(xm, s.y).dx) / (xp - xm) +
         (flux(s.x, yp).dy - flux(s.x, ym).dy) / (yp - ym);
}

std::function<double(PhaseState)> smooth_bump(PhaseState center, double radius, double height) {
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "bump radius must be positive");
  return [=](PhaseState s) {
    const double dx = s.x - center.x, dy = s.y - center.y;
    const double d2 = (dx * dx + dy * dy) / (radius * radius);
    return d2 < 1.0 ? 1.0 + height * std::pow(1.0 - d2, 8) : 1.0;
  };
}

std::function<double(double)> psi_log() {
  return [](double z) { return std::log(z); };
}

std::function<double(double)> psi_z_log_z() {
  return [](double z) { return z > 0.0 ? z * std::log(z) : 0.0; };
}

std::function<double(double)> psi_one() {
  return [](double) { return 1.0; };
}

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "Gauss-Legendre order must be >= 1");
  if (n == 1) return {{0.0}, {2.0}};
  // P_n and its derivative by the three-term recurrence.
  const auto legendre = [n](double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };
  GaussLegendre g;
  g.nodes.resize(n);
  g.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    g.nodes[i] = -x;
    g.nodes[n - 1 - i] = x;
    g.weights[i] = w;
    g.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) g.nodes[n / 2] = 0.0;
  return g;
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

namespace {

struct Node {
  PhaseState at;
  double weight;  // quadrature weight including the area element
};

std::vector<Node> rectangle_nodes(const Rect& r, const GaussLegendre& g) {
  std::vector<Node> out;
  const double cx = 0.5 * (r.x_lo + r.x_hi), hx = 0.5 * (r.x_hi - r.x_lo);
  const double cy = 0.5 * (r.y_lo + r.y_hi), hy = 0.5 * (r.y_hi - r.y_lo);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    for (std::size_t j = 0; j < g.nodes.size(); ++j) {
      out.push_back({{cx + hx * g.nodes[i], cy + hy * g.nodes[j]}, hx * hy * g.weights[i] * g.weights[j]});
    }
  }
  return out;
}

// Nodes on the chords of {H <= h}. The outer variable is x = c - r cos(phi),
// which removes the square-root behaviour of the chord length at the ends.
std::vector<Node> sublevel_nodes(double h, const ModelParams& params, const GaussLegendre& g) {
  const auto b = orbit_bounds(h, params);
  const double c = 0.5 * (b.x_min + b.x_max), r = 0.5 * (b.x_max - b.x_min);
  std::vector<Node> out;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double phi = 0.5 * std::numbers::pi * (g.nodes[i] + 1.0);
    const double x = c - r * std::cos(phi);
    const double jac_x = 0.5 * std::numbers::pi * r * std::sin(phi) * g.weights[i];
    const double excess = h - params.h_min() - params.alpha() * (x - 1.0 - std::log(x));
    if (!(excess > 0.0)) continue;
    const auto y = log_excess_roots(excess);
    const double cy = 0.5 * (y.lower + y.upper), hy = 0.5 * (y.upper - y.lower);
    for (std::size_t j = 0; j < g.nodes.size(); ++j) {
      out.push_back({{x, cy + hy * g.nodes[j]}, jac_x * hy * g.weights[j]});
    }
  }
  return out;
}

bool inside(const Rect& r, PhaseState s) {
  return s.x >= r.x_lo && s.x <= r.x_hi && s.y >= r.y_lo && s.y <= r.y_hi;
}

}  // namespace

EntropyValue relative_entropy_at_time(const DensityField& field, const ModelParams& params,
                                      double t, double tol, unsigned threads) {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be >= 0");
  if (!field.w0 || !field.psi || !field.weight.rho) {
    throw Error(ErrorKind::InvalidArgument, "density field needs w0, psi and rho");
  }
  if (field.rect.has_value() == field.level_h.has_value()) {
    throw Error(ErrorKind::InvalidArgument, "give exactly one of a rectangle or a level set");
  }
  const auto g = gauss_legendre(field.quadrature_n);
  std::vector<Node> nodes;
  if (field.level_h) {
    if (!(*field.level_h > params.h_min())) {
      throw Error(ErrorKind::EnergyBelowMinimum, "level set needs h > alpha + 1");
    }
    nodes = sublevel_nodes(*field.level_h, params, g);
  } else {
    const Rect& r = *field.rect;
    if (!(r.x_lo > 0.0 && r.y_lo > 0.0 && r.x_hi > r.x_lo && r.y_hi > r.y_lo)) {
      throw Error(ErrorKind::InvalidArgument, "rectangle needs 0 < lo < hi");
    }
    nodes = rectangle_nodes(r, g);
  }

  struct Contribution {
    double value;
    bool leaked;
  };
  const auto parts = parallel_map(nodes.size(), threads, [&](std::size_t k) {
    const Node& nd = nodes[k];
    const PhaseState pre = t > 0.0 ? integrate_backward(nd.at, params, t, tol) : nd.at;
    const double w = field.w0(pre);
    const double u = w * field.weight.rho(hamiltonian(nd.at, params)) / scalar_factor(nd.at);
    const bool leaked = field.rect && !inside(*field.rect, pre);
    return Contribution{nd.weight * u * field.psi(w), leaked};
  });

  EntropyValue out;
  out.nodes = nodes.size();
  std::vector<double> values(parts.size());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    values[k] = parts[k].value;
    out.leaked_nodes += parts[k].leaked ? 1 : 0;
  }
  out.value = pairwise_sum(values.data(), values.size());
  if (out.leaked_nodes > 0) {
    out.warnings.push_back(fmt::format(
        "DomainLeak: {} of {} pre-images left the rectangle; the domain is not flow-invariant",
        out.leaked_nodes, out.nodes));
  }
  return out;
}

double boltzmann_entropy_density(const DensityField& field, const ModelParams& params, double h,
                                 double tol) {
  if (!field.w0 || !field.psi) {
    throw Error(ErrorKind::InvalidArgument, "density field needs w0 and psi");
  }
  const Orbit orbit = orbit_from_energy(h, params, tol);
  const auto v = orbit_integrals<1>(orbit, [&](PhaseState s) {
    const double w = field.w0(s);
    return std::array<double, 1>{w * field.psi(w)};
  });
  return v[0];
}

}  // namespace lvthermo
