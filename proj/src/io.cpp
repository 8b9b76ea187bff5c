#include "lvthermo/io.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>

namespace lvthermo {

std::string format_cell(const Cell& c) {
  struct Visitor {
    // v + 0.0 folds -0 into 0.
    std::string operator()(double v) const { return fmt::format("{:.17g}", v + 0.0); }
    std::string operator()(std::int64_t v) const { return fmt::format("{}", v); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

void write_csv(std::ostream& out, const nlohmann::json& meta, const Table& table) {
  out << "# " << meta.dump() << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  std::string line;
  for (const auto& row : table.rows) {
    line.clear();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += ',';
      line += format_cell(row[i]);
    }
    out << line << '\n';
  }
}

void write_json(std::ostream& out, const nlohmann::json& meta, const Table& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& c : row) {
      std::visit([&r](const auto& v) { r.push_back(v); }, c);
    }
    rows.push_back(std::move(r));
  }
  nlohmann::json doc{{"meta", meta}, {"columns", table.columns}, {"rows", std::move(rows)}};
  out << doc.dump(1) << '\n';
}

nlohmann::json to_json(const OrbitSummary& s) {
  return {{"h", s.h},
          {"alpha", s.alpha},
          {"tau", s.tau},
          {"mean_x", s.mean_x},
          {"mean_y", s.mean_y},
          {"var_x", s.var_x},
          {"var_y", s.var_y},
          {"area_invariant", s.area_invariant},
          {"area_invariant_alt", s.area_invariant_alt},
          {"area_lebesgue", s.area_lebesgue},
          {"theta", s.theta()},
          {"theta_x", s.theta_x},
          {"theta_y", s.theta_y},
          {"f_alpha", s.f_alpha},
          {"dA_dalpha", s.dA_dalpha}};
}

Table trajectory_table(const Orbit& orbit, std::size_t samples) {
  Table t{{"t", "x", "y", "H"}, {}};
  for (const auto& s : orbit.dense.resample(samples)) {
    t.rows.push_back({s.t, s.state.x, s.state.y, hamiltonian(s.state, orbit.params)});
  }
  return t;
}

Table eos_table(const std::vector<EosRecord>& records) {
  Table t{{"alpha", "h", "tau", "area_A", "ln_area", "theta", "f_alpha", "f_alpha_abs",
           "area_lebesgue", "error"},
          {}};
  for (const auto& r : records) {
    t.rows.push_back({r.alpha, r.h, r.tau, r.area_A, r.ln_area, r.theta, -r.f_alpha_abs,
                      r.f_alpha_abs, r.area_lebesgue, r.error});
  }
  return t;
}

Table contour_table(const ModelParams& params, const std::vector<double>& levels,
                    std::size_t points, double tol) {
  Table t{{"h", "point", "x", "y"}, {}};
  for (double h : levels) {
    const auto orbit = orbit_from_energy(h, params, tol);
    // resample() includes the period end, which closes the polyline.
    const auto pts = orbit.dense.resample(points + 1);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      t.rows.push_back({h, static_cast<std::int64_t>(i), pts[i].state.x, pts[i].state.y});
    }
  }
  return t;
}

Table ssa_table(const std::vector<JumpPath>& paths) {
  Table t{{"path", "t", "m", "n", "x", "y"}, {}};
  for (std::size_t p = 0; p < paths.size(); ++p) {
    for (const auto& e : paths[p].events) {
      t.rows.push_back({static_cast<std::int64_t>(p), e.t, e.m, e.n,
                        static_cast<double>(e.m) / paths[p].omega,
                        static_cast<double>(e.n) / paths[p].omega});
    }
  }
  return t;
}

Table sde_table(const std::vector<SdePath>& paths, const ModelParams& params) {
  Table t{{"path", "t", "x", "y", "H"}, {}};
  for (std::size_t p = 0; p < paths.size(); ++p) {
    for (const auto& s : paths[p].samples) {
      t.rows.push_back({static_cast<std::int64_t>(p), s.t, s.state.x, s.state.y,
                        hamiltonian(s.state, params)});
    }
  }
  return t;
}

Table hdiff_table(const HDiffusionTable& h) {
  Table t{{"h", "b", "a", "pss", "ln_pss"}, {}};
  for (std::size_t i = 0; i < h.h_grid.size(); ++i) {
    t.rows.push_back({h.h_grid[i], h.b_values[i], h.a_values[i], h.pss_values[i],
                      h.ln_pss_values[i]});
  }
  return t;
}

Table entropy_table(const std::vector<EntropyPoint>& series) {
  Table t{{"t", "entropy", "rel_change", "nodes", "leaked_nodes"}, {}};
  const double e0 = series.empty() ? 0.0 : series.front().value.value;
  for (const auto& p : series) {
    const double rel = e0 != 0.0 ? (p.value.value - e0) / std::abs(e0) : p.value.value - e0;
    t.rows.push_back({p.t, p.value.value, rel, static_cast<std::int64_t>(p.value.nodes),
                      static_cast<std::int64_t>(p.value.leaked_nodes)});
  }
  return t;
}

Table field_table(const ModelParams& params, double epsilon, const FieldGrid& g) {
  Table t{{"x", "y", "H", "drift_x", "drift_y", "rot_x", "rot_y", "diss_x", "diss_y"}, {}};
  const auto lerp = [](double lo, double hi, std::size_t i, std::size_t n) {
    return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const PhaseState s{lerp(g.x_lo, g.x_hi, i, g.nx), lerp(g.y_lo, g.y_hi, j, g.ny)};
      const auto d = decomposition_drift(s, params, epsilon);
      const auto dH = hamiltonian_gradient(s, params);
      const double G = scalar_factor(s);
      const double rx = -G * dH.dy, ry = G * dH.dx;
      t.rows.push_back({s.x, s.y, hamiltonian(s, params), d.dx, d.dy, rx, ry, d.dx - rx, d.dy - ry});
    }
  }
  return t;
}

}  // namespace lvthermo
