#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "lvthermo/entropy.hpp"
#include "lvthermo/hdiffusion.hpp"
#include "lvthermo/helmholtz.hpp"
#include "lvthermo/stochastic.hpp"

namespace lvthermo {

inline constexpr int kSchemaVersion = 1;

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Doubles as 17 significant digits ("%.17g").
[[nodiscard]] std::string format_cell(const Cell& c);

/// First line "# <meta as compact JSON>", then one header row, then rows.
void write_csv(std::ostream& out, const nlohmann::json& meta, const Table& table);
/// {"meta": ..., "columns": [...], "rows": [[...], ...]}
void write_json(std::ostream& out, const nlohmann::json& meta, const Table& table);

[[nodiscard]] nlohmann::json to_json(const OrbitSummary& s);

// Table builders. Column lists are documented in the README.
[[nodiscard]] Table trajectory_table(const Orbit& orbit, std::size_t samples);
[[nodiscard]] Table eos_table(const std::vector<EosRecord>& records);
[[nodiscard]] Table contour_table(const ModelParams& params, const std::vector<double>& levels,
                                  std::size_t points, double tol = kDefaultRelTol);
[[nodiscard]] Table ssa_table(const std::vector<JumpPath>& paths);
[[nodiscard]] Table sde_table(const std::vector<SdePath>& paths, const ModelParams& params);
[[nodiscard]] Table hdiff_table(const HDiffusionTable& t);

struct EntropyPoint {
  double t = 0.0;
  EntropyValue value;
};
[[nodiscard]] Table entropy_table(const std::vector<EntropyPoint>& series);

/// nx x ny lattice over [x_lo, x_hi] x [y_lo, y_hi] (endpoints included) of the
/// divergence-form drift split into its rotational part G (-H_y, H_x) and the
/// remainder.
struct FieldGrid {
  double x_lo = 0.2, x_hi = 3.0, y_lo = 0.2, y_hi = 3.0;
  std::size_t nx = 25, ny = 25;
};
[[nodiscard]] Table field_table(const ModelParams& params, double epsilon, const FieldGrid& grid);

}  // namespace lvthermo
