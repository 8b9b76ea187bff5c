// lvthermo command-line front end. See README for subcommands and CSV columns.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "lvthermo/checks.hpp"
#include "lvthermo/io.hpp"

using nlohmann::json;
using namespace lvthermo;

namespace {

constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

struct Common {
  std::string config;
  std::string output;
  std::string format = "csv";
  double tol = kDefaultRelTol;
  unsigned threads = default_thread_count();
  std::uint64_t seed = 1;
};

void add_common(CLI::App* sub, Common& c, bool seeded) {
  sub->set_help_flag("--help", "Print this help message and exit");
  sub->option_defaults()->always_capture_default();
  sub->add_option("--config", c.config, "JSON file of option values; flags on the command line win");
  sub->add_option("--output", c.output, "Output file (default: stdout)");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--tol", c.tol, "Relative ODE tolerance");
  sub->add_option("--threads", c.threads, "Worker threads (default: LVTHERMO_THREADS or cores)");
  if (seeded) sub->add_option("--seed", c.seed, "64-bit RNG seed");
}

void validate_common(const Common& c) {
  require(c.tol > 0.0 && c.tol <= 1e-3, "--tol must be in (0, 1e-3]");
  require(c.threads >= 1, "--threads must be >= 1");
}

ModelParams params_of(double alpha) {
  require(alpha > 0.0 && std::isfinite(alpha), "--alpha must be positive");
  return ModelParams(alpha);
}

void require_energy(double h, const ModelParams& p) {
  require(h > p.h_min(), fmt::format("--h must exceed alpha + 1 = {}", p.h_min()));
}

void emit(const Common& c, const json& meta, const Table& table) {
  std::ofstream file;
  if (!c.output.empty()) {
    file.open(c.output, std::ios::binary);
    if (!file) throw UsageError("cannot open --output " + c.output);
  }
  std::ostream& out = c.output.empty() ? std::cout : file;
  if (c.format == "json") {
    write_json(out, meta, table);
  } else {
    write_csv(out, meta, table);
  }
}

json meta_of(const std::string& command, const Common& c, json config, bool seeded) {
  config["tol"] = c.tol;
  config["format"] = c.format;
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"seed", seeded ? json(c.seed) : json(nullptr)},
          {"config", std::move(config)}};
}

// Turns a JSON object into "--key value" tokens, skipping keys already given
// on the command line so that explicit flags take precedence.
std::vector<std::string> config_args(const std::string& path, const std::set<std::string>& given) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read --config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(fmt::format("--config {}: {}", path, e.what()));
  }
  if (!j.is_object()) throw UsageError("--config must hold a JSON object");
  std::vector<std::string> args;
  for (const auto& [key, value] : j.items()) {
    if (given.count(key) || key == "config") continue;
    const auto scalar = [](const json& v) {
      return v.is_string() ? v.get<std::string>() : v.dump();
    };
    args.push_back("--" + key);
    if (value.is_array()) {
      for (const auto& v : value) args.push_back(scalar(v));
    } else {
      args.push_back(scalar(value));
    }
  }
  return args;
}

// Rebuilds argv with config-file values inserted right after the subcommand.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> in(argv, argv + argc);
  std::string config;
  std::set<std::string> given;
  for (std::size_t i = 1; i < in.size(); ++i) {
    const std::string& a = in[i];
    if (a.rfind("--", 0) != 0) continue;
    const auto eq = a.find('=');
    const std::string key = a.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
    given.insert(key);
    if (key == "config") config = eq != std::string::npos ? a.substr(eq + 1) : (i + 1 < in.size() ? in[i + 1] : "");
  }
  if (config.empty() || in.size() < 2) return in;
  std::vector<std::string> out{in[0], in[1]};
  for (auto& s : config_args(config, given)) out.push_back(std::move(s));
  out.insert(out.end(), in.begin() + 2, in.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermodynamic analysis of the Lotka-Volterra system"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  Common common;

  // orbit
  double o_alpha = 1.0, o_h = 2.61;
  std::size_t o_samples = 512;
  std::string o_summary;
  auto* orbit_cmd = app.add_subcommand("orbit", "Trajectory of one closed orbit plus its summary");
  add_common(orbit_cmd, common, false);
  orbit_cmd->add_option("--alpha", o_alpha, "Coupling ratio");
  orbit_cmd->add_option("--h", o_h, "Energy level (> alpha + 1)");
  orbit_cmd->add_option("--samples", o_samples, "Points over one period, endpoints included");
  orbit_cmd->add_option("--summary", o_summary, "Also write the orbit summary JSON here");

  // eos
  std::vector<double> e_alphas = default_eos_alphas();
  std::vector<double> e_offsets;
  std::size_t e_n_offsets = 12;
  auto* eos_cmd = app.add_subcommand("eos", "Equation-of-state table over (alpha, h)");
  add_common(eos_cmd, common, false);
  eos_cmd->add_option("--alphas", e_alphas, "Alpha values");
  eos_cmd->add_option("--offsets", e_offsets, "Offsets h - (alpha + 1); default log-spaced in [1e-2, 2]");
  eos_cmd->add_option("--n-offsets", e_n_offsets, "Number of default offsets");

  // contours
  double c_alpha = 1.0;
  std::vector<double> c_levels{3.40, 2.61, 2.19, 2.01};
  std::size_t c_points = 400;
  auto* contours_cmd = app.add_subcommand("contours", "Closed level curves H = h as polylines");
  add_common(contours_cmd, common, false);
  contours_cmd->add_option("--alpha", c_alpha, "Coupling ratio");
  contours_cmd->add_option("--levels", c_levels, "Energy levels");
  contours_cmd->add_option("--points", c_points, "Points per curve before closing");

  // ssa
  double s_alpha = 1.0, s_omega = 1000.0, s_h = 2.61, s_tmax = 0.0;
  std::int64_t s_m = -1, s_n = -1;
  std::size_t s_paths = 1;
  auto* ssa_cmd = app.add_subcommand("ssa", "Gillespie paths of the birth-death process");
  add_common(ssa_cmd, common, true);
  ssa_cmd->add_option("--alpha", s_alpha, "Coupling ratio");
  ssa_cmd->add_option("--omega", s_omega, "System size");
  ssa_cmd->add_option("--m", s_m, "Initial prey count (default: round(omega x+) on --h)");
  ssa_cmd->add_option("--n", s_n, "Initial predator count (default: omega)");
  ssa_cmd->add_option("--h", s_h, "Energy of the default start");
  ssa_cmd->add_option("--t-max", s_tmax, "End time (default: one period at --h)");
  ssa_cmd->add_option("--paths", s_paths, "Independent paths (RNG stream = path index)");

  // sde
  double d_alpha = 1.0, d_eps = 0.01, d_dt = 1e-3, d_h = 2.61, d_tmax = 0.0;
  std::optional<double> d_x, d_y;
  std::size_t d_paths = 1, d_every = 10;
  auto* sde_cmd = app.add_subcommand("sde", "Euler-Maruyama paths of the diffusion approximation");
  add_common(sde_cmd, common, true);
  sde_cmd->add_option("--alpha", d_alpha, "Coupling ratio");
  sde_cmd->add_option("--epsilon", d_eps, "Noise strength 1/omega");
  sde_cmd->add_option("--dt", d_dt, "Time step");
  sde_cmd->add_option("--x", d_x, "Initial x (default: section point on --h)");
  sde_cmd->add_option("--y", d_y, "Initial y (default: 1)");
  sde_cmd->add_option("--h", d_h, "Energy of the default start");
  sde_cmd->add_option("--t-max", d_tmax, "End time (default: one period at --h)");
  sde_cmd->add_option("--paths", d_paths, "Independent paths (RNG stream = path index)");
  sde_cmd->add_option("--record-every", d_every, "Keep every k-th step");

  // hdiff
  double hd_alpha = 1.0;
  std::optional<double> hd_ref;
  std::size_t hd_points = 64;
  std::vector<double> hd_grid;
  std::string hd_noise = "factored", hd_drift = "reduced";
  auto* hdiff_cmd = app.add_subcommand("hdiff", "Averaged energy diffusion b(h), A(h) and stationary density");
  add_common(hdiff_cmd, common, false);
  hdiff_cmd->add_option("--alpha", hd_alpha, "Coupling ratio");
  hdiff_cmd->add_option("--points", hd_points, "Default grid: log-spaced offsets in [1e-3, 10]");
  hdiff_cmd->add_option("--grid", hd_grid, "Explicit increasing energy grid");
  hdiff_cmd->add_option("--h-ref", hd_ref, "Reference energy (default alpha + 2)");
  hdiff_cmd->add_option("--noise", hd_noise, "A(h) form")->check(CLI::IsMember({"factored", "mean_root", "rms"}));
  hdiff_cmd->add_option("--drift", hd_drift, "b(h) form")->check(CLI::IsMember({"reduced", "ito"}));

  // entropy
  double en_alpha = 1.0, en_h = 2.61, en_tmax = 0.0, en_rho_scale = 0.0;
  std::string en_psi = "zlnz", en_rho = "one";
  std::vector<double> en_bump{1.2, 1.0, 0.6, 0.5};
  std::size_t en_steps = 4;
  int en_nodes = 64;
  auto* entropy_cmd = app.add_subcommand("entropy", "Relative entropy over time on a level-set region");
  add_common(entropy_cmd, common, false);
  entropy_cmd->add_option("--alpha", en_alpha, "Coupling ratio");
  entropy_cmd->add_option("--h", en_h, "Region {H <= h}");
  entropy_cmd->add_option("--psi", en_psi, "ln, zlnz or one")->check(CLI::IsMember({"ln", "zlnz", "one"}));
  entropy_cmd->add_option("--rho", en_rho, "one, gibbs (exp(-H/theta)) or exp (exp(-H/scale))")
      ->check(CLI::IsMember({"one", "gibbs", "exp"}));
  entropy_cmd->add_option("--rho-scale", en_rho_scale, "Scale for --rho exp");
  entropy_cmd->add_option("--bump", en_bump, "Initial ratio bump: cx cy radius height")->expected(4);
  entropy_cmd->add_option("--t-max", en_tmax, "End time (default: half a period)");
  entropy_cmd->add_option("--steps", en_steps, "Time steps after t = 0");
  entropy_cmd->add_option("--nodes", en_nodes, "Gauss-Legendre nodes per direction");

  // field
  double f_alpha = 1.0, f_eps = 0.1;
  FieldGrid f_grid;
  std::vector<double> f_xr{f_grid.x_lo, f_grid.x_hi}, f_yr{f_grid.y_lo, f_grid.y_hi};
  auto* field_cmd = app.add_subcommand("field", "Drift field on a lattice, split into rotational and dissipative parts");
  add_common(field_cmd, common, false);
  field_cmd->add_option("--alpha", f_alpha, "Coupling ratio");
  field_cmd->add_option("--epsilon", f_eps, "Noise strength 1/omega");
  field_cmd->add_option("--x-range", f_xr, "x_lo x_hi")->expected(2);
  field_cmd->add_option("--y-range", f_yr, "y_lo y_hi")->expected(2);
  field_cmd->add_option("--nx", f_grid.nx, "Lattice points along x");
  field_cmd->add_option("--ny", f_grid.ny, "Lattice points along y");

  // check
  std::vector<std::string> ch_only;
  std::string ch_format = "text";
  auto* check_cmd = app.add_subcommand("check", "Run the acceptance suite");
  check_cmd->set_help_flag("--help", "Print this help message and exit");
  check_cmd->option_defaults()->always_capture_default();
  check_cmd->add_option("--only", ch_only, "Criterion ids to run");
  check_cmd->add_option("--threads", common.threads, "Worker threads");
  check_cmd->add_option("--format", ch_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> args;
  try {
    args = expand_config(argc, argv);
  } catch (const UsageError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitUsage;
  }
  std::vector<char*> cargs;
  for (auto& s : args) cargs.push_back(s.data());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (check_cmd->parsed()) {
      CheckOptions opt;
      opt.threads = common.threads;
      int failed = 0;
      json results = json::array();
      const bool as_json = ch_format == "json";
      (void)run_checks(opt, ch_only, [&](const CheckResult& r) {
        if (!r.supplementary && !r.passed) ++failed;
        if (as_json) {
          results.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed},
                             {"supplementary", r.supplementary}, {"detail", r.detail}});
        } else {
          fmt::print("{}\n", format_result(r));
          std::fflush(stdout);
        }
      });
      if (as_json) fmt::print("{}\n", results.dump(1));
      return failed ? kExitNumerical : 0;
    }

    validate_common(common);

    if (orbit_cmd->parsed()) {
      const auto p = params_of(o_alpha);
      require_energy(o_h, p);
      require(o_samples >= 2, "--samples must be >= 2");
      const auto orbit = orbit_from_energy(o_h, p, common.tol);
      const json summary = to_json(summarize(orbit));
      auto meta = meta_of("orbit", common, {{"alpha", o_alpha}, {"h", o_h}, {"samples", o_samples}}, false);
      meta["summary"] = summary;
      emit(common, meta, trajectory_table(orbit, o_samples));
      if (!o_summary.empty()) {
        std::ofstream f(o_summary, std::ios::binary);
        if (!f) throw UsageError("cannot open --summary " + o_summary);
        f << summary.dump(1) << '\n';
      }
      return 0;
    }

    if (eos_cmd->parsed()) {
      require(!e_alphas.empty(), "--alphas is empty");
      for (double a : e_alphas) (void)params_of(a);
      auto offsets = e_offsets.empty() ? default_eos_offsets(e_n_offsets) : e_offsets;
      for (double off : offsets) require(off > 0.0, "--offsets must be positive");
      const auto recs = eos_grid(e_alphas, offsets, common.tol, common.threads);
      emit(common, meta_of("eos", common, {{"alphas", e_alphas}, {"offsets", offsets}}, false),
           eos_table(recs));
      return 0;
    }

    if (contours_cmd->parsed()) {
      const auto p = params_of(c_alpha);
      for (double h : c_levels) require_energy(h, p);
      require(c_points >= 3, "--points must be >= 3");
      emit(common,
           meta_of("contours", common, {{"alpha", c_alpha}, {"levels", c_levels}, {"points", c_points}}, false),
           contour_table(p, c_levels, c_points, common.tol));
      return 0;
    }

    if (ssa_cmd->parsed()) {
      const auto p = params_of(s_alpha);
      require(s_omega > 0.0, "--omega must be positive");
      require(s_paths >= 1, "--paths must be >= 1");
      const bool need_orbit = s_m < 0 || s_tmax <= 0.0;
      std::optional<Orbit> orbit;
      if (need_orbit) {
        require_energy(s_h, p);
        orbit = orbit_from_energy(s_h, p, common.tol);
      }
      const std::int64_t m = s_m >= 0 ? s_m : std::llround(s_omega * orbit->seed.x);
      const std::int64_t n = s_n >= 0 ? s_n : std::llround(s_omega);
      require(n >= 0, "--n must be >= 0");
      const double t_max = s_tmax > 0.0 ? s_tmax : orbit->period_tau;
      const DiscreteState start{m, n, s_omega};
      const auto paths = parallel_map(s_paths, common.threads, [&](std::size_t i) {
        return ssa_simulate(start, p, t_max, common.seed, i);
      });
      json flags = json::array();
      for (const auto& path : paths) {
        flags.push_back({{"absorbed", path.absorbed}, {"prey_extinct", path.prey_extinct},
                         {"predator_extinct", path.predator_extinct}});
      }
      auto meta = meta_of("ssa", common,
                          {{"alpha", s_alpha}, {"omega", s_omega}, {"m", m}, {"n", n}, {"t_max", t_max},
                           {"paths", s_paths}},
                          true);
      meta["extinction"] = flags;
      emit(common, meta, ssa_table(paths));
      return 0;
    }

    if (sde_cmd->parsed()) {
      const auto p = params_of(d_alpha);
      require(d_eps >= 0.0, "--epsilon must be >= 0");
      require(d_dt > 0.0, "--dt must be positive");
      require(d_paths >= 1, "--paths must be >= 1");
      require(d_every >= 1, "--record-every must be >= 1");
      std::optional<Orbit> orbit;
      if (!d_x || d_tmax <= 0.0) {
        require_energy(d_h, p);
        orbit = orbit_from_energy(d_h, p, common.tol);
      }
      const PhaseState start{d_x ? *d_x : orbit->seed.x, d_y ? *d_y : (d_x ? 1.0 : orbit->seed.y)};
      require(start.valid(), "--x and --y must be positive");
      const double t_max = d_tmax > 0.0 ? d_tmax : orbit->period_tau;
      SdeOptions opt;
      opt.record_every = d_every;
      const auto paths = parallel_map(d_paths, common.threads, [&](std::size_t i) {
        return sde_simulate(start, p, d_eps, d_dt, t_max, common.seed, i, opt);
      });
      emit(common,
           meta_of("sde", common,
                   {{"alpha", d_alpha}, {"epsilon", d_eps}, {"dt", d_dt}, {"x", start.x}, {"y", start.y},
                    {"t_max", t_max}, {"paths", d_paths}, {"record_every", d_every}},
                   true),
           sde_table(paths, p));
      return 0;
    }

    if (hdiff_cmd->parsed()) {
      const auto p = params_of(hd_alpha);
      auto grid = hd_grid.empty() ? default_h_grid(p, hd_points) : hd_grid;
      require(grid.size() >= 2, "the energy grid needs at least 2 points");
      for (double h : grid) require_energy(h, p);
      const double h_ref = hd_ref ? *hd_ref : default_h_ref(p);
      require(h_ref >= grid.front() && h_ref <= grid.back(), "--h-ref must lie inside the grid");
      const auto table = pss_curve(p, grid, h_ref, noise_form_from_string(hd_noise),
                                   drift_form_from_string(hd_drift), common.tol, common.threads);
      for (const auto& w : table.warnings) fmt::print(stderr, "warning: {}\n", w);
      auto meta = meta_of("hdiff", common,
                          {{"alpha", hd_alpha}, {"h_ref", h_ref}, {"noise", hd_noise}, {"drift", hd_drift},
                           {"grid", grid}},
                          false);
      meta["warnings"] = table.warnings;
      meta["normalizable"] = false;
      emit(common, meta, hdiff_table(table));
      return 0;
    }

    if (field_cmd->parsed()) {
      const auto p = params_of(f_alpha);
      require(f_eps >= 0.0, "--epsilon must be >= 0");
      require(f_xr[0] > 0.0 && f_xr[1] >= f_xr[0] && f_yr[0] > 0.0 && f_yr[1] >= f_yr[0],
              "--x-range and --y-range must be positive and ordered");
      require(f_grid.nx >= 1 && f_grid.ny >= 1, "--nx and --ny must be >= 1");
      f_grid.x_lo = f_xr[0];
      f_grid.x_hi = f_xr[1];
      f_grid.y_lo = f_yr[0];
      f_grid.y_hi = f_yr[1];
      emit(common,
           meta_of("field", common,
                   {{"alpha", f_alpha}, {"epsilon", f_eps}, {"x_range", f_xr}, {"y_range", f_yr},
                    {"nx", f_grid.nx}, {"ny", f_grid.ny}},
                   false),
           field_table(p, f_eps, f_grid));
      return 0;
    }

    if (entropy_cmd->parsed()) {
      const auto p = params_of(en_alpha);
      require_energy(en_h, p);
      require(en_nodes >= 2, "--nodes must be >= 2");
      require(en_steps >= 1, "--steps must be >= 1");
      require(en_bump.size() == 4 && en_bump[2] > 0.0, "--bump needs cx cy radius>0 height");
      EnergyWeight weight = weight_one();
      double scale = 0.0;
      if (en_rho == "gibbs") {
        scale = theta_fn(en_h, p, common.tol);
        weight = weight_exp(scale);
      } else if (en_rho == "exp") {
        require(en_rho_scale > 0.0, "--rho exp needs --rho-scale > 0");
        scale = en_rho_scale;
        weight = weight_exp(scale);
      }
      const auto psi = en_psi == "ln" ? psi_log() : en_psi == "one" ? psi_one() : psi_z_log_z();
      const auto w0 = smooth_bump({en_bump[0], en_bump[1]}, en_bump[2], en_bump[3]);
      require(en_bump[3] > -1.0 || en_psi == "one", "--bump height must keep w0 > 0");
      const double t_max = en_tmax > 0.0 ? en_tmax : 0.5 * orbit_from_energy(en_h, p, common.tol).period_tau;
      DensityField field{w0, weight, psi, {}, en_h, en_nodes};
      std::vector<EntropyPoint> series;
      std::vector<std::string> warnings;
      for (std::size_t k = 0; k <= en_steps; ++k) {
        const double t = t_max * static_cast<double>(k) / static_cast<double>(en_steps);
        series.push_back({t, relative_entropy_at_time(field, p, t, common.tol, common.threads)});
        for (const auto& w : series.back().value.warnings) warnings.push_back(w);
      }
      auto meta = meta_of("entropy", common,
                          {{"alpha", en_alpha}, {"h", en_h}, {"psi", en_psi}, {"rho", en_rho},
                           {"rho_scale", scale}, {"bump", en_bump}, {"t_max", t_max}, {"steps", en_steps},
                           {"nodes", en_nodes}},
                          false);
      meta["warnings"] = warnings;
      emit(common, meta, entropy_table(series));
      return 0;
    }
  } catch (const UsageError& e) {
    fmt::print(stderr, "error: {}\nRun with --help for more information.\n", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return e.kind() == ErrorKind::InvalidArgument ? kExitUsage : kExitNumerical;
  }
  return 0;
}
