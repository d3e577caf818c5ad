// smcmix: reproducible experiment driver for the SMC / SMC' mixing-rate
// laboratory. Subcommands: simulate, kernel, tv-curve, couple, verify.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 I/O error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "smcmix/dists.hpp"
#include "smcmix/ergodicity.hpp"
#include "smcmix/errors.hpp"
#include "smcmix/io.hpp"
#include "smcmix/kernels.hpp"
#include "smcmix/parallel.hpp"
#include "smcmix/rng.hpp"
#include "smcmix/samplers.hpp"
#include "smcmix/stats.hpp"
#include "smcmix/version.hpp"

namespace smcmix {
namespace {

using nlohmann::json;

using ConfigSetters = std::map<std::string, std::function<void(const json&)>>;

// Registers --<key> on the subcommand and a matching config-file setter, so
// built-in defaults < config file < command-line flags.
template <typename T>
void add_opt(CLI::App* sub, ConfigSetters& setters, const std::string& key,
             T& var, const std::string& desc) {
  sub->add_option("--" + key, var, desc);
  setters[key] = [&var](const json& v) { var = v.get<T>(); };
}

void apply_config_file(CLI::App* sub, const std::string& path,
                       const ConfigSetters& setters) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file: " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const std::exception& e) {
    throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
  }
  if (!cfg.is_object()) throw ConfigError("config file must hold a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError("unknown config key '" + key + "' for subcommand " +
                        sub->get_name());
    }
    const auto* opt = sub->get_option_no_throw("--" + key);
    if (opt != nullptr && opt->count() > 0) continue;  // flag wins
    try {
      it->second(value);
    } catch (const std::exception& e) {
      throw ConfigError("config key '" + key + "': " + e.what());
    }
  }
}

ChainId parse_model(const std::string& model) {
  if (model == "smc") return ChainId::kSmc;
  if (model == "smc-prime") return ChainId::kSmcPrime;
  throw ConfigError("--model must be smc or smc-prime, got '" + model + "'");
}

struct CommonOpts {
  std::uint64_t seed = 1;
  std::string out;
  std::string config_path;
  int threads = default_thread_count();
  double grid_tmax = 40.0;
  int grid_panels = 80;
  int grid_points = 16;

  GridSpec grid() const {
    GridSpec spec;
    spec.t_max = grid_tmax;
    spec.panels = grid_panels;
    spec.points_per_panel = grid_points;
    return spec;
  }
};

void add_common(CLI::App* sub, ConfigSetters& setters, CommonOpts& opts,
                bool out_required) {
  auto* out =
      sub->add_option("--out", opts.out, "output path (CSV or JSON)");
  if (out_required) out->required();
  setters["out"] = [&opts](const json& v) { opts.out = v.get<std::string>(); };
  sub->add_option("--config", opts.config_path,
                  "JSON config file; flags override its entries");
  add_opt(sub, setters, "seed", opts.seed, "master seed (64-bit)");
  add_opt(sub, setters, "threads", opts.threads, "worker pool size");
  add_opt(sub, setters, "grid-tmax", opts.grid_tmax, "quadrature grid upper end");
  add_opt(sub, setters, "grid-panels", opts.grid_panels, "quadrature panel count");
  add_opt(sub, setters, "grid-points", opts.grid_points,
          "Gauss-Legendre points per panel");
}

json common_meta(const char* command, const CommonOpts& opts) {
  return json{{"command", command},
              {"version", kVersion},
              {"rng_version", kRngVersion},
              {"master_seed", opts.seed},
              {"grid",
               {{"t_max", opts.grid_tmax},
                {"panels", opts.grid_panels},
                {"points_per_panel", opts.grid_points}}}};
}

// ---------------------------------------------------------------- simulate

struct SimulateOpts {
  CommonOpts common;
  std::string model = "smc";
  std::string mode = "direct";  // direct | subordinated
  double x0 = 1.0;
  double horizon = -1.0;  // < 0: not set
  int steps = -1;         // < 0: not set
  int replicates = 1;
};

int run_simulate(const SimulateOpts& o) {
  const bool want_path = o.horizon >= 0.0;
  const bool want_chain = o.steps >= 0;
  if (want_path == want_chain) {
    throw ConfigError("simulate needs exactly one of --horizon or --steps");
  }
  if (o.mode != "direct" && o.mode != "subordinated") {
    throw ConfigError("--mode must be direct or subordinated");
  }
  const bool subordinated = o.mode == "subordinated";
  if (subordinated && (o.model != "smc-prime" || !want_path)) {
    throw ConfigError("--mode subordinated requires --model smc-prime and --horizon");
  }
  const ChainId chain = parse_model(o.model);
  if (o.replicates < 1) throw ConfigError("--replicates must be >= 1");

  json meta = common_meta("simulate", o.common);
  meta["config"] = {{"model", o.model},   {"mode", o.mode},
                    {"x0", o.x0},         {"horizon", o.horizon},
                    {"steps", o.steps},   {"replicates", o.replicates}};

  if (o.replicates == 1) {
    RngStream rng(RngSeed{o.common.seed, 0});
    if (want_chain) {
      write_chain_csv(o.common.out, sample_jump_chain(chain, o.x0, o.steps, rng),
                      meta);
    } else {
      const PathSample path =
          subordinated ? sample_subordinated_path(o.x0, o.horizon, rng)
                       : sample_path(chain, o.x0, o.horizon, rng);
      write_path_csv(o.common.out, path, meta);
    }
    return 0;
  }

  // replicate mode: one endpoint value per stream, ordered by replicate
  std::vector<double> endpoints(o.replicates);
  parallel_for(endpoints.size(), o.common.threads, [&](std::size_t r) {
    RngStream rng(RngSeed{o.common.seed, r});
    if (want_chain) {
      endpoints[r] = sample_jump_chain(chain, o.x0, o.steps, rng).back();
    } else if (subordinated) {
      endpoints[r] = sample_subordinated_path(o.x0, o.horizon, rng).states.back();
    } else {
      endpoints[r] = sample_path(chain, o.x0, o.horizon, rng).states.back();
    }
  });
  CsvWriter csv(o.common.out, meta, {"replicate", "value"});
  for (std::size_t r = 0; r < endpoints.size(); ++r) {
    csv.raw_row({std::to_string(r), format_double(endpoints[r])});
  }
  csv.save();
  return 0;
}

// ------------------------------------------------------------------ kernel

struct KernelOpts {
  CommonOpts common;
  std::string model = "smc";
  double x = 1.0;
  double ell = 1.0;
  double tail_tol = 1e-10;
};

int run_kernel(const KernelOpts& o) {
  const ChainId chain = parse_model(o.model);
  json meta = common_meta("kernel", o.common);
  meta["config"] = {{"model", o.model},
                    {"x", o.x},
                    {"ell", o.ell},
                    {"tail_tol", o.tail_tol}};
  MixedMeasure kernel = chain == ChainId::kSmc
                            ? smc_kernel(o.x, o.ell, o.common.grid())
                            : smc_prime_kernel(o.x, o.ell, o.common.grid(),
                                               o.tail_tol);
  if (o.ell == 0.0) {
    // no recombination in zero distance: atom 1, empty density
    kernel.density.values.clear();
    kernel.density.grid.nodes.clear();
    kernel.density.grid.weights.clear();
  }
  write_kernel_csv(o.common.out, kernel, meta);
  return 0;
}

// ---------------------------------------------------------------- tv-curve

struct TvCurveOpts {
  CommonOpts common;
  std::string model = "smc";
  std::string scale = "continuous";  // continuous | jump
  std::string spacing = "log";       // log | linear
  double x = 1.0;
  double min = 2.0;
  double max = 1000.0;
  int count = 25;
  double tail_tol = 1e-10;
  std::string summary;  // optional JSON summary path
};

std::vector<double> make_sweep(const TvCurveOpts& o) {
  if (o.count < 1 || !(o.max >= o.min)) {
    throw ConfigError("tv-curve sweep is empty (need count >= 1 and max >= min)");
  }
  std::vector<double> pts;
  if (o.scale == "jump") {
    for (int n = static_cast<int>(o.min); n <= static_cast<int>(o.max); ++n) {
      pts.push_back(n);
    }
    if (pts.empty()) throw ConfigError("tv-curve sweep is empty");
    return pts;
  }
  if (o.count == 1) return {o.min};
  for (int i = 0; i < o.count; ++i) {
    const double f = static_cast<double>(i) / (o.count - 1);
    pts.push_back(o.spacing == "log" ? o.min * std::pow(o.max / o.min, f)
                                     : o.min + f * (o.max - o.min));
  }
  return pts;
}

int run_tv_curve(const TvCurveOpts& o) {
  const ChainId chain = parse_model(o.model);
  if (o.scale != "continuous" && o.scale != "jump") {
    throw ConfigError("--scale must be continuous or jump");
  }
  if (o.spacing != "log" && o.spacing != "linear") {
    throw ConfigError("--spacing must be log or linear");
  }
  const auto sweep = make_sweep(o);
  const GridSpec grid = o.common.grid();

  struct Row {
    double at;
    double tv;
    const char* method;
    double bound;
    bool valid;
  };
  std::vector<Row> rows(sweep.size());

  if (o.scale == "jump") {
    JumpKernelOperator op(chain, grid, o.x);
    for (std::size_t i = 0; i < sweep.size(); ++i) {
      const int n = static_cast<int>(sweep[i]);
      const auto tv = jump_tv_numeric(op, o.x, n);
      rows[i] = {sweep[i], tv.value, to_string(tv.method),
                 n >= 1 ? jump_bound(chain, o.x, n) : 1.0, true};
    }
  } else {
    parallel_for(sweep.size(), o.common.threads, [&](std::size_t i) {
      const double ell = sweep[i];
      if (chain == ChainId::kSmc) {
        bool valid = true;
        try {
          (void)smc_tv_exact(o.x, ell);
        } catch (const ValidityError&) {
          valid = false;
        }
        if (valid) {
          const auto tv = smc_tv_exact(o.x, ell);
          rows[i] = {ell, tv.value, to_string(tv.method), 1.0 / ell, true};
        } else {
          const auto tv = tv_mixed_vs_density(smc_kernel(o.x, ell, grid),
                                              StationaryLawId::kPi);
          rows[i] = {ell, tv.value, to_string(tv.method), 1.0 / ell, false};
        }
      } else {
        bool valid = true;
        try {
          (void)smc_tv_exact(o.x, 0.5 * ell);
        } catch (const ValidityError&) {
          valid = false;
        }
        const auto tv = tv_mixed_vs_density(
            smc_prime_kernel(o.x, ell, grid, o.tail_tol), StationaryLawId::kPi);
        rows[i] = {ell, tv.value, to_string(tv.method), 2.0 / ell, valid};
      }
      std::fprintf(stderr, "tv-curve: %zu/%zu done\n", i + 1, sweep.size());
    });
  }

  json meta = common_meta("tv-curve", o.common);
  meta["config"] = {{"model", o.model},     {"scale", o.scale},
                    {"x", o.x},             {"min", o.min},
                    {"max", o.max},         {"count", o.count},
                    {"spacing", o.spacing}, {"tail_tol", o.tail_tol}};
  CsvWriter csv(o.common.out, meta,
                {"ell_or_n", "tv", "method", "bound", "valid_flag"});
  for (const auto& row : rows) {
    csv.raw_row({format_double(row.at), format_double(row.tv), row.method,
                 format_double(row.bound), row.valid ? "1" : "0"});
  }
  csv.save();

  if (!o.summary.empty()) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : rows) {
      if (row.tv > 0.0) pts.emplace_back(row.at, row.tv);
    }
    json summary = meta;
    if (pts.size() >= 3) {
      summary["loglog_slope"] = decay_slope(pts);
    }
    summary["points"] = pts.size();
    write_json_file(o.summary, summary);
  }
  return 0;
}

// ------------------------------------------------------------------ couple

struct CoupleOpts {
  CommonOpts common;
  std::string model = "smc";
  double x0 = 1.0;
  double y0 = -1.0;  // < 0: draw Y_0 from the stationary law
  int steps = 15;
  int replicates = 1;
};

int run_couple(const CoupleOpts& o) {
  const ChainId chain = parse_model(o.model);
  if (o.steps < 1) throw ConfigError("--steps must be >= 1");
  if (o.replicates < 1) throw ConfigError("--replicates must be >= 1");
  const std::optional<Tmrca> y0 =
      o.y0 > 0.0 ? std::optional<Tmrca>(o.y0) : std::nullopt;

  json meta = common_meta("couple", o.common);
  meta["config"] = {{"model", o.model},
                    {"x0", o.x0},
                    {"y0", o.y0 > 0.0 ? json(o.y0) : json("stationary")},
                    {"steps", o.steps},
                    {"replicates", o.replicates}};

  if (o.replicates == 1) {
    RngStream rng(RngSeed{o.common.seed, 0});
    const auto trace = sample_coupled_chains(chain, o.x0, y0, o.steps, rng);
    CsvWriter csv(o.common.out, meta, {"step", "x", "y", "gap"});
    for (std::size_t i = 0; i < trace.xs.size(); ++i) {
      csv.raw_row({std::to_string(i), format_double(trace.xs[i]),
                   format_double(trace.ys[i]), format_double(trace.abs_gaps[i])});
    }
    csv.save();
    return 0;
  }

  // aggregate mode: per-step mean gap and per-step contraction ratio
  std::vector<std::vector<double>> gaps(o.replicates);
  parallel_for(gaps.size(), o.common.threads, [&](std::size_t r) {
    RngStream rng(RngSeed{o.common.seed, r});
    gaps[r] = sample_coupled_chains(chain, o.x0, y0, o.steps, rng).abs_gaps;
  });
  CsvWriter csv(o.common.out, meta,
                {"step", "mean_gap", "ratio_vs_prev", "se_ratio"});
  std::vector<double> prev(o.replicates), cur(o.replicates);
  for (int step = 0; step <= o.steps; ++step) {
    for (int r = 0; r < o.replicates; ++r) cur[r] = gaps[r][step];
    const auto mean = sample_mean_se(cur);
    if (step == 0) {
      csv.raw_row({std::to_string(step), format_double(mean.mean), "", ""});
    } else {
      const auto ratio = ratio_of_means(prev, cur);
      csv.raw_row({std::to_string(step), format_double(mean.mean),
                   format_double(ratio.mean), format_double(ratio.se)});
    }
    std::swap(prev, cur);
  }
  csv.save();
  return 0;
}

// ------------------------------------------------------------------ verify

struct VerifyOpts {
  CommonOpts common;
  std::vector<std::string> only;
  std::vector<std::string> tolerance;
};

int run_verify(const VerifyOpts& o) {
  SuiteConfig cfg;
  cfg.grid = o.common.grid();
  cfg.seed = o.common.seed;
  for (auto claim : o.only) {
    if (claim.rfind("claim=", 0) == 0) claim = claim.substr(6);
    const auto known = registered_claims();
    if (std::find(known.begin(), known.end(), claim) == known.end()) {
      throw ConfigError("unknown claim id: " + claim);
    }
    cfg.only.push_back(claim);
  }
  for (const auto& spec : o.tolerance) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("--tolerance expects name=value, got '" + spec + "'");
    }
    try {
      cfg.tolerances[spec.substr(0, eq)] = std::stod(spec.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("--tolerance value is not a number: " + spec);
    }
  }

  const auto reports = run_verification_suite(cfg);
  std::cout << reports_to_table(reports);
  bool all_passed = true;
  for (const auto& r : reports) all_passed = all_passed && r.passed;
  std::cout << (all_passed ? "all checks passed" : "some checks FAILED")
            << " (" << reports.size() << " claims)\n";

  if (!o.common.out.empty()) {
    json doc = common_meta("verify", o.common);
    doc["config"] = {{"only", cfg.only}, {"tolerances", cfg.tolerances}};
    doc["reports"] = reports_to_json(reports);
    doc["all_passed"] = all_passed;
    write_json_file(o.common.out, doc);
  }
  return all_passed ? 0 : 1;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"numerical laboratory for SMC / SMC' mixing rates"};
  app.require_subcommand(1);

  SimulateOpts sim;
  ConfigSetters sim_keys;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "sample jump chains and continuous paths");
  add_common(sim_cmd, sim_keys, sim.common, /*out_required=*/true);
  add_opt(sim_cmd, sim_keys, "model", sim.model, "smc | smc-prime");
  add_opt(sim_cmd, sim_keys, "mode", sim.mode, "direct | subordinated");
  add_opt(sim_cmd, sim_keys, "x0", sim.x0, "initial TMRCA");
  add_opt(sim_cmd, sim_keys, "horizon", sim.horizon,
          "genetic-distance horizon (continuous path output)");
  add_opt(sim_cmd, sim_keys, "steps", sim.steps,
          "jump-chain step count (jump-chain output)");
  add_opt(sim_cmd, sim_keys, "replicates", sim.replicates,
          "replicate count; > 1 writes one endpoint value per replicate");

  KernelOpts ker;
  ConfigSetters ker_keys;
  auto* ker_cmd =
      app.add_subcommand("kernel", "export a transition kernel as CSV");
  add_common(ker_cmd, ker_keys, ker.common, /*out_required=*/true);
  add_opt(ker_cmd, ker_keys, "model", ker.model, "smc | smc-prime");
  add_opt(ker_cmd, ker_keys, "x", ker.x, "initial TMRCA");
  add_opt(ker_cmd, ker_keys, "ell", ker.ell, "genetic distance");
  add_opt(ker_cmd, ker_keys, "tail-tol", ker.tail_tol,
          "Poisson mixture tail budget (smc-prime)");

  TvCurveOpts curve;
  ConfigSetters curve_keys;
  auto* curve_cmd =
      app.add_subcommand("tv-curve", "sweep TV distance to stationarity");
  add_common(curve_cmd, curve_keys, curve.common, /*out_required=*/true);
  add_opt(curve_cmd, curve_keys, "model", curve.model, "smc | smc-prime");
  add_opt(curve_cmd, curve_keys, "scale", curve.scale,
          "continuous (sweep ell) | jump (sweep n)");
  add_opt(curve_cmd, curve_keys, "x", curve.x, "initial TMRCA");
  add_opt(curve_cmd, curve_keys, "min", curve.min, "sweep start");
  add_opt(curve_cmd, curve_keys, "max", curve.max, "sweep end");
  add_opt(curve_cmd, curve_keys, "count", curve.count,
          "sweep size (continuous scale)");
  add_opt(curve_cmd, curve_keys, "spacing", curve.spacing, "log | linear");
  add_opt(curve_cmd, curve_keys, "tail-tol", curve.tail_tol,
          "Poisson mixture tail budget (smc-prime)");
  add_opt(curve_cmd, curve_keys, "summary", curve.summary,
          "optional JSON summary path (log-log slope)");

  CoupleOpts cpl;
  ConfigSetters cpl_keys;
  auto* cpl_cmd =
      app.add_subcommand("couple", "run coupled chains with shared randomness");
  add_common(cpl_cmd, cpl_keys, cpl.common, /*out_required=*/true);
  add_opt(cpl_cmd, cpl_keys, "model", cpl.model, "smc | smc-prime");
  add_opt(cpl_cmd, cpl_keys, "x0", cpl.x0, "initial TMRCA of chain X");
  add_opt(cpl_cmd, cpl_keys, "y0", cpl.y0,
          "initial TMRCA of chain Y (omit to draw from the stationary law)");
  add_opt(cpl_cmd, cpl_keys, "steps", cpl.steps, "coupled step count");
  add_opt(cpl_cmd, cpl_keys, "replicates", cpl.replicates,
          "replicate count; > 1 writes per-step aggregates");

  VerifyOpts ver;
  ConfigSetters ver_keys;
  auto* ver_cmd =
      app.add_subcommand("verify", "run the theorem verification suite");
  add_common(ver_cmd, ver_keys, ver.common, /*out_required=*/false);
  ver_cmd->add_option("--only", ver.only,
                      "run only the named claims (claim=<id> or <id>)");
  ver_cmd->add_option("--tolerance", ver.tolerance,
                      "override a named tolerance budget, name=value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (sim_cmd->parsed()) {
    apply_config_file(sim_cmd, sim.common.config_path, sim_keys);
    return run_simulate(sim);
  }
  if (ker_cmd->parsed()) {
    apply_config_file(ker_cmd, ker.common.config_path, ker_keys);
    return run_kernel(ker);
  }
  if (curve_cmd->parsed()) {
    apply_config_file(curve_cmd, curve.common.config_path, curve_keys);
    return run_tv_curve(curve);
  }
  if (cpl_cmd->parsed()) {
    apply_config_file(cpl_cmd, cpl.common.config_path, cpl_keys);
    return run_couple(cpl);
  }
  if (ver_cmd->parsed()) {
    apply_config_file(ver_cmd, ver.common.config_path, ver_keys);
    return run_verify(ver);
  }
  return 2;
}

}  // namespace
}  // namespace smcmix

int main(int argc, char** argv) {
  try {
    return smcmix::dispatch(argc, argv);
  } catch (const smcmix::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const smcmix::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
