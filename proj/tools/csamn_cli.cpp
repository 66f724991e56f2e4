#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "csamn/config.hpp"
#include "csamn/experiment.hpp"
#include "csamn/horizon.hpp"
#include "csamn/oracle.hpp"
#include "csamn/report.hpp"
#include "csamn/solver.hpp"

namespace fs = std::filesystem;
using namespace csamn;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitFlagged = 3;

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string algo;
  std::string mode;
  std::string out = "out";
  std::string format = "csv,svg";
  unsigned threads = 0;
};

ScenarioConfig build_config(const Common& c) {
  ScenarioConfig cfg = c.config_path.empty() ? ScenarioConfig{} : load_config(c.config_path);
  for (const std::string& kv : c.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (c.seed_set) cfg.seed = c.seed;
  if (!c.mode.empty()) cfg.mode = parse_mode(c.mode);
  cfg.validate();
  return cfg;
}

struct Formats {
  bool csv = false;
  bool svg = false;
};

Formats parse_formats(const std::string& text) {
  Formats f;
  std::string item;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      if (item == "csv") {
        f.csv = true;
      } else if (item == "svg") {
        f.svg = true;
      } else if (!item.empty()) {
        throw ConfigError("unknown output format '" + item + "'");
      }
      item.clear();
    } else if (text[i] != ' ') {
      item += text[i];
    }
  }
  return f;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_outputs(const SweepTable& table, const std::string& stem, const std::string& x_label,
                   bool include_slots, const Common& c) {
  const Formats f = parse_formats(c.format);
  if (!f.csv && !f.svg) return;
  fs::create_directories(c.out);
  const std::vector<MetricRow> rows = table_rows(table, include_slots);
  if (f.csv) {
    std::ofstream out(fs::path(c.out) / (stem + ".csv"));
    if (!out) throw std::runtime_error("cannot write into " + c.out);
    write_csv(out, rows);
  }
  if (!f.svg) return;
  std::vector<MetricRow> agg;
  for (const MetricRow& r : rows) {
    if (r.record == "mean" || r.record == "stddev") agg.push_back(r);
  }
  for (std::size_t k = 0; k < kMetricNames.size(); ++k) {
    const std::string metric = kMetricNames[k];
    write_file(fs::path(c.out) / (stem + "_" + metric + ".svg"),
               svg_line_plot(stem + ": " + metric, x_label, metric, metric_series(agg, k)));
  }
}

void write_slot_plots(const ExperimentResult& r, const Common& c) {
  if (!parse_formats(c.format).svg) return;
  fs::create_directories(c.out);
  const char* names[] = {"utility", "data_bits", "energy_j", "ds_delay_s"};
  for (int k = 0; k < 4; ++k) {
    PlotSeries s{to_string(r.algorithm), {}, {}, {}};
    for (const SlotMetrics& m : r.slots) {
      const double v[] = {m.utility, m.data_bits, m.energy.total(), m.ds_delay_s};
      s.x.push_back(m.slot);
      s.mean.push_back(v[k]);
    }
    write_file(fs::path(c.out) / (std::string("run_slots_") + names[k] + ".svg"),
               svg_line_plot(std::string("run: ") + names[k], "slot", names[k], {s}));
  }
}

void print_result(const ExperimentResult& r) {
  std::printf("%-10s seed=%-6llu utility=%.9g data_bits=%.9g energy_j=%.9g ds_delay_s=%.6g flagged=%d "
              "iterations=%d wall_s=%.4f\n",
              to_string(r.algorithm).c_str(), static_cast<unsigned long long>(r.seed), r.utility, r.data_bits,
              r.energy.total(), r.avg_ds_delay_s, r.flagged_slots, r.iterations, r.wall_clock_s);
}

void print_notes(const ExperimentResult& r) {
  for (const SlotMetrics& m : r.slots) {
    for (const std::string& n : m.notes) std::fprintf(stderr, "slot %d: %s\n", m.slot, n.c_str());
  }
}

int run_cmd(const Common& c) {
  ScenarioConfig cfg = build_config(c);
  if (!c.algo.empty()) cfg.algorithm = parse_algorithm(c.algo);
  SweepTable table;
  table.axis = "none";
  table.values = {0.0};
  table.seeds = {cfg.seed};
  table.algorithms = {cfg.algorithm};
  table.cells.push_back({cfg.algorithm, 0.0, cfg.seed, run_experiment(cfg)});
  const ExperimentResult& r = table.cells.front().result;
  print_result(r);
  print_notes(r);
  write_outputs(table, "run", "run", true, c);
  write_slot_plots(r, c);
  return r.any_flagged() ? kExitFlagged : 0;
}

int table_exit(const SweepTable& t) {
  for (const SweepCell& cell : t.cells) {
    if (cell.result.any_flagged()) return kExitFlagged;
  }
  return 0;
}

int sweep_cmd(const Common& c, const std::string& axis, const std::string& values, const std::string& seeds) {
  const ScenarioConfig cfg = build_config(c);
  const std::vector<Algorithm> algos = parse_algorithm_list(c.algo.empty() ? to_string(cfg.algorithm) : c.algo);
  const std::vector<std::uint64_t> seed_list =
      seeds.empty() ? std::vector<std::uint64_t>{cfg.seed} : parse_seed_list(seeds);
  const SweepTable t = run_sweep(cfg, axis, parse_value_list(values), seed_list, algos, c.threads);
  for (const MetricRow& r : aggregate_rows(table_rows(t, false))) {
    if (r.record != "mean") continue;
    std::printf("%-10s %s=%-12s utility=%.9g data_bits=%.9g energy_j=%.9g ds_delay_s=%.6g flagged=%.3g\n",
                r.algorithm.c_str(), axis.c_str(), format_number(r.axis_value).c_str(), r.metrics[0],
                r.metrics[1], r.metrics[2], r.metrics[6], r.metrics[7]);
  }
  write_outputs(t, "sweep_" + axis, axis, false, c);
  return table_exit(t);
}

int compare_cmd(const Common& c, const std::string& seeds) {
  const ScenarioConfig cfg = build_config(c);
  const std::vector<Algorithm> algos = parse_algorithm_list(c.algo.empty() ? "jcorm,atsm,ga,no-offload" : c.algo);
  const std::vector<std::uint64_t> seed_list =
      seeds.empty() ? std::vector<std::uint64_t>{cfg.seed} : parse_seed_list(seeds);
  const SweepTable t = compare(cfg, algos, seed_list, c.threads);
  for (const MetricRow& r : aggregate_rows(table_rows(t, false))) {
    if (r.record != "mean") continue;
    std::printf("%-10s utility=%.9g data_bits=%.9g energy_j=%.9g ds_delay_s=%.6g flagged=%.3g\n",
                r.algorithm.c_str(), r.metrics[0], r.metrics[1], r.metrics[2], r.metrics[6], r.metrics[7]);
  }
  write_outputs(t, "compare", "algorithm", false, c);
  return table_exit(t);
}

void print_decision(const char* label, std::size_t u, const UavDecision& d) {
  std::printf("  %s uav %zu: power_w=%.6g leo_cpu_hz=%.6g dt_start_s=%.6g offload_ratio=%.6g\n", label, u,
              d.power_w, d.leo_cpu_hz, d.dt_start_s, d.offload_ratio);
}

int oracle_cmd(const Common& c, int slot, int points, int levels, const std::string& block, int uav) {
  const ScenarioConfig cfg = build_config(c);
  if (slot < 0 || slot >= cfg.num_slots) throw ConfigError("slot index out of range");
  const NetworkState state = generate_scenario(cfg, cfg.seed);
  const std::vector<UavStorage> storage(static_cast<std::size_t>(cfg.num_uavs),
                                        UavStorage{cfg.storage_capacity_bits, cfg.storage_remaining_bits});
  SlotContext ctx = slot_context(cfg, state, slot, storage);
  ctx.mode = DeadlineMode::kStrict;
  const SlotSolution sol = solve_slot_jcorm(ctx, cfg.tol);
  const GridSpec g{points, levels};
  g.validate();

  if (block == "joint") {
    if (cfg.num_uavs > 2) throw ConfigError("the joint oracle needs num_uavs <= 2");
    const JointResult o = grid_joint(ctx, g);
    std::printf("jcorm  objective=%.9g flagged=%d\n", sol.objective, sol.flagged ? 1 : 0);
    for (std::size_t u = 0; u < sol.decisions.size(); ++u) print_decision("jcorm ", u, sol.decisions[u]);
    if (!o.feasible) {
      std::printf("oracle no feasible grid point (%ld evaluations)\n", o.evaluations);
      return kExitFlagged;
    }
    std::printf("oracle objective=%.9g evaluations=%ld gap=%.6g\n", o.objective, o.evaluations,
                (o.objective - sol.objective) / std::abs(o.objective));
    for (std::size_t u = 0; u < o.best.size(); ++u) print_decision("oracle", u, o.best[u]);
    return 0;
  }

  if (uav < 0 || uav >= cfg.num_uavs) throw ConfigError("uav index out of range");
  const auto u = static_cast<std::size_t>(uav);
  UavDecision cand = sol.decisions[u];
  GridResult o;
  if (block == "sp1") {
    o = grid_sp1(ctx, u, cand, g);
    cand.power_w = solve_power(ctx, u, cand, cfg.tol).power_w;
  } else if (block == "sp2") {
    o = grid_sp2(ctx, u, sol.decisions, g);
    cand.leo_cpu_hz = solve_compute(ctx, u, cand).leo_cpu_hz;
  } else if (block == "sp3") {
    o = grid_sp3(ctx, u, cand, g);
    cand.dt_start_s = solve_start_time(ctx, u, cand, DeadlineMode::kStrict).dt_start_s;
  } else if (block == "sp4") {
    o = grid_sp4(ctx, u, cand, g);
    cand.offload_ratio = solve_ratio(ctx, u, cand).offload_ratio;
  } else {
    throw ConfigError("unknown oracle block '" + block + "'");
  }
  const UavEval e = evaluate_uav(ctx, u, cand);
  std::printf("solver normalized_objective=%.9g\n", normalized_objective(e, ctx.omega));
  print_decision("solver", u, cand);
  if (!o.feasible) {
    std::printf("oracle no feasible grid point (%ld evaluations)\n", o.evaluations);
    return kExitFlagged;
  }
  std::printf("oracle normalized_objective=%.9g evaluations=%ld\n", o.normalized_objective, o.evaluations);
  print_decision("oracle", u, o.best);
  return 0;
}

void add_common(CLI::App* sub, Common& c, bool algo_list) {
  sub->add_option("--config", c.config_path, "Configuration file (key = value)")->check(CLI::ExistingFile);
  sub->add_option("--set", c.overrides, "Override a configuration key, key=value (repeatable)");
  sub->add_option_function<std::uint64_t>(
      "--seed", [&c](const std::uint64_t& s) { c.seed = s, c.seed_set = true; }, "Scenario seed");
  sub->add_option("--algo", c.algo,
                  algo_list ? "Comma-separated schemes: jcorm, atsm, ga, no-offload"
                            : "Scheme: jcorm, atsm, ga or no-offload");
  sub->add_option("--mode", c.mode, "Deadline handling: strict or paper-relaxed");
  sub->add_option("--out", c.out, "Output directory");
  sub->add_option("--format", c.format, "Outputs to write: csv, svg or csv,svg");
  sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Satellite-UAV maritime network simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "csamn 0.1.0");

  Common common;
  std::string axis;
  std::string values;
  std::string seeds;
  int slot = 0;
  int points = 25;
  int levels = 4;
  std::string block = "joint";
  int uav = 0;
  bool dump_config = false;

  CLI::App* run = app.add_subcommand("run", "Run one experiment");
  add_common(run, common, false);
  run->add_flag("--print-config", dump_config, "Print the effective configuration and exit");

  CLI::App* sweep = app.add_subcommand("sweep", "Sweep one parameter over values and seeds");
  add_common(sweep, common, true);
  sweep->add_option("--axis", axis, "B_LEO, K_0, omega, beta, storage_capacity, ds_task_bits, pmax or a config key")
      ->required();
  sweep->add_option("--values", values, "Comma-separated axis values")->required();
  sweep->add_option("--seeds", seeds, "Seed list, e.g. 1-10 or 1,4,9");

  CLI::App* cmp = app.add_subcommand("compare", "Paired-seed comparison of schemes");
  add_common(cmp, common, true);
  cmp->add_option("--seeds", seeds, "Seed list, e.g. 1-20");

  CLI::App* orc = app.add_subcommand("oracle", "Grid-search reference for one slot");
  add_common(orc, common, false);
  orc->add_option("--slot", slot, "Slot index");
  orc->add_option("--points", points, "Grid points per axis per level");
  orc->add_option("--levels", levels, "Zoom levels");
  orc->add_option("--block", block, "joint, sp1, sp2, sp3 or sp4");
  orc->add_option("--uav", uav, "UAV index for single-block searches");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (run->parsed()) {
      if (dump_config) {
        std::cout << format_config(build_config(common));
        return 0;
      }
      return run_cmd(common);
    }
    if (sweep->parsed()) return sweep_cmd(common, axis, values, seeds);
    if (cmp->parsed()) return compare_cmd(common, seeds);
    if (orc->parsed()) return oracle_cmd(common, slot, points, levels, block, uav);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
