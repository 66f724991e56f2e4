// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "csamn/baselines.hpp"
#include "csamn/experiment.hpp"
#include "csamn/oracle.hpp"
#include "csamn/report.hpp"
#include "csamn/solver.hpp"

using namespace csamn;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// JCORM runs collected by criteria 5-8 and checked again by 3 and 4.
struct HeadlineRun {
  ScenarioConfig cfg;
  ExperimentResult result;
};
std::vector<HeadlineRun> g_headline;

void keep_jcorm(const SweepTable& t, const ScenarioConfig& base) {
  for (const SweepCell& c : t.cells) {
    if (c.algorithm != Algorithm::kJcorm) continue;
    ScenarioConfig cfg = base;
    cfg.algorithm = c.algorithm;
    cfg.seed = c.seed;
    if (t.axis != "none") apply_axis(cfg, t.axis, c.axis_value);
    g_headline.push_back({cfg, c.result});
  }
}

std::vector<double> means(const SweepTable& t, Algorithm a, std::size_t metric) {
  std::vector<double> out;
  for (const MetricRow& r : aggregate_rows(table_rows(t, false))) {
    if (r.record == "mean" && r.algorithm == to_string(a)) out.push_back(r.metrics[metric]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// 1. Subproblem solvers against one-dimensional grids

Verdict criterion1() {
  ScenarioConfig cfg;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const GridSpec grid{10001, 2};
  const int wanted = 100;
  std::string detail;
  bool pass = true;
  for (int sp = 1; sp <= 4; ++sp) {
    int n = 0;
    int bad = 0;
    double worst = 0.0;
    for (int attempt = 0; attempt < 20 * wanted && n < wanted; ++attempt) {
      SlotContext ctx = make_context(cfg);
      ctx.fdma_users = 1 + static_cast<int>(unit(rng) * 6.0);
      UavSlotInput in;
      in.ds_bits = (1.0 + 14.0 * unit(rng)) * 1e6;
      in.offload_time_s = 0.05 + 0.4 * unit(rng);
      in.collect_rate_bps = (20.0 + 60.0 * unit(rng)) * 1e6;
      in.storage = {12e9, (1.0 + 10.0 * unit(rng)) * 1e9};
      ctx.uavs.push_back(in);
      UavDecision d;
      d.power_w = 0.05 + 0.95 * unit(rng);
      d.leo_cpu_hz = (1.0 + 9.0 * unit(rng)) * 1e9;
      d.dt_start_s = 10.0 * unit(rng);
      d.offload_ratio = 0.1 + 0.9 * unit(rng);

      GridResult o;
      UavDecision s = d;
      switch (sp) {
        case 1:
          o = grid_sp1(ctx, 0, d, grid);
          s.power_w = solve_power(ctx, 0, d, cfg.tol).power_w;
          break;
        case 2:
          o = grid_sp2(ctx, 0, std::vector<UavDecision>{d}, grid);
          s.leo_cpu_hz = solve_compute(ctx, 0, d).leo_cpu_hz;
          break;
        case 3:
          o = grid_sp3(ctx, 0, d, grid);
          s.dt_start_s = solve_start_time(ctx, 0, d, DeadlineMode::kStrict).dt_start_s;
          break;
        default:
          o = grid_sp4(ctx, 0, d, grid);
          s.offload_ratio = solve_ratio(ctx, 0, d).offload_ratio;
      }
      if (!o.feasible) continue;
      ++n;
      const UavEval e = evaluate_uav(ctx, 0, s);
      const double gap = o.normalized_objective - normalized_objective(e, ctx.omega);
      worst = std::max(worst, gap);
      if (gap > 1e-3 || !uav_feasible(ctx, 0, s, e, DeadlineMode::kStrict)) ++bad;
    }
    pass = pass && n >= wanted && bad == 0;
    detail += fmt("SP%.0f %.0f/%.0f within 1e-3 (worst gap %.2e); ", sp, n - bad, n, worst);
  }
  return {pass, detail};
}

// ---------------------------------------------------------------------------
// 2. Joint optimum on pre-screened tiny instances

Verdict criterion2() {
  const auto t0 = Clock::now();
  int kept = 0;
  int screened_out = 0;
  int bad = 0;
  double worst = -1.0;
  for (std::uint64_t seed = 1; seed <= 300 && kept < 20; ++seed) {
    ScenarioConfig cfg;
    cfg.num_uavs = 1 + static_cast<int>(seed % 2);
    const NetworkState st = generate_scenario(cfg, seed);
    const std::vector<UavStorage> storage(static_cast<std::size_t>(cfg.num_uavs),
                                          UavStorage{cfg.storage_capacity_bits, cfg.storage_remaining_bits});
    const SlotContext ctx = slot_context(cfg, st, 0, storage);
    const JointResult coarse = grid_joint(ctx, GridSpec{20, 4});
    const JointResult fine = grid_joint(ctx, GridSpec{25, 4});
    if (!coarse.feasible || !fine.feasible ||
        std::abs(fine.objective - coarse.objective) > 0.005 * std::abs(fine.objective)) {
      ++screened_out;
      continue;
    }
    ++kept;
    const SlotSolution s = solve_slot_jcorm(ctx, cfg.tol);
    const double gap = (fine.objective - s.objective) / std::abs(fine.objective);
    worst = std::max(worst, gap);
    if (gap > 0.02 || s.flagged) ++bad;
  }
  const double secs = since(t0);
  return {kept >= 20 && bad == 0 && secs < 300.0,
          fmt("%.0f instances kept (%.0f screened out), %.0f beyond 2%%, worst relative gap %.4f", kept,
              screened_out, bad, worst) +
              fmt(", %.1f s", secs)};
}

// ---------------------------------------------------------------------------
// 5. Paired-seed ordering at default settings

Verdict criterion5() {
  ScenarioConfig cfg;
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 20; ++s) seeds.push_back(s);
  const SweepTable t =
      compare(cfg, {Algorithm::kJcorm, Algorithm::kGa, Algorithm::kAtsm, Algorithm::kNoOffload}, seeds);
  keep_jcorm(t, cfg);
  const double jcorm = means(t, Algorithm::kJcorm, 0).at(0);
  const double ga = means(t, Algorithm::kGa, 0).at(0);
  const double atsm = means(t, Algorithm::kAtsm, 0).at(0);
  const double none = means(t, Algorithm::kNoOffload, 0).at(0);
  const double adv = (jcorm - atsm) / std::abs(atsm);
  return {jcorm >= ga && jcorm >= atsm && adv >= 0.10,
          fmt("mean utility jcorm %.6g, ga %.6g, atsm %.6g", jcorm, ga, atsm) +
              fmt(", no-offload %.6g; advantage over atsm %.1f%%", none, 100.0 * adv)};
}

// ---------------------------------------------------------------------------
// 6. Trends over 10-seed means

bool monotone(const std::vector<double>& v, bool increasing) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double tie = 0.01 * std::abs(v[i - 1]);
    if (increasing ? v[i] < v[i - 1] - tie : v[i] > v[i - 1] + tie) return false;
  }
  return true;
}

std::string series(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : " ") + format_number(x);
  return "[" + s + "]";
}

Verdict criterion6() {
  ScenarioConfig cfg;
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
  const std::vector<Algorithm> algo{Algorithm::kJcorm};

  const SweepTable b = run_sweep(cfg, "B_LEO", {20e6, 25e6, 30e6, 35e6, 40e6}, seeds, algo);
  const SweepTable k = run_sweep(cfg, "K_0", {0.0, 5.0, 10.0}, seeds, algo);
  const SweepTable w = run_sweep(cfg, "omega", {0.01, 0.1, 1.0, 10.0}, seeds, algo);
  keep_jcorm(b, cfg);
  keep_jcorm(k, cfg);
  keep_jcorm(w, cfg);

  const auto bu = means(b, Algorithm::kJcorm, 0);
  const auto be = means(b, Algorithm::kJcorm, 2);
  const auto ku = means(k, Algorithm::kJcorm, 0);
  const auto wu = means(w, Algorithm::kJcorm, 0);
  const bool ok_bu = monotone(bu, true);
  const bool ok_be = monotone(be, false);
  const bool ok_ku = monotone(ku, true);
  const bool ok_wu = monotone(wu, false);
  std::string d = std::string("utility(B_LEO) ") + (ok_bu ? "up " : "NOT up ") + series(bu) + "; energy(B_LEO) " +
                  (ok_be ? "down " : "NOT down ") + series(be) + "; utility(K_0) " + (ok_ku ? "up " : "NOT up ") +
                  series(ku) + "; utility(omega) " + (ok_wu ? "down " : "NOT down ") + series(wu);
  return {ok_bu && ok_be && ok_ku && ok_wu, d};
}

// ---------------------------------------------------------------------------
// 7. DS delay against local-only processing

Verdict criterion7() {
  ScenarioConfig cfg;
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 20; ++s) seeds.push_back(s);
  const SweepTable t = run_sweep(cfg, "ds_task_bits", {1e6, 2e6, 3e6, 4e6, 5e6}, seeds,
                                 {Algorithm::kJcorm, Algorithm::kNoOffload});
  keep_jcorm(t, cfg);
  auto delay = [&](Algorithm a, double v, std::uint64_t s) -> double {
    for (const SweepCell& c : t.cells) {
      if (c.algorithm == a && c.axis_value == v && c.seed == s) return c.result.avg_ds_delay_s;
    }
    return NAN;
  };
  int wins5 = 0;
  int wins1 = 0;
  for (std::uint64_t s : seeds) {
    if (delay(Algorithm::kJcorm, 5e6, s) < delay(Algorithm::kNoOffload, 5e6, s)) ++wins5;
    if (delay(Algorithm::kJcorm, 1e6, s) < delay(Algorithm::kNoOffload, 1e6, s)) ++wins1;
  }
  const auto jd = means(t, Algorithm::kJcorm, 6);
  const auto nd = means(t, Algorithm::kNoOffload, 6);
  return {wins5 >= 18,
          fmt("jcorm faster at 5 Mbit on %.0f/20 seeds (at 1 Mbit on %.0f/20); mean delay jcorm ", wins5, wins1) +
              series(jd) + ", no-offload " + series(nd)};
}

// ---------------------------------------------------------------------------
// 8. Run time

Verdict criterion8() {
  ScenarioConfig cfg;
  double jcorm = 1e300;
  for (int rep = 0; rep < 3; ++rep) {
    const ExperimentResult r = run_experiment(cfg);
    jcorm = std::min(jcorm, r.wall_clock_s);
    if (rep == 0) g_headline.push_back({cfg, r});
  }
  cfg.algorithm = Algorithm::kGa;
  const double ga = run_experiment(cfg).wall_clock_s;
  return {jcorm < 1.0, fmt("jcorm %.4f s, ga %.4f s (ga/jcorm = %.0fx)", jcorm, ga, ga / jcorm)};
}

// ---------------------------------------------------------------------------
// 3 and 4. Checks over every collected headline run

Verdict criterion3() {
  long slots = 0;
  long bad = 0;
  int max_iter = 0;
  for (const HeadlineRun& h : g_headline) {
    for (const SlotMetrics& m : h.result.slots) {
      ++slots;
      max_iter = std::max(max_iter, m.trace.iterations);
      if (!m.trace.monotone(1e-9) || m.trace.iterations > h.cfg.tol.i_max) ++bad;
    }
  }
  return {slots > 0 && bad == 0,
          fmt("%.0f slots from %.0f runs, %.0f non-monotone or over the cap, max iterations %.0f",
              static_cast<double>(slots), static_cast<double>(g_headline.size()), static_cast<double>(bad),
              max_iter)};
}

// Recomputes each UAV's DS completion time from the scenario draws and the
// timing model, without the problem layer used by the solvers.
Verdict criterion4() {
  long checked = 0;
  long flagged = 0;
  long bad = 0;
  double worst = -1e300;
  for (const HeadlineRun& h : g_headline) {
    const ScenarioConfig& cfg = h.cfg;
    const NetworkState st = generate_scenario(cfg, cfg.seed);
    const double prop = propagation_delay(cfg.geometry);
    const double gain = uav_leo_gain(uav_sat_distance(cfg.geometry), cfg.link);
    for (const SlotMetrics& m : h.result.slots) {
      if (m.flagged) {
        ++flagged;
        continue;
      }
      for (std::size_t u = 0; u < m.decisions.size(); ++u) {
        const UavLinkState ls =
            link_state(cfg, st.placement.uavs[u], st.placement.devices[u], st.slots[static_cast<std::size_t>(m.slot)][u]);
        const UavDecision& d = m.decisions[u];
        const double rate = uav_leo_rate(d.power_w, gain, cfg.link, cfg.num_uavs);
        const double l = ds_completion_time(d, {ls.total_ds_bits, ls.offload_time_s}, rate, cfg.compute, prop).total();
        ++checked;
        worst = std::max(worst, l - d.dt_start_s);
        if (l > d.dt_start_s) ++bad;
      }
    }
  }
  return {checked > 0 && bad == 0,
          fmt("%.0f UAV-slots re-evaluated, %.0f violations, max(l_u - start) = %.3g s, %.0f flagged slots skipped",
              static_cast<double>(checked), static_cast<double>(bad), worst, static_cast<double>(flagged))};
}

// ---------------------------------------------------------------------------
// 9. Storage fuzzing

Verdict criterion9() {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  long steps = 0;
  long bad = 0;
  for (int seq = 0; seq < 10000; ++seq) {
    const double capacity = unit(rng) < 0.05 ? 0.0 : 1e6 + 2e10 * unit(rng);
    UavStorage s{capacity, capacity * unit(rng)};
    const double slot = 0.1 + 20.0 * unit(rng);
    const int len = 1 + static_cast<int>(30.0 * unit(rng));
    for (int t = 0; t < len; ++t) {
      const double start = unit(rng) < 0.1 ? (unit(rng) < 0.5 ? 0.0 : slot) : slot * unit(rng);
      const double collect = unit(rng) < 0.05 ? 0.0 : 1e9 * unit(rng);
      const double uplink = unit(rng) < 0.05 ? 0.0 : 1e9 * unit(rng);
      const DtStep step = dt_collection_step(s, start, collect, uplink, slot);
      ++steps;
      const bool ok = step.next.remaining_bits >= 0.0 && step.next.remaining_bits <= capacity &&
                      step.uplinked_bits <= step.uplink_bound_bits &&
                      step.uplink_bound_bits <= step.collected_bits + s.stored_bits() + 1e-6 &&
                      step.collected_bits <= s.remaining_bits + 1e-6;
      if (!ok) ++bad;
      s = step.next;
    }
  }
  // Whole runs with random storage settings through every scheme.
  long run_slots = 0;
  for (int k = 0; k < 40; ++k) {
    ScenarioConfig cfg;
    cfg.num_uavs = 2;
    cfg.storage_capacity_bits = 1e8 + 2e10 * unit(rng);
    cfg.storage_remaining_bits = cfg.storage_capacity_bits * unit(rng);
    cfg.algorithm = static_cast<Algorithm>(k % 4);
    cfg.ga.generations = 10;
    const ExperimentResult r = run_horizon(cfg, static_cast<std::uint64_t>(k + 1));
    for (const SlotMetrics& m : r.slots) {
      ++run_slots;
      for (double rem : m.remaining_bits) {
        if (rem < 0.0 || rem > cfg.storage_capacity_bits) ++bad;
      }
    }
  }
  return {bad == 0, fmt("%.0f storage steps in 10000 sequences plus %.0f simulated slots, %.0f violations",
                        static_cast<double>(steps), static_cast<double>(run_slots), static_cast<double>(bad))};
}

}  // namespace

int main() {
  struct Item {
    int id;
    std::function<Verdict()> run;
  };
  // 3 and 4 inspect the runs produced by 5-8, so they go last.
  const std::vector<Item> order{{1, criterion1}, {2, criterion2}, {5, criterion5}, {6, criterion6},
                                {7, criterion7}, {8, criterion8}, {3, criterion3}, {4, criterion4},
                                {9, criterion9}};
  std::vector<std::pair<int, Verdict>> results;
  for (const Item& it : order) {
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = it.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    v.detail += fmt(" [%.1f s]", since(t0));
    results.emplace_back(it.id, v);
  }
  std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  int failed = 0;
  for (const auto& [id, v] : results) {
    std::printf("criterion %d: %s - %s\n", id, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    if (!v.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  return failed == 0 ? 0 : 1;
}
