#include "csamn/oracle.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>

namespace csamn {

void GridSpec::validate() const {
  if (points < 2) throw std::invalid_argument("grid needs at least two points per axis");
  if (levels < 1) throw std::invalid_argument("grid needs at least one level");
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double node(double lo, double hi, int i, int n) {
  if (i == n - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

struct Interval {
  double lo;
  double hi;
};

// Re-grid one cell either side of `centre`, inside the original box.
Interval zoom(const Interval& cur, const Interval& box, double centre, int n) {
  const double step = (cur.hi - cur.lo) / static_cast<double>(n - 1);
  return {std::max(box.lo, centre - step), std::min(box.hi, centre + step)};
}

using Setter = std::function<void(UavDecision&, double)>;
using ExtraCheck = std::function<bool(const UavDecision&)>;

GridResult grid_1d(const SlotContext& ctx, std::size_t u, const UavDecision& fixed, const Setter& set,
                   Interval box, const GridSpec& g, const ExtraCheck& extra) {
  g.validate();
  GridResult res;
  Interval cur = box;
  double best_x = 0.0;
  for (int level = 0; level < g.levels; ++level) {
    double level_obj = kNegInf;
    std::optional<double> level_x;
    for (int i = 0; i < g.points; ++i) {
      const double x = node(cur.lo, cur.hi, i, g.points);
      UavDecision d = fixed;
      set(d, x);
      const UavEval e = evaluate_uav(ctx, u, d);
      ++res.evaluations;
      if (!uav_feasible(ctx, u, d, e, DeadlineMode::kStrict, 0.0)) continue;
      if (extra && !extra(d)) continue;
      if (e.objective > level_obj) {
        level_obj = e.objective;
        level_x = x;
      }
    }
    if (!level_x) {
      if (level == 0) return res;
      break;
    }
    if (!res.feasible || level_obj > res.objective) {
      res.feasible = true;
      res.objective = level_obj;
      best_x = *level_x;
    }
    cur = zoom(cur, box, best_x, g.points);
  }
  res.best = fixed;
  set(res.best, best_x);
  res.normalized_objective = normalized_objective(evaluate_uav(ctx, u, res.best), ctx.omega);
  return res;
}

}  // namespace

GridResult grid_sp1(const SlotContext& ctx, std::size_t u, const UavDecision& fixed, const GridSpec& g) {
  return grid_1d(ctx, u, fixed, [](UavDecision& d, double x) { d.power_w = x; },
                 {0.0, ctx.link.max_power_w}, g, nullptr);
}

GridResult grid_sp2(const SlotContext& ctx, std::size_t u, std::span<const UavDecision> fixed,
                    const GridSpec& g) {
  const double others = total_leo_cpu(fixed) - fixed[u].leo_cpu_hz;
  const double cap = ctx.compute.leo_cpu_hz;
  return grid_1d(ctx, u, fixed[u], [](UavDecision& d, double x) { d.leo_cpu_hz = x; }, {0.0, cap}, g,
                 [others, cap](const UavDecision& d) { return others + d.leo_cpu_hz <= cap; });
}

GridResult grid_sp3(const SlotContext& ctx, std::size_t u, const UavDecision& fixed, const GridSpec& g) {
  return grid_1d(ctx, u, fixed, [](UavDecision& d, double x) { d.dt_start_s = x; },
                 {0.0, ctx.slot_len_s}, g, nullptr);
}

GridResult grid_sp4(const SlotContext& ctx, std::size_t u, const UavDecision& fixed, const GridSpec& g) {
  return grid_1d(ctx, u, fixed, [](UavDecision& d, double x) { d.offload_ratio = x; }, {0.0, 1.0}, g,
                 nullptr);
}

namespace {

struct Cell {
  bool feasible = false;
  double objective = kNegInf;
  UavDecision d;
};

using Box4 = std::array<Interval, 4>;  // power, cpu, start, ratio

UavDecision make_decision(const Box4& b, const std::array<int, 4>& idx, int n) {
  return {node(b[0].lo, b[0].hi, idx[0], n), node(b[1].lo, b[1].hi, idx[1], n),
          node(b[2].lo, b[2].hi, idx[2], n), node(b[3].lo, b[3].hi, idx[3], n)};
}

// Best (power, start, ratio) for every CPU-share node of one UAV.
std::vector<Cell> cpu_table(const SlotContext& ctx, std::size_t u, const Box4& b, int n, long& evals) {
  std::vector<Cell> table(static_cast<std::size_t>(n));
  for (int fi = 0; fi < n; ++fi) {
    Cell& cell = table[static_cast<std::size_t>(fi)];
    for (int pi = 0; pi < n; ++pi) {
      for (int si = 0; si < n; ++si) {
        for (int gi = 0; gi < n; ++gi) {
          const UavDecision d = make_decision(b, {pi, fi, si, gi}, n);
          const UavEval e = evaluate_uav(ctx, u, d);
          ++evals;
          if (!uav_feasible(ctx, u, d, e, DeadlineMode::kStrict, 0.0)) continue;
          if (e.objective > cell.objective) {
            cell.feasible = true;
            cell.objective = e.objective;
            cell.d = d;
          }
        }
      }
    }
  }
  return table;
}

}  // namespace

JointResult grid_joint(const SlotContext& ctx, const GridSpec& g) {
  g.validate();
  const std::size_t n_uav = ctx.size();
  if (n_uav < 1 || n_uav > 2) throw std::invalid_argument("joint grid supports one or two UAVs");
  if (g.points > 25) throw std::invalid_argument("joint grid supports at most 25 points per axis");

  const double cap = ctx.compute.leo_cpu_hz;
  const Box4 full{Interval{0.0, ctx.link.max_power_w}, Interval{0.0, cap}, Interval{0.0, ctx.slot_len_s},
                  Interval{0.0, 1.0}};
  std::vector<Box4> boxes(n_uav, full);
  JointResult res;

  for (int level = 0; level < g.levels; ++level) {
    std::vector<std::vector<Cell>> tables;
    for (std::size_t u = 0; u < n_uav; ++u) tables.push_back(cpu_table(ctx, u, boxes[u], g.points, res.evaluations));

    double level_obj = kNegInf;
    std::vector<UavDecision> level_best;
    if (n_uav == 1) {
      for (const Cell& c : tables[0]) {
        if (c.feasible && c.objective > level_obj) {
          level_obj = c.objective;
          level_best = {c.d};
        }
      }
    } else {
      for (const Cell& a : tables[0]) {
        if (!a.feasible) continue;
        for (const Cell& b : tables[1]) {
          if (!b.feasible || a.d.leo_cpu_hz + b.d.leo_cpu_hz > cap) continue;
          if (a.objective + b.objective > level_obj) {
            level_obj = a.objective + b.objective;
            level_best = {a.d, b.d};
          }
        }
      }
    }
    if (level_best.empty()) {
      if (level == 0) return res;
      break;
    }
    if (!res.feasible || level_obj > res.objective) {
      res.feasible = true;
      res.objective = level_obj;
      res.best = level_best;
    }
    for (std::size_t u = 0; u < n_uav; ++u) {
      const UavDecision& c = res.best[u];
      const std::array<double, 4> centre{c.power_w, c.leo_cpu_hz, c.dt_start_s, c.offload_ratio};
      for (int k = 0; k < 4; ++k) boxes[u][k] = zoom(boxes[u][k], full[k], centre[k], g.points);
    }
  }
  res.normalized_objective = 0.0;
  for (std::size_t u = 0; u < n_uav; ++u) {
    res.normalized_objective += normalized_objective(evaluate_uav(ctx, u, res.best[u]), ctx.omega);
  }
  return res;
}

}  // namespace csamn
