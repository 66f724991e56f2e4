#include "csamn/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace csamn {

SlotSolution solve_slot_atsm(const SlotContext& ctx, const ToleranceConfig& tol) {
  const std::size_t n = ctx.size();
  const double half = 0.5 * ctx.slot_len_s;
  std::vector<UavDecision> init(n);
  for (std::size_t u = 0; u < n; ++u) {
    UavDecision& d = init[u];
    d.dt_start_s = half;
    if (ctx.uavs[u].ds_bits <= 0.0) continue;
    d.power_w = ctx.link.max_power_w;
    d.leo_cpu_hz = ctx.compute.leo_cpu_hz / static_cast<double>(n);
    d.offload_ratio = balanced_ratio(ctx, u, d.power_w, d.leo_cpu_hz);
    const Sp4Result range = solve_ratio(ctx, u, d);
    if (!range.empty) d.offload_ratio = std::clamp(d.offload_ratio, range.gamma_min, range.gamma_max);
    if (d.offload_ratio <= 0.0) {
      d.power_w = 0.0;
      d.leo_cpu_hz = 0.0;
    }
  }

  // The start time is pinned, so candidates get no deadline slack.
  AlternatingState st(ctx, std::move(init), DeadlineMode::kStrict);
  st.time_tol = 0.0;
  SlotSolveTrace trace;
  trace.objective.push_back(st.objective());
  for (int i = 1; i <= tol.i_max; ++i) {
    trace.iterations = i;
    bool changed = false;
    for (std::size_t u = 0; u < n; ++u) {
      UavDecision cand = st.d[u];
      const Sp1Result r = solve_power(ctx, u, cand, tol);
      trace.sp1_outer += r.outer_iters;
      trace.sp1_inner += r.inner_iters;
      cand.power_w = r.power_w;
      changed |= st.try_accept(u, cand);
    }
    const Sp2SlotResult sp2 = solve_compute_slot(ctx, st.d);
    if (!sp2.scaled) {
      for (std::size_t u = 0; u < n; ++u) {
        UavDecision cand = st.d[u];
        cand.leo_cpu_hz = sp2.leo_cpu_hz[u];
        const double others = total_leo_cpu(st.d) - st.d[u].leo_cpu_hz;
        if (others + cand.leo_cpu_hz <= ctx.compute.leo_cpu_hz * (1.0 + 1e-12)) changed |= st.try_accept(u, cand);
      }
    }
    for (std::size_t u = 0; u < n; ++u) {
      UavDecision cand = st.d[u];
      cand.offload_ratio = solve_ratio(ctx, u, cand).offload_ratio;
      changed |= st.try_accept(u, cand);
    }
    const double obj = st.objective();
    const double prev = trace.objective.back();
    trace.objective.push_back(obj);
    if (!changed || std::abs(obj - prev) <= tol.tau_outer) {
      trace.converged = true;
      break;
    }
  }
  return finalize_slot(ctx, std::move(st.d), {}, std::move(trace));
}

SlotSolution solve_slot_no_offload(const SlotContext& ctx) {
  std::vector<UavDecision> ds(ctx.size());
  for (std::size_t u = 0; u < ds.size(); ++u) {
    ds[u].dt_start_s = solve_start_time(ctx, u, ds[u], DeadlineMode::kStrict).dt_start_s;
  }
  SlotSolveTrace trace;
  trace.iterations = 1;
  trace.converged = true;
  trace.objective.push_back(slot_objective(ctx, ds));
  return finalize_slot(ctx, std::move(ds), {}, std::move(trace));
}

namespace {

struct Box {
  double lo;
  double hi;
};

std::vector<Box> ga_boxes(const SlotContext& ctx) {
  std::vector<Box> b;
  for (std::size_t u = 0; u < ctx.size(); ++u) {
    b.push_back({0.0, ctx.link.max_power_w});
    b.push_back({0.0, ctx.compute.leo_cpu_hz});
    b.push_back({0.0, ctx.slot_len_s});
    b.push_back({0.0, 1.0});
  }
  return b;
}

std::vector<UavDecision> decode(const std::vector<double>& x) {
  std::vector<UavDecision> ds(x.size() / 4);
  for (std::size_t u = 0; u < ds.size(); ++u) {
    ds[u] = {x[4 * u], x[4 * u + 1], x[4 * u + 2], x[4 * u + 3]};
  }
  return ds;
}

}  // namespace

double ga_fitness(const SlotContext& ctx, std::span<const UavDecision> ds, double penalty_weight) {
  double objective = 0.0;
  double violation = 0.0;
  double scale = 0.0;
  const double r_tol = ctx.leo_rate_tol();
  for (std::size_t u = 0; u < ds.size(); ++u) {
    const UavEval e = evaluate_uav(ctx, u, ds[u]);
    const Violation v = uav_violation(ctx, u, ds[u], e, DeadlineMode::kStrict);
    objective += e.objective;
    const double cap = std::max(ctx.uavs[u].storage.capacity_bits, 1.0);
    violation += std::min(v.deadline_s / ctx.slot_len_s, 10.0) + std::min(v.storage_bits / cap, 10.0) +
                 std::min(v.box, 10.0);
    scale += r_tol * ctx.slot_len_s;
  }
  const double excess = std::max(0.0, total_leo_cpu(ds) - ctx.compute.leo_cpu_hz);
  violation += std::min(excess / ctx.compute.leo_cpu_hz, 10.0);
  return objective - penalty_weight * std::max(scale, 1.0) * violation;
}

SlotSolution solve_slot_ga(const SlotContext& ctx, const GaConfig& ga, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::vector<Box> boxes = ga_boxes(ctx);
  const std::size_t genes = boxes.size();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  struct Individual {
    std::vector<double> x;
    double fitness;
  };
  auto score = [&](std::vector<double> x) {
    const double f = ga_fitness(ctx, decode(x), ga.penalty_weight);
    return Individual{std::move(x), f};
  };
  auto better = [](const Individual& a, const Individual& b) { return a.fitness > b.fitness; };

  std::vector<Individual> pop;
  pop.reserve(static_cast<std::size_t>(ga.population));
  for (int i = 0; i < ga.population; ++i) {
    std::vector<double> x(genes);
    for (std::size_t g = 0; g < genes; ++g) x[g] = boxes[g].lo + unit(rng) * (boxes[g].hi - boxes[g].lo);
    pop.push_back(score(std::move(x)));
  }

  SlotSolveTrace trace;
  auto best_of = [&]() { return *std::min_element(pop.begin(), pop.end(), better); };
  trace.objective.push_back(best_of().fitness);

  std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
  auto tournament = [&]() -> const Individual& {
    const Individual& a = pop[pick(rng)];
    const Individual& b = pop[pick(rng)];
    return better(b, a) ? b : a;
  };

  for (int gen = 0; gen < ga.generations; ++gen) {
    std::stable_sort(pop.begin(), pop.end(), better);
    const auto elite = std::min(static_cast<std::size_t>(ga.elitism), pop.size());
    std::vector<Individual> next(pop.begin(), pop.begin() + static_cast<std::ptrdiff_t>(elite));
    while (next.size() < pop.size()) {
      const Individual& a = tournament();
      const Individual& b = tournament();
      std::vector<double> child = a.x;
      if (unit(rng) < ga.crossover_rate) {
        for (std::size_t g = 0; g < genes; ++g) {
          if (unit(rng) < 0.5) child[g] = b.x[g];
        }
      }
      for (std::size_t g = 0; g < genes; ++g) {
        if (unit(rng) < ga.mutation_rate) {
          const double width = boxes[g].hi - boxes[g].lo;
          child[g] = std::clamp(child[g] + normal(rng) * ga.mutation_sigma * width, boxes[g].lo, boxes[g].hi);
        }
      }
      next.push_back(score(std::move(child)));
    }
    pop = std::move(next);
    trace.objective.push_back(best_of().fitness);
    trace.iterations = gen + 1;
  }
  trace.converged = true;
  return finalize_slot(ctx, decode(best_of().x), {}, std::move(trace));
}

}  // namespace csamn
