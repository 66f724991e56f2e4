#include "csamn/horizon.hpp"

#include <chrono>

#include "csamn/baselines.hpp"

namespace csamn {

SlotContext slot_context(const ScenarioConfig& cfg, const NetworkState& state, int t,
                         const std::vector<UavStorage>& storage) {
  SlotContext ctx = make_context(cfg);
  const auto& draws = state.slots.at(static_cast<std::size_t>(t));
  for (std::size_t u = 0; u < draws.size(); ++u) {
    const UavLinkState ls = link_state(cfg, state.placement.uavs[u], state.placement.devices[u], draws[u]);
    ctx.uavs.push_back({ls.total_ds_bits, ls.offload_time_s, ls.collect_rate_bps, storage.at(u)});
  }
  return ctx;
}

SlotSolution solve_slot(const ScenarioConfig& cfg, const SlotContext& ctx, std::uint64_t seed, int t) {
  switch (cfg.algorithm) {
    case Algorithm::kJcorm: return solve_slot_jcorm(ctx, cfg.tol);
    case Algorithm::kAtsm: return solve_slot_atsm(ctx, cfg.tol);
    case Algorithm::kGa: return solve_slot_ga(ctx, cfg.ga, mix_seed(seed ^ 0x6761ULL, static_cast<std::uint64_t>(t)));
    case Algorithm::kNoOffload: return solve_slot_no_offload(ctx);
  }
  throw ConfigError("unknown algorithm");
}

ExperimentResult run_horizon(const ScenarioConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentResult res;
  res.algorithm = cfg.algorithm;
  res.seed = seed;

  const NetworkState state = generate_scenario(cfg, seed);
  std::vector<UavStorage> storage(static_cast<std::size_t>(cfg.num_uavs),
                                  UavStorage{cfg.storage_capacity_bits, cfg.storage_remaining_bits});
  double delay_sum = 0.0;
  long delay_count = 0;

  for (int t = 0; t < cfg.num_slots; ++t) {
    const SlotContext ctx = slot_context(cfg, state, t, storage);
    SlotSolution sol = solve_slot(cfg, ctx, seed, t);

    SlotMetrics m;
    m.slot = t;
    m.flagged = sol.flagged;
    m.notes = std::move(sol.notes);
    m.iterations = sol.trace.iterations;
    double slot_delay = 0.0;
    for (std::size_t u = 0; u < sol.evals.size(); ++u) {
      const UavEval& e = sol.evals[u];
      m.data_bits += e.data_bits;
      m.energy += e.energy;
      slot_delay += e.deadline_s;
      storage[u] = e.dt.next;
      m.remaining_bits.push_back(e.dt.next.remaining_bits);
    }
    m.utility = m.data_bits - cfg.weight_omega * m.energy.total();
    m.ds_delay_s = sol.evals.empty() ? 0.0 : slot_delay / static_cast<double>(sol.evals.size());
    m.decisions = std::move(sol.decisions);
    m.trace = std::move(sol.trace);

    res.utility += m.utility;
    res.data_bits += m.data_bits;
    res.energy += m.energy;
    res.iterations += m.iterations;
    delay_sum += slot_delay;
    delay_count += static_cast<long>(m.decisions.size());
    if (m.flagged) ++res.flagged_slots;
    res.slots.push_back(std::move(m));
  }
  res.avg_ds_delay_s = delay_count > 0 ? delay_sum / static_cast<double>(delay_count) : 0.0;
  res.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace csamn
