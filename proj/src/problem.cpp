#include "csamn/problem.hpp"

#include <algorithm>
#include <limits>

namespace csamn {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double SlotContext::leo_rate(double power_w) const {
  return uav_leo_rate(std::max(power_w, 0.0), leo_gain, link, fdma_users);
}

SlotContext make_context(const ScenarioConfig& cfg) {
  SlotContext ctx;
  ctx.slot_len_s = cfg.slot_length_s;
  ctx.omega = cfg.weight_omega;
  ctx.prop_delay_s = propagation_delay(cfg.geometry);
  ctx.leo_gain = uav_leo_gain(uav_sat_distance(cfg.geometry), cfg.link);
  ctx.fdma_users = cfg.num_uavs;
  ctx.link = cfg.link;
  ctx.compute = cfg.compute;
  ctx.mode = cfg.mode;
  return ctx;
}

UavEval evaluate_uav(const SlotContext& ctx, std::size_t u, const UavDecision& d) {
  const UavSlotInput& in = ctx.uavs.at(u);
  const ComputeParams& c = ctx.compute;
  const double gamma = d.offload_ratio;
  const double offloaded = gamma * in.ds_bits;
  const double rate = ctx.leo_rate(d.power_w);

  UavEval e;
  e.timing.offload_s = in.offload_time_s;
  e.timing.local_s = c.cycles_per_bit * (1.0 - gamma) * in.ds_bits / c.uav_cpu_hz;
  double half_sat = 0.0;  // satellite part of the averaged bound
  if (offloaded > 0.0) {
    if (rate > 0.0 && d.leo_cpu_hz > 0.0) {
      e.timing = ds_completion_time(d, {in.ds_bits, in.offload_time_s}, rate, c, ctx.prop_delay_s);
      half_sat = gamma * (1.0 / rate + c.cycles_per_bit / d.leo_cpu_hz - c.cycles_per_bit / c.uav_cpu_hz);
    } else {
      e.well_defined = false;
      e.timing.uplink_s = rate > 0.0 ? offloaded / rate : kInf;
      e.timing.leo_compute_s = d.leo_cpu_hz > 0.0 ? c.cycles_per_bit * offloaded / d.leo_cpu_hz : kInf;
      e.timing.propagation_s = 2.0 * ctx.prop_delay_s;
      half_sat = kInf;
    }
  }
  e.deadline_s = e.timing.total();
  e.relaxed_bound_s = in.offload_time_s + ctx.prop_delay_s +
                      0.5 * in.ds_bits * (c.cycles_per_bit / c.uav_cpu_hz + half_sat);
  if (in.ds_bits <= 0.0) e.relaxed_bound_s = in.offload_time_s + ctx.prop_delay_s;

  const double start = std::clamp(d.dt_start_s, 0.0, ctx.slot_len_s);
  e.dt = dt_collection_step(in.storage, start, in.collect_rate_bps, ctx.leo_rate_tol(), ctx.slot_len_s);
  e.data_bits = e.dt.uplinked_bits;

  // A missing uplink rate leaves the DS uplink energy unbounded; charge the
  // whole slot instead so penalty-based searches still see a finite value.
  const double uplink_s = offloaded > 0.0 ? (rate > 0.0 ? offloaded / rate : ctx.slot_len_s) : 0.0;
  const double per_cycle = c.cycles_per_bit * c.switch_cap;
  e.energy.uav_comm_j = d.power_w * uplink_s + ctx.link.dt_power_w * (ctx.slot_len_s - start);
  e.energy.uav_comp_j = per_cycle * (1.0 - gamma) * c.uav_cpu_hz * c.uav_cpu_hz * in.ds_bits;
  e.energy.leo_comp_j = per_cycle * gamma * d.leo_cpu_hz * d.leo_cpu_hz * in.ds_bits;
  e.objective = e.data_bits - ctx.omega * e.energy.total();
  return e;
}

double slot_objective(const SlotContext& ctx, std::span<const UavDecision> ds) {
  double sum = 0.0;
  for (std::size_t u = 0; u < ds.size(); ++u) sum += evaluate_uav(ctx, u, ds[u]).objective;
  return sum;
}

double normalized_objective(const UavEval& e, double omega) {
  return e.data_bits / 1e6 - omega * e.energy.total();
}

Violation uav_violation(const SlotContext& ctx, std::size_t u, const UavDecision& d,
                        const UavEval& e, DeadlineMode mode) {
  const UavSlotInput& in = ctx.uavs.at(u);
  auto outside = [](double x, double lo, double hi) {
    return std::max(0.0, lo - x) + std::max(0.0, x - hi);
  };
  Violation v;
  v.box = outside(d.power_w, 0.0, ctx.link.max_power_w) / std::max(ctx.link.max_power_w, 1e-300) +
          outside(d.leo_cpu_hz, 0.0, ctx.compute.leo_cpu_hz) / ctx.compute.leo_cpu_hz +
          outside(d.dt_start_s, 0.0, ctx.slot_len_s) / ctx.slot_len_s +
          outside(d.offload_ratio, 0.0, 1.0);
  const double bound = mode == DeadlineMode::kStrict ? e.deadline_s : e.relaxed_bound_s;
  v.deadline_s = std::max(0.0, bound - d.dt_start_s);
  v.storage_bits = std::max(0.0, in.collect_rate_bps * d.dt_start_s - in.storage.remaining_bits);
  return v;
}

bool uav_feasible(const SlotContext& ctx, std::size_t u, const UavDecision& d, const UavEval& e,
                  DeadlineMode mode, double time_tol) {
  if (!e.well_defined) return false;
  const Violation v = uav_violation(ctx, u, d, e, mode);
  const double storage_tol = 1e-12 * std::max(1.0, ctx.uavs[u].storage.capacity_bits);
  return v.box == 0.0 && v.deadline_s <= time_tol && v.storage_bits <= storage_tol;
}

double total_leo_cpu(std::span<const UavDecision> ds) {
  double s = 0.0;
  for (const auto& d : ds) s += d.leo_cpu_hz;
  return s;
}

double local_only_deadline(const SlotContext& ctx, std::size_t u) {
  const UavSlotInput& in = ctx.uavs.at(u);
  return in.offload_time_s + ctx.compute.cycles_per_bit * in.ds_bits / ctx.compute.uav_cpu_hz;
}

double deadline_lower_bound(const SlotContext& ctx, std::size_t u, const UavDecision& d,
                            DeadlineMode mode) {
  const UavEval e = evaluate_uav(ctx, u, d);
  return mode == DeadlineMode::kStrict ? e.deadline_s : e.relaxed_bound_s;
}

double start_time_upper_bound(const SlotContext& ctx, std::size_t u) {
  const UavSlotInput& in = ctx.uavs.at(u);
  if (in.collect_rate_bps <= 0.0) return ctx.slot_len_s;
  return std::min(ctx.slot_len_s, std::max(in.storage.remaining_bits, 0.0) / in.collect_rate_bps);
}

}  // namespace csamn
