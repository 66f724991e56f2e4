// Single-slot optimisation problem: the data each UAV brings into a slot,
// evaluation of a candidate decision, and the deadline and storage bounds
// shared by every solver.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "csamn/config.hpp"
#include "csamn/model.hpp"

namespace csamn {

struct UavSlotInput {
  double ds_bits = 0.0;           // aggregated DS load of the UAV
  double offload_time_s = 0.0;    // slowest DS device -> UAV transfer
  double collect_rate_bps = 0.0;  // summed DT device -> UAV rate
  UavStorage storage;
};

struct SlotContext {
  std::vector<UavSlotInput> uavs;
  double slot_len_s = 10.0;
  double omega = 10.0;
  double prop_delay_s = 0.0;   // one-way UAV -> satellite
  double leo_gain = 0.0;       // UAV -> satellite power gain
  int fdma_users = 1;          // UAVs sharing the satellite band
  SatLinkParams link;
  ComputeParams compute;
  DeadlineMode mode = DeadlineMode::kStrict;

  std::size_t size() const { return uavs.size(); }
  double leo_rate(double power_w) const;
  double leo_rate_tol() const { return leo_rate(link.dt_power_w); }
};

/// Build a context from scenario-level constants; the per-UAV inputs are
/// filled by the caller.
SlotContext make_context(const ScenarioConfig& cfg);

struct UavEval {
  DsTiming timing;
  double deadline_s = 0.0;      // l_u, +inf when offloading with no rate or CPU share
  double relaxed_bound_s = 0.0; // l_off + l_prop + Lambda1
  DtStep dt;
  EnergyBreakdown energy;
  double data_bits = 0.0;       // DT bits uplinked to the satellite
  double objective = 0.0;       // data_bits - omega * energy
  bool well_defined = true;     // false when gamma > 0 with f = 0 or R = 0
};

UavEval evaluate_uav(const SlotContext& ctx, std::size_t u, const UavDecision& d);

/// Sum of per-UAV objectives.
double slot_objective(const SlotContext& ctx, std::span<const UavDecision> ds);

/// Objective with the data term expressed in Mbit; used for reporting and
/// oracle comparisons.
double normalized_objective(const UavEval& e, double omega);

// Feasibility -----------------------------------------------------------

struct Violation {
  double box = 0.0;        // distance outside the variable boxes
  double deadline_s = 0.0; // positive part of l_u - dt_start (or relaxed bound)
  double storage_bits = 0.0;
  double total_compute_hz = 0.0; // positive part of sum f - F_LEO (slot level)
};

Violation uav_violation(const SlotContext& ctx, std::size_t u, const UavDecision& d,
                        const UavEval& e, DeadlineMode mode);

/// Feasibility of one UAV's decision with a time tolerance in seconds and
/// a relative storage tolerance.
bool uav_feasible(const SlotContext& ctx, std::size_t u, const UavDecision& d, const UavEval& e,
                  DeadlineMode mode, double time_tol = 1e-9);

double total_leo_cpu(std::span<const UavDecision> ds);

// Bounds -----------------------------------------------------------------

/// Completion time when everything is processed on the UAV.
double local_only_deadline(const SlotContext& ctx, std::size_t u);

/// Lower bound on the DT start time implied by the DS deadline, either the
/// exact max-form (strict) or the averaged relaxation.
double deadline_lower_bound(const SlotContext& ctx, std::size_t u, const UavDecision& d,
                            DeadlineMode mode);

/// Upper bound on the DT start time from the slot length and free storage.
double start_time_upper_bound(const SlotContext& ctx, std::size_t u);

}  // namespace csamn
