// Multi-slot simulation: solve each slot with the selected scheme and carry
// UAV storage forward.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csamn/config.hpp"
#include "csamn/problem.hpp"
#include "csamn/scenario.hpp"
#include "csamn/solver.hpp"

namespace csamn {

struct SlotMetrics {
  int slot = 0;
  double utility = 0.0;    // bit - omega J
  double data_bits = 0.0;  // DT bits delivered to the satellite
  EnergyBreakdown energy;
  double ds_delay_s = 0.0; // mean DS completion time over UAVs
  bool flagged = false;
  int iterations = 0;
  std::vector<std::string> notes;
  std::vector<UavDecision> decisions;
  std::vector<double> remaining_bits;  // storage after the slot
  SlotSolveTrace trace;
};

struct ExperimentResult {
  Algorithm algorithm = Algorithm::kJcorm;
  std::uint64_t seed = 0;
  std::vector<SlotMetrics> slots;
  double utility = 0.0;
  double data_bits = 0.0;
  EnergyBreakdown energy;
  double avg_ds_delay_s = 0.0;
  int flagged_slots = 0;
  int iterations = 0;
  double wall_clock_s = 0.0;

  bool any_flagged() const { return flagged_slots > 0; }
};

/// Slot problem for slot `t` given the storage carried into it.
SlotContext slot_context(const ScenarioConfig& cfg, const NetworkState& state, int t,
                         const std::vector<UavStorage>& storage);

/// Dispatch to the configured scheme. `seed` feeds the GA only.
SlotSolution solve_slot(const ScenarioConfig& cfg, const SlotContext& ctx, std::uint64_t seed, int t);

ExperimentResult run_horizon(const ScenarioConfig& cfg, std::uint64_t seed);

}  // namespace csamn
