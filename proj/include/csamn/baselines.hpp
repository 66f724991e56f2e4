// Comparison schemes solved on the same slot problem as the joint optimiser.
#pragma once

#include <cstdint>

#include "csamn/config.hpp"
#include "csamn/problem.hpp"
#include "csamn/solver.hpp"

namespace csamn {

/// Even split: DT start fixed at half the slot, the other blocks optimised
/// by the power, CPU-share and ratio solvers.
SlotSolution solve_slot_atsm(const SlotContext& ctx, const ToleranceConfig& tol);

/// Genetic algorithm over the per-UAV boxes with a normalised penalty on
/// deadline, storage and CPU-budget violations.
SlotSolution solve_slot_ga(const SlotContext& ctx, const GaConfig& ga, std::uint64_t seed);

/// Penalised GA fitness of a full slot decision.
double ga_fitness(const SlotContext& ctx, std::span<const UavDecision> ds, double penalty_weight);

/// Everything computed on the UAV; only the DT start time is optimised.
SlotSolution solve_slot_no_offload(const SlotContext& ctx);

}  // namespace csamn
