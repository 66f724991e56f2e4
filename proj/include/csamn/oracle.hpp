// Brute-force reference solvers. They share only the problem evaluators
// with the rest of the library and never call the block solvers.
#pragma once

#include <cstddef>
#include <vector>

#include "csamn/problem.hpp"

namespace csamn {

struct GridSpec {
  int points = 10001;  // per axis and per level, >= 2
  int levels = 1;      // 1 = plain grid; each extra level re-grids +-1 cell around the best point

  void validate() const;
};

struct GridResult {
  bool feasible = false;
  UavDecision best;
  double objective = 0.0;             // native units (bit - omega J)
  double normalized_objective = 0.0;  // data term in Mbit
  long evaluations = 0;
};

/// One-variable searches over a single UAV's block with the other blocks
/// fixed. Feasibility is the strict constraint set; the CPU share search
/// also enforces the slot budget given the other UAVs' shares.
GridResult grid_sp1(const SlotContext& ctx, std::size_t u, const UavDecision& fixed, const GridSpec& g);
GridResult grid_sp2(const SlotContext& ctx, std::size_t u, std::span<const UavDecision> fixed,
                    const GridSpec& g);
GridResult grid_sp3(const SlotContext& ctx, std::size_t u, const UavDecision& fixed, const GridSpec& g);
GridResult grid_sp4(const SlotContext& ctx, std::size_t u, const UavDecision& fixed, const GridSpec& g);

struct JointResult {
  bool feasible = false;
  std::vector<UavDecision> best;
  double objective = 0.0;
  double normalized_objective = 0.0;
  long evaluations = 0;
};

/// Exhaustive 4-D search per UAV (at most two UAVs, at most 25 points per
/// axis) coupled through the satellite CPU budget.
JointResult grid_joint(const SlotContext& ctx, const GridSpec& g);

}  // namespace csamn
