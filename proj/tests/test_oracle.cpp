#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "csamn/horizon.hpp"
#include "csamn/oracle.hpp"

using namespace csamn;

namespace {

SlotContext tiny(double ds_bits, double collect_bps, UavStorage storage = {12e9, 8e9}) {
  ScenarioConfig cfg;
  SlotContext ctx = make_context(cfg);
  ctx.fdma_users = 1;
  ctx.uavs.push_back({ds_bits, 0.1, collect_bps, storage});
  return ctx;
}

}  // namespace

TEST(GridSp1, NothingOffloadedCostsNothing) {
  const SlotContext ctx = tiny(4e6, 5e7);
  const UavDecision d{0.3, 5e9, 5.0, 0.0};
  const GridResult g = grid_sp1(ctx, 0, d, GridSpec{101, 1});
  ASSERT_TRUE(g.feasible);
  EXPECT_EQ(g.best.power_w, 0.0);
  const UavEval e = evaluate_uav(ctx, 0, g.best);
  EXPECT_EQ(e.energy.uav_comm_j, ctx.link.dt_power_w * (ctx.slot_len_s - d.dt_start_s));
}

TEST(GridSp1, NoFeasiblePower) {
  const SlotContext ctx = tiny(4e6, 5e7);
  const GridResult g = grid_sp1(ctx, 0, {0.3, 5e9, 0.05, 0.5}, GridSpec{101, 2});
  EXPECT_FALSE(g.feasible);
  EXPECT_EQ(g.evaluations, 101);
}

TEST(GridSp2, RespectsOtherUavsShare) {
  SlotContext ctx = tiny(4e6, 5e7);
  ctx.uavs.push_back(ctx.uavs.front());
  const std::vector<UavDecision> fixed{{1.0, 0.0, 2.0, 0.8}, {1.0, 9e9, 2.0, 0.8}};
  const GridResult g = grid_sp2(ctx, 0, fixed, GridSpec{1001, 1});
  if (g.feasible) EXPECT_LE(g.best.leo_cpu_hz + 9e9, ctx.compute.leo_cpu_hz);
}

TEST(GridSpec, Validation) {
  const SlotContext ctx = tiny(4e6, 5e7);
  EXPECT_THROW(grid_sp3(ctx, 0, {}, GridSpec{1, 1}), std::invalid_argument);
  EXPECT_THROW(grid_sp3(ctx, 0, {}, GridSpec{10, 0}), std::invalid_argument);
}

TEST(GridJoint, ZeroLoadAndNoCollection) {
  SlotContext ctx = tiny(0.0, 0.0, {12e9, 12e9});
  ctx.omega = 0.0;
  const JointResult j = grid_joint(ctx, GridSpec{5, 1});
  ASSERT_TRUE(j.feasible);
  EXPECT_EQ(j.objective, 0.0);
}

TEST(GridJoint, SizeLimits) {
  SlotContext ctx = tiny(1e6, 5e7);
  EXPECT_THROW(grid_joint(ctx, GridSpec{26, 1}), std::invalid_argument);
  ctx.uavs.resize(3, ctx.uavs.front());
  EXPECT_THROW(grid_joint(ctx, GridSpec{5, 1}), std::invalid_argument);
}

TEST(GridJoint, Deterministic) {
  ScenarioConfig cfg;
  cfg.num_uavs = 2;
  const NetworkState st = generate_scenario(cfg, 3);
  const std::vector<UavStorage> storage(2, UavStorage{cfg.storage_capacity_bits, cfg.storage_remaining_bits});
  const SlotContext ctx = slot_context(cfg, st, 0, storage);
  const JointResult a = grid_joint(ctx, GridSpec{9, 2});
  const JointResult b = grid_joint(ctx, GridSpec{9, 2});
  ASSERT_TRUE(a.feasible);
  EXPECT_EQ(a.objective, b.objective);
  EXPECT_EQ(a.best[1].dt_start_s, b.best[1].dt_start_s);
  EXPECT_LE(total_leo_cpu(a.best), ctx.compute.leo_cpu_hz);
}

// Re-scan the same nodes in a random order with a lowest-index tie-break;
// the optimum must not depend on the visiting order.
TEST(GridJoint, ShuffledOrderGivesSameOptimum) {
  ScenarioConfig cfg;
  cfg.num_uavs = 1;
  const NetworkState st = generate_scenario(cfg, 5);
  const std::vector<UavStorage> storage(1, UavStorage{cfg.storage_capacity_bits, cfg.storage_remaining_bits});
  const SlotContext ctx = slot_context(cfg, st, 0, storage);
  const int n = 9;
  const JointResult ref = grid_joint(ctx, GridSpec{n, 1});
  ASSERT_TRUE(ref.feasible);

  auto node = [n](double hi, int i) { return i == n - 1 ? hi : hi * i / (n - 1); };
  std::vector<int> order(n * n * n * n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(17);
  std::shuffle(order.begin(), order.end(), rng);
  double best = -1e300;
  int best_idx = -1;
  for (int idx : order) {
    const UavDecision d{node(ctx.link.max_power_w, idx / (n * n * n)), node(ctx.compute.leo_cpu_hz, idx / (n * n) % n),
                        node(ctx.slot_len_s, idx / n % n), node(1.0, idx % n)};
    const UavEval e = evaluate_uav(ctx, 0, d);
    if (!uav_feasible(ctx, 0, d, e, DeadlineMode::kStrict, 0.0)) continue;
    if (e.objective > best || (e.objective == best && idx < best_idx)) {
      best = e.objective;
      best_idx = idx;
    }
  }
  EXPECT_EQ(best, ref.objective);
}

TEST(Grid1d, ZoomDoesNotLoseTheCoarseOptimum) {
  const SlotContext ctx = tiny(4e6, 5e7);
  const UavDecision d{1.0, 5e9, 3.0, 0.5};
  const GridResult coarse = grid_sp4(ctx, 0, d, GridSpec{51, 1});
  const GridResult fine = grid_sp4(ctx, 0, d, GridSpec{51, 3});
  ASSERT_TRUE(coarse.feasible);
  EXPECT_GE(fine.objective, coarse.objective);
  EXPECT_EQ(fine.evaluations, 153);
}
