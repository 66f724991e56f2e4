// Block solvers for the four per-slot subproblems and the alternating loop
// that combines them.
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "csamn/config.hpp"
#include "csamn/problem.hpp"

namespace csamn {

// ---------------------------------------------------------------------------
// SP1: DS uplink power

struct Sp1Result {
  double power_w = 0.0;
  double eta = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  int outer_iters = 0;
  int inner_iters = 0;
  bool converged = false;
  bool infeasible = false;  // no power in [0, pmax] meets the uplink deadline
};

/// Time left for the satellite uplink once the other delay terms are paid.
double comm_budget(const SlotContext& ctx, std::size_t u, const UavDecision& d);

/// Smallest power whose rate clears gamma * D bits within the uplink budget.
/// +inf when the budget is not positive.
double min_feasible_power(const SlotContext& ctx, std::size_t u, const UavDecision& d);

/// Stationary point of the Lagrangian in p, projected onto p >= 0.
/// Rates are in Mbit/s and `a_coeff` is omega * offloaded Mbit.
double water_level_power(double eta, double lambda, double mu, double budget_s, double a_coeff,
                         double band_mbps, double noise_over_gain);

/// Dinkelbach outer loop with a projected-subgradient inner loop.
Sp1Result solve_power(const SlotContext& ctx, std::size_t u, const UavDecision& fixed,
                      const ToleranceConfig& tol);

// ---------------------------------------------------------------------------
// SP2: satellite CPU share

struct Sp2Result {
  double leo_cpu_hz = 0.0;
  bool clamped = false;     // unclamped value exceeded F_LEO
  bool infeasible = false;  // no compute time left
};

/// Time left for satellite computation once the other delay terms are paid.
double compute_budget(const SlotContext& ctx, std::size_t u, const UavDecision& d);

Sp2Result solve_compute(const SlotContext& ctx, std::size_t u, const UavDecision& fixed);

struct Sp2SlotResult {
  std::vector<double> leo_cpu_hz;
  bool scaled = false;  // sum exceeded F_LEO and was scaled down
  bool any_flag = false;
};

Sp2SlotResult solve_compute_slot(const SlotContext& ctx, std::span<const UavDecision> fixed);

// ---------------------------------------------------------------------------
// SP3: DT start time

struct Sp3Result {
  double dt_start_s = 0.0;
  int case_id = 0;  // 1: energy term dominates, 2: uplink rate dominates
  double lower = 0.0;
  double upper = 0.0;
  double lambda2 = 0.0;
  bool empty = false;
};

Sp3Result solve_start_time(const SlotContext& ctx, std::size_t u, const UavDecision& fixed,
                           DeadlineMode mode);

// ---------------------------------------------------------------------------
// SP4: offloading ratio

struct Sp4Result {
  double offload_ratio = 0.0;
  double gamma_min = 0.0;
  double gamma_max = 0.0;
  double pi = 0.0;
  bool empty = false;
};

Sp4Result solve_ratio(const SlotContext& ctx, std::size_t u, const UavDecision& fixed);

/// Ratio at which local and satellite branches finish together for the
/// given power and CPU share, clamped to [0, 1].
double balanced_ratio(const SlotContext& ctx, std::size_t u, double power_w, double leo_cpu_hz);

// ---------------------------------------------------------------------------
// Alternating loop

struct SlotSolveTrace {
  std::vector<double> objective;  // after initialisation, then per iteration
  int iterations = 0;
  bool converged = false;
  std::array<double, 4> sp_seconds{};
  std::array<int, 4> accepted{};
  std::array<int, 4> rejected{};
  int sp1_outer = 0;
  int sp1_inner = 0;

  /// True when no step decreases the objective by more than `noise`.
  bool monotone(double noise = 1e-9) const;
};

struct SlotSolution {
  std::vector<UavDecision> decisions;
  std::vector<UavEval> evals;
  double objective = 0.0;
  bool flagged = false;
  std::vector<std::string> notes;  // one per flagged condition, "uav <u>: <reason>"
  SlotSolveTrace trace;
};

/// Current decisions and evaluations; candidate blocks replace a UAV's
/// decision only when it stays feasible and its objective does not drop.
struct AlternatingState {
  const SlotContext* ctx = nullptr;
  DeadlineMode mode = DeadlineMode::kStrict;
  double time_tol = 1e-9;  // deadline slack accepted for a candidate (s)
  std::vector<UavDecision> d;
  std::vector<UavEval> e;

  AlternatingState(const SlotContext& c, std::vector<UavDecision> init, DeadlineMode m);
  bool try_accept(std::size_t u, const UavDecision& cand);
  double objective() const;
};

/// Local-only decision used when nothing better is feasible.
UavDecision fallback_decision(const SlotContext& ctx, std::size_t u);

/// Initial point of the alternating loop: full power, equal CPU split,
/// delay-balanced ratio and the matching start time.
UavDecision initial_decision(const SlotContext& ctx, std::size_t u, DeadlineMode mode);

/// Repair sub-nanosecond deadline rounding, evaluate, and flag violations
/// of the deadline, storage and CPU budget constraints.
SlotSolution finalize_slot(const SlotContext& ctx, std::vector<UavDecision> decisions,
                           std::vector<std::string> notes, SlotSolveTrace trace);

SlotSolution solve_slot_jcorm(const SlotContext& ctx, const ToleranceConfig& tol);

}  // namespace csamn
