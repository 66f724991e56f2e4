#include "csamn/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace csamn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMbit = 1e6;

std::string uav_note(std::size_t u, const std::string& what) {
  return "uav " + std::to_string(u) + ": " + what;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

// ---------------------------------------------------------------------------
// SP1

double comm_budget(const SlotContext& ctx, std::size_t u, const UavDecision& d) {
  const UavSlotInput& in = ctx.uavs.at(u);
  const double offloaded = d.offload_ratio * in.ds_bits;
  double leo_compute = 0.0;
  if (offloaded > 0.0) {
    leo_compute = d.leo_cpu_hz > 0.0 ? ctx.compute.cycles_per_bit * offloaded / d.leo_cpu_hz : kInf;
  }
  return d.dt_start_s - 2.0 * ctx.prop_delay_s - leo_compute - in.offload_time_s;
}

double min_feasible_power(const SlotContext& ctx, std::size_t u, const UavDecision& d) {
  const double offloaded = d.offload_ratio * ctx.uavs.at(u).ds_bits;
  if (offloaded <= 0.0) return 0.0;
  const double budget = comm_budget(ctx, u, d);
  if (!(budget > 0.0) || !(ctx.leo_gain > 0.0) || !(ctx.link.bandwidth_hz > 0.0)) return kInf;
  const double band = ctx.link.bandwidth_hz / ctx.fdma_users;
  const double needed_rate = offloaded / budget;
  return std::expm1(needed_rate / band * std::numbers::ln2) * ctx.link.noise_power_w / ctx.leo_gain;
}

double water_level_power(double eta, double lambda, double mu, double budget_s, double a_coeff,
                         double band_mbps, double noise_over_gain) {
  const double denom = (a_coeff + mu) * std::numbers::ln2;
  const double numer = (eta + lambda * budget_s) * band_mbps;
  if (!(denom > 0.0)) return numer > 0.0 ? kInf : 0.0;
  return std::max(numer / denom - noise_over_gain, 0.0);
}

Sp1Result solve_power(const SlotContext& ctx, std::size_t u, const UavDecision& fixed,
                      const ToleranceConfig& tol) {
  Sp1Result res;
  const double pmax = ctx.link.max_power_w;
  const double d_mbit = fixed.offload_ratio * ctx.uavs.at(u).ds_bits / kMbit;
  if (d_mbit <= 0.0) {
    res.converged = true;
    return res;
  }
  const double budget = comm_budget(ctx, u, fixed);
  const double p_lo = min_feasible_power(ctx, u, fixed);
  if (!(p_lo <= pmax * (1.0 + 1e-12))) {
    res.infeasible = true;
    res.power_w = pmax;
    return res;
  }

  const double band = ctx.link.bandwidth_hz / ctx.fdma_users / kMbit;
  const double n_over_g = ctx.link.noise_power_w / ctx.leo_gain;
  const double a_coeff = ctx.omega * d_mbit;
  auto rate = [&](double p) { return band * std::log2(1.0 + p / n_over_g); };

  // With omega = 0 the ratio objective vanishes; the cheapest feasible
  // power is then any point of the feasible interval, take its left end.
  if (!(a_coeff > 0.0)) {
    res.power_w = std::min(p_lo, pmax);
    res.converged = true;
    return res;
  }

  double eta = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  double p = pmax;
  int step = 0;  // multipliers and step schedule carry over between outer iterations
  for (int r = 1; r <= tol.r_max; ++r) {
    res.outer_iters = r;
    double p_hat = 0.0;
    for (int j = 1; j <= tol.j_max; ++j) {
      ++res.inner_iters;
      ++step;
      p_hat = std::min(water_level_power(eta, lambda, mu, budget, a_coeff, band, n_over_g), pmax);
      const double g_lambda = d_mbit - budget * rate(p_hat);
      const double g_mu = p_hat - pmax;
      const bool primal_ok = g_lambda <= tol.xi_inner;
      const bool slack_ok = lambda * std::abs(g_lambda) <= tol.xi_inner && mu * std::abs(g_mu) <= tol.xi_inner;
      if (primal_ok && slack_ok) break;
      const double alpha = tol.step_a / (tol.step_b + step);
      lambda = std::max(0.0, lambda + alpha * g_lambda);
      mu = std::max(0.0, mu + alpha * g_mu);
    }
    // Primal recovery: the better of the projected dual iterate and the
    // projected multiplier-free stationary point of the eta-subproblem.
    const double p_proj = std::clamp(water_level_power(eta, 0.0, 0.0, budget, a_coeff, band, n_over_g),
                                     std::min(p_lo, pmax), pmax);
    const double p_dual = std::clamp(p_hat, std::min(p_lo, pmax), pmax);
    auto sub = [&](double x) { return a_coeff * x - eta * rate(x); };
    p = sub(p_dual) < sub(p_proj) ? p_dual : p_proj;
    const double r_p = rate(p);
    const double eta_next = r_p > 0.0 ? a_coeff * p / r_p : 0.0;
    const bool done = std::abs(eta_next - eta) * r_p <= tol.eps_dinkelbach;
    eta = eta_next;
    if (done) {
      res.converged = true;
      break;
    }
  }
  res.power_w = p;
  res.eta = eta;
  res.lambda = lambda;
  res.mu = mu;
  return res;
}

// ---------------------------------------------------------------------------
// SP2

double compute_budget(const SlotContext& ctx, std::size_t u, const UavDecision& d) {
  const UavSlotInput& in = ctx.uavs.at(u);
  const double offloaded = d.offload_ratio * in.ds_bits;
  double uplink = 0.0;
  if (offloaded > 0.0) {
    const double r = ctx.leo_rate(d.power_w);
    uplink = r > 0.0 ? offloaded / r : kInf;
  }
  return d.dt_start_s - 2.0 * ctx.prop_delay_s - uplink - in.offload_time_s;
}

Sp2Result solve_compute(const SlotContext& ctx, std::size_t u, const UavDecision& fixed) {
  Sp2Result res;
  const double offloaded = fixed.offload_ratio * ctx.uavs.at(u).ds_bits;
  if (offloaded <= 0.0) return res;
  const double cap = ctx.compute.leo_cpu_hz;
  const double budget = compute_budget(ctx, u, fixed);
  if (!(budget > 0.0)) {
    res.infeasible = true;
    res.leo_cpu_hz = cap;
    return res;
  }
  const double f = ctx.compute.cycles_per_bit * offloaded / budget;
  if (f > cap) {
    res.clamped = true;
    res.leo_cpu_hz = cap;
  } else {
    res.leo_cpu_hz = f;
  }
  return res;
}

Sp2SlotResult solve_compute_slot(const SlotContext& ctx, std::span<const UavDecision> fixed) {
  Sp2SlotResult res;
  double sum = 0.0;
  for (std::size_t u = 0; u < fixed.size(); ++u) {
    const Sp2Result r = solve_compute(ctx, u, fixed[u]);
    res.any_flag = res.any_flag || r.clamped || r.infeasible;
    res.leo_cpu_hz.push_back(r.leo_cpu_hz);
    sum += r.leo_cpu_hz;
  }
  const double cap = ctx.compute.leo_cpu_hz;
  if (sum > cap) {
    res.scaled = true;
    res.any_flag = true;
    for (auto& f : res.leo_cpu_hz) f *= cap / sum;
  }
  return res;
}

// ---------------------------------------------------------------------------
// SP3

Sp3Result solve_start_time(const SlotContext& ctx, std::size_t u, const UavDecision& fixed,
                           DeadlineMode mode) {
  const UavSlotInput& in = ctx.uavs.at(u);
  Sp3Result res;
  res.lower = std::max(0.0, deadline_lower_bound(ctx, u, fixed, mode));
  res.upper = start_time_upper_bound(ctx, u);
  if (res.lower > res.upper) {
    res.empty = true;
    res.dt_start_s = ctx.slot_len_s;
    return res;
  }
  const double r_tol = ctx.leo_rate_tol();
  const double denom = r_tol + in.collect_rate_bps;
  res.lambda2 = denom > 0.0 ? (r_tol * ctx.slot_len_s - in.storage.stored_bits()) / denom : 0.0;
  if (ctx.omega * ctx.link.dt_power_w - r_tol >= 0.0) {
    res.case_id = 1;
    res.dt_start_s = res.upper;
  } else {
    res.case_id = 2;
    res.dt_start_s = std::clamp(res.lambda2, res.lower, res.upper);
  }
  return res;
}

// ---------------------------------------------------------------------------
// SP4

Sp4Result solve_ratio(const SlotContext& ctx, std::size_t u, const UavDecision& fixed) {
  const UavSlotInput& in = ctx.uavs.at(u);
  const ComputeParams& c = ctx.compute;
  Sp4Result res;
  if (in.ds_bits <= 0.0) return res;

  const double work = c.cycles_per_bit * in.ds_bits;
  res.gamma_min = std::clamp((in.offload_time_s - fixed.dt_start_s) * c.uav_cpu_hz / work + 1.0, 0.0, 1.0);
  const double rate = ctx.leo_rate(fixed.power_w);
  if (fixed.power_w > 0.0 && fixed.leo_cpu_hz > 0.0 && rate > 0.0) {
    const double per_bit = 1.0 / rate + c.cycles_per_bit / fixed.leo_cpu_hz;
    const double room = fixed.dt_start_s - 2.0 * ctx.prop_delay_s - in.offload_time_s;
    res.gamma_max = std::clamp(room / (per_bit * in.ds_bits), 0.0, 1.0);
    res.pi = ctx.omega * in.ds_bits *
             (c.cycles_per_bit * c.switch_cap * (c.uav_cpu_hz * c.uav_cpu_hz - fixed.leo_cpu_hz * fixed.leo_cpu_hz) -
              fixed.power_w / rate);
  } else {
    res.gamma_max = res.gamma_min;
    res.pi = 0.0;
  }
  if (res.gamma_min > res.gamma_max) {
    res.empty = true;
    res.offload_ratio = res.gamma_min;
    return res;
  }
  res.offload_ratio = res.pi <= 0.0 ? res.gamma_min : res.gamma_max;
  return res;
}

double balanced_ratio(const SlotContext& ctx, std::size_t u, double power_w, double leo_cpu_hz) {
  const UavSlotInput& in = ctx.uavs.at(u);
  const ComputeParams& c = ctx.compute;
  const double rate = ctx.leo_rate(power_w);
  if (in.ds_bits <= 0.0 || !(rate > 0.0) || !(leo_cpu_hz > 0.0)) return 0.0;
  const double a = c.cycles_per_bit * in.ds_bits / c.uav_cpu_hz;
  const double b = in.ds_bits / rate + c.cycles_per_bit * in.ds_bits / leo_cpu_hz;
  const double cst = 2.0 * ctx.prop_delay_s;
  return std::clamp((a - cst) / (a + b), 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Alternating loop

bool SlotSolveTrace::monotone(double noise) const {
  for (std::size_t i = 1; i < objective.size(); ++i) {
    if (objective[i] < objective[i - 1] - noise * std::max(1.0, std::abs(objective[i - 1]))) return false;
  }
  return true;
}

AlternatingState::AlternatingState(const SlotContext& c, std::vector<UavDecision> init, DeadlineMode m)
    : ctx(&c), mode(m), d(std::move(init)) {
  for (std::size_t u = 0; u < d.size(); ++u) e.push_back(evaluate_uav(c, u, d[u]));
}

bool AlternatingState::try_accept(std::size_t u, const UavDecision& cand) {
  const UavDecision& cur = d[u];
  if (cand.power_w == cur.power_w && cand.leo_cpu_hz == cur.leo_cpu_hz &&
      cand.dt_start_s == cur.dt_start_s && cand.offload_ratio == cur.offload_ratio) {
    return false;
  }
  const UavEval ce = evaluate_uav(*ctx, u, cand);
  if (!uav_feasible(*ctx, u, cand, ce, mode, time_tol)) return false;
  if (!(ce.objective >= e[u].objective)) return false;
  d[u] = cand;
  e[u] = ce;
  return true;
}

double AlternatingState::objective() const {
  double s = 0.0;
  for (const auto& x : e) s += x.objective;
  return s;
}

UavDecision fallback_decision(const SlotContext& ctx, std::size_t u) {
  UavDecision d;
  d.dt_start_s = std::min(local_only_deadline(ctx, u), ctx.slot_len_s);
  return d;
}

UavDecision initial_decision(const SlotContext& ctx, std::size_t u, DeadlineMode mode) {
  UavDecision d;
  if (ctx.uavs.at(u).ds_bits > 0.0) {
    d.power_w = ctx.link.max_power_w;
    d.leo_cpu_hz = ctx.compute.leo_cpu_hz / static_cast<double>(ctx.size());
    d.offload_ratio = balanced_ratio(ctx, u, d.power_w, d.leo_cpu_hz);
    if (d.offload_ratio <= 0.0) {
      d.power_w = 0.0;
      d.leo_cpu_hz = 0.0;
    }
  }
  d.dt_start_s = solve_start_time(ctx, u, d, mode).dt_start_s;
  return d;
}

SlotSolution finalize_slot(const SlotContext& ctx, std::vector<UavDecision> decisions,
                           std::vector<std::string> notes, SlotSolveTrace trace) {
  SlotSolution s;
  s.notes = std::move(notes);
  s.trace = std::move(trace);
  for (std::size_t u = 0; u < decisions.size(); ++u) {
    UavDecision& d = decisions[u];
    UavEval e = evaluate_uav(ctx, u, d);
    const double gap = e.deadline_s - d.dt_start_s;
    if (gap > 0.0 && gap <= 1e-9 && e.deadline_s <= ctx.slot_len_s) {
      d.dt_start_s = e.deadline_s;
      e = evaluate_uav(ctx, u, d);
    }
    if (!e.well_defined) s.notes.push_back(uav_note(u, "offloading without uplink rate or CPU share"));
    if (e.deadline_s > d.dt_start_s) {
      s.notes.push_back(uav_note(u, "DS deadline exceeded by " + format_number(e.deadline_s - d.dt_start_s) + " s"));
    }
    const Violation v = uav_violation(ctx, u, d, e, DeadlineMode::kStrict);
    if (v.storage_bits > 1e-12 * std::max(1.0, ctx.uavs[u].storage.capacity_bits)) {
      s.notes.push_back(uav_note(u, "DT collection exceeds free storage"));
    }
    if (v.box > 0.0) s.notes.push_back(uav_note(u, "decision outside its box"));
    s.evals.push_back(e);
    s.objective += e.objective;
  }
  if (total_leo_cpu(decisions) > ctx.compute.leo_cpu_hz * (1.0 + 1e-12)) {
    s.notes.push_back("slot: satellite CPU shares exceed capacity");
  }
  s.decisions = std::move(decisions);
  s.flagged = !s.notes.empty();
  return s;
}

SlotSolution solve_slot_jcorm(const SlotContext& ctx, const ToleranceConfig& tol) {
  using clock = std::chrono::steady_clock;
  const std::size_t n = ctx.size();
  const DeadlineMode mode = ctx.mode;
  std::vector<std::string> notes;

  std::vector<UavDecision> init(n);
  for (std::size_t u = 0; u < n; ++u) {
    init[u] = initial_decision(ctx, u, mode);
    const UavEval e = evaluate_uav(ctx, u, init[u]);
    if (!uav_feasible(ctx, u, init[u], e, mode)) {
      init[u] = fallback_decision(ctx, u);
      notes.push_back(uav_note(u, "no feasible starting point, local-only fallback"));
    }
  }

  AlternatingState st(ctx, std::move(init), mode);
  SlotSolveTrace trace;
  trace.objective.push_back(st.objective());

  auto record = [&trace](int block, bool ok) { ok ? ++trace.accepted[block] : ++trace.rejected[block]; };

  for (int i = 1; i <= tol.i_max; ++i) {
    trace.iterations = i;
    bool changed = false;

    auto t0 = clock::now();
    for (std::size_t u = 0; u < n; ++u) {
      const Sp1Result r = solve_power(ctx, u, st.d[u], tol);
      trace.sp1_outer += r.outer_iters;
      trace.sp1_inner += r.inner_iters;
      UavDecision cand = st.d[u];
      cand.power_w = r.power_w;
      const bool ok = st.try_accept(u, cand);
      record(0, ok);
      changed |= ok;
    }
    trace.sp_seconds[0] += seconds_since(t0);

    t0 = clock::now();
    const Sp2SlotResult sp2 = solve_compute_slot(ctx, st.d);
    if (!sp2.scaled) {
      for (std::size_t u = 0; u < n; ++u) {
        UavDecision cand = st.d[u];
        cand.leo_cpu_hz = sp2.leo_cpu_hz[u];
        const double others = total_leo_cpu(st.d) - st.d[u].leo_cpu_hz;
        bool ok = false;
        if (others + cand.leo_cpu_hz <= ctx.compute.leo_cpu_hz * (1.0 + 1e-12)) ok = st.try_accept(u, cand);
        record(1, ok);
        changed |= ok;
      }
    } else {
      record(1, false);
    }
    trace.sp_seconds[1] += seconds_since(t0);

    t0 = clock::now();
    for (std::size_t u = 0; u < n; ++u) {
      UavDecision cand = st.d[u];
      cand.dt_start_s = solve_start_time(ctx, u, st.d[u], mode).dt_start_s;
      const bool ok = st.try_accept(u, cand);
      record(2, ok);
      changed |= ok;
    }
    trace.sp_seconds[2] += seconds_since(t0);

    t0 = clock::now();
    for (std::size_t u = 0; u < n; ++u) {
      UavDecision cand = st.d[u];
      cand.offload_ratio = solve_ratio(ctx, u, st.d[u]).offload_ratio;
      const bool ok = st.try_accept(u, cand);
      record(3, ok);
      changed |= ok;
    }
    trace.sp_seconds[3] += seconds_since(t0);

    const double obj = st.objective();
    const double prev = trace.objective.back();
    trace.objective.push_back(obj);
    if (!changed || std::abs(obj - prev) <= tol.tau_outer) {
      trace.converged = true;
      break;
    }
  }
  return finalize_slot(ctx, std::move(st.d), std::move(notes), std::move(trace));
}

}  // namespace csamn
