// Experiment drivers: single runs, parameter sweeps and paired-seed
// comparisons, with cells executed on a small thread pool.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csamn/config.hpp"
#include "csamn/horizon.hpp"

namespace csamn {

ExperimentResult run_experiment(const ScenarioConfig& cfg);

/// Sweep axis names accepted besides raw config keys:
///   B_LEO -> leo_bandwidth_hz, K_0 -> rician_k, omega -> weight_omega,
///   beta -> ds_bandwidth_fraction, storage_capacity -> storage_capacity_bits,
///   ds_task_bits -> both task-size bounds, pmax -> uav_max_power_w (the DT
///   uplink power is lowered with it when it would exceed the new limit).
void apply_axis(ScenarioConfig& cfg, const std::string& axis, double value);

struct SweepCell {
  Algorithm algorithm = Algorithm::kJcorm;
  double axis_value = 0.0;
  std::uint64_t seed = 0;
  ExperimentResult result;
};

struct SweepTable {
  std::string axis;  // "none" for comparisons
  std::vector<double> values;
  std::vector<std::uint64_t> seeds;
  std::vector<Algorithm> algorithms;
  std::vector<SweepCell> cells;  // algorithm-major, then value, then seed
};

/// `threads` = 0 uses the hardware concurrency.
SweepTable run_sweep(const ScenarioConfig& base, const std::string& axis, const std::vector<double>& values,
                     const std::vector<std::uint64_t>& seeds, const std::vector<Algorithm>& algorithms,
                     unsigned threads = 0);

/// Paired runs of several schemes on identical seeds.
SweepTable compare(const ScenarioConfig& base, const std::vector<Algorithm>& algorithms,
                   const std::vector<std::uint64_t>& seeds, unsigned threads = 0);

/// Parse "1,2,5" or "1-20" (ranges inclusive, may be mixed).
std::vector<std::uint64_t> parse_seed_list(const std::string& text);
std::vector<double> parse_value_list(const std::string& text);
std::vector<Algorithm> parse_algorithm_list(const std::string& text);

}  // namespace csamn
