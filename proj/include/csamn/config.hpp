// Scenario configuration: every physical and algorithmic constant of a run,
// plus a flat `key = value` text format for reading and writing it.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "csamn/model.hpp"

namespace csamn {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Algorithm { kJcorm, kAtsm, kGa, kNoOffload };
enum class DeadlineMode { kStrict, kPaperRelaxed };
enum class UavPlacement { kGrid, kRandom };

std::string to_string(Algorithm a);
std::string to_string(DeadlineMode m);
std::string to_string(UavPlacement p);
Algorithm parse_algorithm(const std::string& s);
DeadlineMode parse_mode(const std::string& s);
UavPlacement parse_placement(const std::string& s);

struct ToleranceConfig {
  double eps_dinkelbach = 0.01;
  double xi_inner = 0.01;
  double tau_outer = 0.01;
  int r_max = 50;
  int j_max = 50;
  int i_max = 50;
  double step_a = 0.1;  // subgradient step a / (b + j)
  double step_b = 1.0;

  void validate() const;
};

struct GaConfig {
  int population = 60;
  int generations = 100;
  double crossover_rate = 0.9;
  double mutation_rate = 0.1;
  double mutation_sigma = 0.05;  // fraction of each box width
  int elitism = 2;
  double penalty_weight = 1e3;

  void validate() const;
};

struct ScenarioConfig {
  // Layout
  int num_uavs = 6;
  double area_width_m = 2000.0;
  double area_height_m = 2000.0;
  double uav_altitude_m = 500.0;
  UavPlacement uav_placement = UavPlacement::kGrid;
  double uav_jitter_m = 0.0;
  double device_radius_m = 300.0;
  int ds_devices_min = 1;
  int ds_devices_max = 5;
  int dt_devices_min = 5;
  int dt_devices_max = 10;
  double ds_task_bits_min = 1e6;
  double ds_task_bits_max = 3e6;

  // Time
  double slot_length_s = 10.0;
  int num_slots = 10;

  SatelliteGeometry geometry;
  MaritimeChannelParams channel;
  SatLinkParams link;
  ComputeParams compute;

  double weight_omega = 10.0;
  double storage_capacity_bits = 12e9;   // 1.5 GB
  double storage_remaining_bits = 8e9;   // 1 GB

  ToleranceConfig tol;
  GaConfig ga;
  DeadlineMode mode = DeadlineMode::kStrict;
  Algorithm algorithm = Algorithm::kJcorm;
  std::uint64_t seed = 1;

  /// Throws ConfigError describing the first violated invariant.
  void validate() const;
};

/// Names of all accepted keys, in canonical output order.
const std::vector<std::string>& config_keys();

/// One-line unit/meaning description of a key.
const std::string& config_key_doc(const std::string& key);

/// Assign a key from its textual value. Unknown keys and malformed values throw.
void set_config_value(ScenarioConfig& cfg, const std::string& key, const std::string& value);
std::string get_config_value(const ScenarioConfig& cfg, const std::string& key);

/// Parse `key = value` lines; `#` starts a comment. Starts from defaults.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::string& path);

/// Render every key with its doc comment; parse_config round-trips it.
std::string format_config(const ScenarioConfig& cfg);

/// Format a double with 9 significant digits.
std::string format_number(double v);

}  // namespace csamn
