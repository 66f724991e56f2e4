#include "csamn/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>

namespace csamn {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kJcorm: return "jcorm";
    case Algorithm::kAtsm: return "atsm";
    case Algorithm::kGa: return "ga";
    case Algorithm::kNoOffload: return "no-offload";
  }
  return "?";
}

std::string to_string(DeadlineMode m) {
  return m == DeadlineMode::kStrict ? "strict" : "paper-relaxed";
}

std::string to_string(UavPlacement p) { return p == UavPlacement::kGrid ? "grid" : "random"; }

Algorithm parse_algorithm(const std::string& s) {
  if (s == "jcorm") return Algorithm::kJcorm;
  if (s == "atsm") return Algorithm::kAtsm;
  if (s == "ga") return Algorithm::kGa;
  if (s == "no-offload") return Algorithm::kNoOffload;
  throw ConfigError("unknown algorithm '" + s + "' (jcorm|atsm|ga|no-offload)");
}

DeadlineMode parse_mode(const std::string& s) {
  if (s == "strict") return DeadlineMode::kStrict;
  if (s == "paper-relaxed") return DeadlineMode::kPaperRelaxed;
  throw ConfigError("unknown mode '" + s + "' (strict|paper-relaxed)");
}

UavPlacement parse_placement(const std::string& s) {
  if (s == "grid") return UavPlacement::kGrid;
  if (s == "random") return UavPlacement::kRandom;
  throw ConfigError("unknown placement '" + s + "' (grid|random)");
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void ToleranceConfig::validate() const {
  if (!(eps_dinkelbach > 0.0 && xi_inner > 0.0 && tau_outer > 0.0)) {
    throw ConfigError("tolerances must be positive");
  }
  if (r_max < 1 || j_max < 1 || i_max < 1) throw ConfigError("iteration caps must be >= 1");
  if (!(step_a > 0.0) || !(step_b > 0.0)) throw ConfigError("step schedule constants must be positive");
}

void GaConfig::validate() const {
  if (population < 1) throw ConfigError("GA population must be >= 1");
  if (generations < 0) throw ConfigError("GA generations must be >= 0");
  if (crossover_rate < 0.0 || crossover_rate > 1.0 || mutation_rate < 0.0 || mutation_rate > 1.0) {
    throw ConfigError("GA rates must lie in [0, 1]");
  }
  if (mutation_sigma < 0.0) throw ConfigError("GA mutation sigma must be non-negative");
  if (elitism < 0 || elitism > population) throw ConfigError("GA elitism must lie in [0, population]");
  if (penalty_weight < 0.0) throw ConfigError("GA penalty weight must be non-negative");
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (num_uavs < 1) fail("num_uavs must be >= 1");
  if (area_width_m < 0.0 || area_height_m < 0.0) fail("area extent must be non-negative");
  if (!(uav_altitude_m > 0.0)) fail("uav_altitude_m must be positive");
  if (uav_jitter_m < 0.0) fail("uav_jitter_m must be non-negative");
  if (device_radius_m < 0.0) fail("device_radius_m must be non-negative");
  if (ds_devices_min < 1 || ds_devices_max < ds_devices_min) {
    fail("DS device range must satisfy 1 <= min <= max");
  }
  if (dt_devices_min < 0 || dt_devices_max < dt_devices_min) {
    fail("DT device range must satisfy 0 <= min <= max");
  }
  if (ds_task_bits_min < 0.0 || ds_task_bits_max < ds_task_bits_min) {
    fail("DS task size range must satisfy 0 <= min <= max");
  }
  if (!(slot_length_s > 0.0)) fail("slot_length_s must be positive");
  if (num_slots < 0) fail("num_slots must be non-negative");
  if (weight_omega < 0.0) fail("weight_omega must be non-negative");
  if (!(storage_capacity_bits >= 0.0) || storage_remaining_bits < 0.0 ||
      storage_remaining_bits > storage_capacity_bits) {
    fail("storage must satisfy 0 <= remaining <= capacity");
  }
  try {
    geometry.validate();
    channel.validate();
    link.validate();
    compute.validate();
  } catch (const ModelError& e) {
    fail(e.what());
  }
  if (geometry.elevation_rad >= std::numbers::pi / 2.0) {
    fail("elevation must be below 90 degrees");
  }
  const double horizon = slot_length_s * num_slots;
  if (horizon > visibility_window(geometry) * (1.0 + 1e-12)) {
    fail("slot_length_s * num_slots exceeds the satellite visibility window (" +
         format_number(visibility_window(geometry)) + " s)");
  }
  tol.validate();
  ga.validate();
}

namespace {

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': '" + text + "' is not a number");
  }
  if (used != text.size() || !std::isfinite(v)) {
    throw ConfigError("key '" + key + "': '" + text + "' is not a finite number");
  }
  return v;
}

long long parse_int(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': '" + text + "' is not an integer");
  }
  if (used != text.size()) throw ConfigError("key '" + key + "': '" + text + "' is not an integer");
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  if (!text.empty() && text[0] == '-') throw ConfigError("key '" + key + "' must be non-negative");
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': '" + text + "' is not an unsigned integer");
  }
  if (used != text.size()) throw ConfigError("key '" + key + "': '" + text + "' is not an unsigned integer");
  return v;
}

struct Field {
  std::string doc;
  std::function<void(ScenarioConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

struct Registry {
  std::vector<std::string> order;
  std::map<std::string, Field> fields;

  void add(const std::string& key, const std::string& doc, Field f) {
    f.doc = doc;
    order.push_back(key);
    fields.emplace(key, std::move(f));
  }

  template <class Get>
  void real(const std::string& key, const std::string& doc, Get ref) {
    add(key, doc,
        {"", [ref](ScenarioConfig& c, const std::string& k, const std::string& v) { ref(c) = parse_double(k, v); },
         [ref](const ScenarioConfig& c) { return format_number(ref(const_cast<ScenarioConfig&>(c))); }});
  }

  template <class Get>
  void integer(const std::string& key, const std::string& doc, Get ref) {
    add(key, doc,
        {"",
         [ref](ScenarioConfig& c, const std::string& k, const std::string& v) {
           const long long x = parse_int(k, v);
           if (x < -2147483647LL || x > 2147483647LL) throw ConfigError("key '" + k + "' out of range");
           ref(c) = static_cast<int>(x);
         },
         [ref](const ScenarioConfig& c) { return std::to_string(ref(const_cast<ScenarioConfig&>(c))); }});
  }

  // Stored in linear units, written in dB.
  template <class Get>
  void decibel(const std::string& key, const std::string& doc, Get ref, double offset_db) {
    add(key, doc,
        {"",
         [ref, offset_db](ScenarioConfig& c, const std::string& k, const std::string& v) {
           ref(c) = std::pow(10.0, (parse_double(k, v) - offset_db) / 10.0);
         },
         [ref, offset_db](const ScenarioConfig& c) {
           return format_number(10.0 * std::log10(ref(const_cast<ScenarioConfig&>(c))) + offset_db);
         }});
  }
};

Registry build_registry() {
  Registry r;
  using C = ScenarioConfig;
  r.integer("num_uavs", "number of UAVs U", [](C& c) -> int& { return c.num_uavs; });
  r.real("area_width_m", "service area width (m)", [](C& c) -> double& { return c.area_width_m; });
  r.real("area_height_m", "service area height (m)", [](C& c) -> double& { return c.area_height_m; });
  r.real("uav_altitude_m", "UAV hovering altitude (m)", [](C& c) -> double& { return c.uav_altitude_m; });
  r.add("uav_placement", "grid | random",
        {"", [](C& c, const std::string&, const std::string& v) { c.uav_placement = parse_placement(v); },
         [](const C& c) { return to_string(c.uav_placement); }});
  r.real("uav_jitter_m", "uniform jitter added to grid positions (m)", [](C& c) -> double& { return c.uav_jitter_m; });
  r.real("device_radius_m", "radius of the device disc around each UAV (m)",
         [](C& c) -> double& { return c.device_radius_m; });
  r.integer("ds_devices_min", "min DS devices per UAV", [](C& c) -> int& { return c.ds_devices_min; });
  r.integer("ds_devices_max", "max DS devices per UAV", [](C& c) -> int& { return c.ds_devices_max; });
  r.integer("dt_devices_min", "min DT devices per UAV", [](C& c) -> int& { return c.dt_devices_min; });
  r.integer("dt_devices_max", "max DT devices per UAV", [](C& c) -> int& { return c.dt_devices_max; });
  r.real("ds_task_bits_min", "min DS task size per device per slot (bit)",
         [](C& c) -> double& { return c.ds_task_bits_min; });
  r.real("ds_task_bits_max", "max DS task size per device per slot (bit)",
         [](C& c) -> double& { return c.ds_task_bits_max; });
  r.real("slot_length_s", "slot duration delta (s)", [](C& c) -> double& { return c.slot_length_s; });
  r.integer("num_slots", "number of slots T", [](C& c) -> int& { return c.num_slots; });
  r.real("sat_altitude_m", "LEO altitude h (m)", [](C& c) -> double& { return c.geometry.altitude_m; });
  r.real("earth_radius_m", "earth radius (m)", [](C& c) -> double& { return c.geometry.earth_radius_m; });
  r.add("elevation_deg", "minimum elevation angle (deg)",
        {"",
         [](C& c, const std::string& k, const std::string& v) { c.geometry.elevation_rad = deg_to_rad(parse_double(k, v)); },
         [](const C& c) { return format_number(c.geometry.elevation_rad * 180.0 / std::numbers::pi); }});
  r.real("sat_speed_mps", "satellite ground speed (m/s)", [](C& c) -> double& { return c.geometry.sat_speed_mps; });
  r.real("light_speed_mps", "speed of light (m/s)", [](C& c) -> double& { return c.geometry.light_speed_mps; });
  r.real("uav_bandwidth_hz", "device-UAV bandwidth B_u (Hz)", [](C& c) -> double& { return c.channel.uav_bandwidth_hz; });
  r.real("ds_bandwidth_fraction", "share beta of B_u given to DS devices",
         [](C& c) -> double& { return c.channel.ds_bandwidth_fraction; });
  r.real("pathloss_coeff", "path-loss coefficient PL_c", [](C& c) -> double& { return c.channel.pathloss_coeff; });
  r.real("pathloss_exp", "path-loss exponent PL_e", [](C& c) -> double& { return c.channel.pathloss_exp; });
  r.real("rician_k", "Rician factor K_0 (linear)", [](C& c) -> double& { return c.channel.rician_k; });
  r.real("ds_device_power_w", "DS device transmit power (W)", [](C& c) -> double& { return c.channel.ds_device_power_w; });
  r.real("dt_device_power_w", "DT device transmit power (W)", [](C& c) -> double& { return c.channel.dt_device_power_w; });
  r.add("noise_power_dbm", "noise power sigma^2 on both hops (dBm)",
        {"",
         [](C& c, const std::string& k, const std::string& v) {
           const double w = std::pow(10.0, (parse_double(k, v) - 30.0) / 10.0);
           c.channel.noise_power_w = w;
           c.link.noise_power_w = w;
         },
         [](const C& c) { return format_number(10.0 * std::log10(c.channel.noise_power_w) + 30.0); }});
  r.real("leo_bandwidth_hz", "satellite bandwidth B_LEO (Hz)", [](C& c) -> double& { return c.link.bandwidth_hz; });
  r.decibel("ref_gain_db", "satellite link reference gain g0 (dB)", [](C& c) -> double& { return c.link.ref_gain; }, 0.0);
  r.decibel("antenna_gain_db", "satellite antenna gain G (dB)", [](C& c) -> double& { return c.link.antenna_gain; }, 0.0);
  r.real("leo_ref_distance_m", "distance at which g0 is referenced (m)",
         [](C& c) -> double& { return c.link.ref_distance_m; });
  r.real("uav_max_power_w", "UAV DS uplink power limit p_max (W)", [](C& c) -> double& { return c.link.max_power_w; });
  r.real("dt_uplink_power_w", "UAV DT uplink power p_tol (W)", [](C& c) -> double& { return c.link.dt_power_w; });
  r.real("cycles_per_bit", "CPU cycles per bit f0", [](C& c) -> double& { return c.compute.cycles_per_bit; });
  r.real("uav_cpu_hz", "UAV CPU frequency F_u (cycles/s)", [](C& c) -> double& { return c.compute.uav_cpu_hz; });
  r.real("leo_cpu_hz", "satellite CPU capacity F_LEO (cycles/s)", [](C& c) -> double& { return c.compute.leo_cpu_hz; });
  r.real("switch_cap", "effective switched capacitance kappa", [](C& c) -> double& { return c.compute.switch_cap; });
  r.real("weight_omega", "energy weight omega (per J, data in bit)", [](C& c) -> double& { return c.weight_omega; });
  r.real("storage_capacity_bits", "UAV storage capacity (bit)", [](C& c) -> double& { return c.storage_capacity_bits; });
  r.real("storage_remaining_bits", "initial remaining UAV storage (bit)",
         [](C& c) -> double& { return c.storage_remaining_bits; });
  r.real("eps_dinkelbach", "Dinkelbach outer tolerance", [](C& c) -> double& { return c.tol.eps_dinkelbach; });
  r.real("xi_inner", "subgradient inner tolerance (Mbit)", [](C& c) -> double& { return c.tol.xi_inner; });
  r.real("tau_outer", "alternating loop tolerance (objective units)", [](C& c) -> double& { return c.tol.tau_outer; });
  r.integer("r_max", "Dinkelbach iteration cap", [](C& c) -> int& { return c.tol.r_max; });
  r.integer("j_max", "subgradient iteration cap", [](C& c) -> int& { return c.tol.j_max; });
  r.integer("i_max", "alternating loop iteration cap", [](C& c) -> int& { return c.tol.i_max; });
  r.real("step_a", "subgradient step numerator a", [](C& c) -> double& { return c.tol.step_a; });
  r.real("step_b", "subgradient step offset b", [](C& c) -> double& { return c.tol.step_b; });
  r.add("mode", "strict | paper-relaxed",
        {"", [](C& c, const std::string&, const std::string& v) { c.mode = parse_mode(v); },
         [](const C& c) { return to_string(c.mode); }});
  r.add("algorithm", "jcorm | atsm | ga | no-offload",
        {"", [](C& c, const std::string&, const std::string& v) { c.algorithm = parse_algorithm(v); },
         [](const C& c) { return to_string(c.algorithm); }});
  r.add("seed", "scenario seed (u64)",
        {"", [](C& c, const std::string& k, const std::string& v) { c.seed = parse_u64(k, v); },
         [](const C& c) { return std::to_string(c.seed); }});
  r.integer("ga_population", "GA population size", [](C& c) -> int& { return c.ga.population; });
  r.integer("ga_generations", "GA generations", [](C& c) -> int& { return c.ga.generations; });
  r.real("ga_crossover_rate", "GA crossover probability", [](C& c) -> double& { return c.ga.crossover_rate; });
  r.real("ga_mutation_rate", "GA per-gene mutation probability", [](C& c) -> double& { return c.ga.mutation_rate; });
  r.real("ga_mutation_sigma", "GA mutation std as a fraction of box width",
         [](C& c) -> double& { return c.ga.mutation_sigma; });
  r.integer("ga_elitism", "GA elite count", [](C& c) -> int& { return c.ga.elitism; });
  r.real("ga_penalty_weight", "GA penalty weight", [](C& c) -> double& { return c.ga.penalty_weight; });
  return r;
}

const Registry& registry() {
  static const Registry r = build_registry();
  return r;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const Field& field(const std::string& key) {
  const auto& f = registry().fields;
  auto it = f.find(key);
  if (it == f.end()) throw ConfigError("unknown config key '" + key + "'");
  return it->second;
}

}  // namespace

const std::vector<std::string>& config_keys() { return registry().order; }

const std::string& config_key_doc(const std::string& key) { return field(key).doc; }

void set_config_value(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
  field(key).set(cfg, key, trim(value));
}

std::string get_config_value(const ScenarioConfig& cfg, const std::string& key) {
  return field(key).get(cfg);
}

ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    try {
      set_config_value(cfg, key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::string format_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  for (const auto& key : config_keys()) {
    out << key << " = " << get_config_value(cfg, key) << "  # " << config_key_doc(key) << "\n";
  }
  return out.str();
}

}  // namespace csamn
