#include "csamn/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace csamn {

ExperimentResult run_experiment(const ScenarioConfig& cfg) { return run_horizon(cfg, cfg.seed); }

void apply_axis(ScenarioConfig& cfg, const std::string& axis, double value) {
  if (axis == "B_LEO") {
    cfg.link.bandwidth_hz = value;
  } else if (axis == "K_0") {
    cfg.channel.rician_k = value;
  } else if (axis == "omega") {
    cfg.weight_omega = value;
  } else if (axis == "beta") {
    cfg.channel.ds_bandwidth_fraction = value;
  } else if (axis == "storage_capacity") {
    cfg.storage_capacity_bits = value;
  } else if (axis == "ds_task_bits") {
    cfg.ds_task_bits_min = value;
    cfg.ds_task_bits_max = value;
  } else if (axis == "pmax") {
    cfg.link.max_power_w = value;
    cfg.link.dt_power_w = std::min(cfg.link.dt_power_w, value);
  } else {
    // Raw keys go through the text setter so units (dB, degrees) match the
    // config file.
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    set_config_value(cfg, axis, buf);
  }
}

namespace {

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

SweepTable run_sweep(const ScenarioConfig& base, const std::string& axis, const std::vector<double>& values,
                     const std::vector<std::uint64_t>& seeds, const std::vector<Algorithm>& algorithms,
                     unsigned threads) {
  SweepTable table;
  table.axis = axis;
  table.values = values;
  table.seeds = seeds;
  table.algorithms = algorithms;

  // Build and validate every configuration before any work starts so a bad
  // axis value fails fast.
  std::vector<ScenarioConfig> cfgs;
  for (Algorithm a : algorithms) {
    for (double v : values) {
      ScenarioConfig cfg = base;
      cfg.algorithm = a;
      if (axis != "none") apply_axis(cfg, axis, v);
      cfg.validate();
      for (std::uint64_t s : seeds) {
        cfgs.push_back(cfg);
        table.cells.push_back({a, v, s, {}});
      }
    }
  }
  parallel_for(table.cells.size(), threads, [&](std::size_t i) {
    table.cells[i].result = run_horizon(cfgs[i], table.cells[i].seed);
  });
  return table;
}

SweepTable compare(const ScenarioConfig& base, const std::vector<Algorithm>& algorithms,
                   const std::vector<std::uint64_t>& seeds, unsigned threads) {
  return run_sweep(base, "none", {0.0}, seeds, algorithms, threads);
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::uint64_t to_u64(const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!s.empty() && s[0] == '-') throw ConfigError("");
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("bad seed '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("bad seed '" + s + "'");
  return v;
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split(text, ',')) {
    const auto dash = item.find('-', 1);
    if (dash == std::string::npos) {
      out.push_back(to_u64(item));
      continue;
    }
    const std::uint64_t lo = to_u64(item.substr(0, dash));
    const std::uint64_t hi = to_u64(item.substr(dash + 1));
    if (hi < lo) throw ConfigError("empty seed range '" + item + "'");
    if (hi - lo >= 1000000) throw ConfigError("seed range '" + item + "' is too long");
    for (std::uint64_t s = lo;; ++s) {
      out.push_back(s);
      if (s == hi) break;
    }
  }
  if (out.empty()) throw ConfigError("seed list is empty");
  return out;
}

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad value '" + item + "'");
    }
    if (used != item.size()) throw ConfigError("bad value '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("value list is empty");
  return out;
}

std::vector<Algorithm> parse_algorithm_list(const std::string& text) {
  std::vector<Algorithm> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_algorithm(item));
  if (out.empty()) throw ConfigError("algorithm list is empty");
  return out;
}

}  // namespace csamn
