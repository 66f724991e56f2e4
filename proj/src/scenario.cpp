#include "csamn/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace csamn {

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// Uniform in [0, 1) from the top 53 bits; avoids distribution objects whose
// output would depend on the range arguments.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + unit(rng) * (hi - lo); }

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(rng() % span);
}

std::complex<double> unit_gaussian(std::mt19937_64& rng) {
  // Box-Muller, E|o|^2 = 1.
  const double u1 = 1.0 - unit(rng);
  const double u2 = unit(rng);
  const double r = std::sqrt(-std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

Vec3 disc_point(std::mt19937_64& rng, const Vec3& centre, double radius) {
  const double r = radius * std::sqrt(unit(rng));
  const double a = 2.0 * std::numbers::pi * unit(rng);
  return {centre.x + r * std::cos(a), centre.y + r * std::sin(a), 0.0};
}

}  // namespace

Placement place_nodes(const ScenarioConfig& cfg, std::uint64_t seed) {
  std::mt19937_64 rng(mix_seed(seed, 0));
  Placement p;
  const int n = cfg.num_uavs;
  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  const int rows = (n + cols - 1) / cols;
  for (int u = 0; u < n; ++u) {
    Vec3 q{0.0, 0.0, cfg.uav_altitude_m};
    if (cfg.uav_placement == UavPlacement::kGrid) {
      q.x = (u % cols + 0.5) * cfg.area_width_m / cols;
      q.y = (u / cols + 0.5) * cfg.area_height_m / rows;
      if (cfg.uav_jitter_m > 0.0) {
        q.x = std::clamp(q.x + uniform(rng, -cfg.uav_jitter_m, cfg.uav_jitter_m), 0.0, cfg.area_width_m);
        q.y = std::clamp(q.y + uniform(rng, -cfg.uav_jitter_m, cfg.uav_jitter_m), 0.0, cfg.area_height_m);
      }
    } else {
      q.x = uniform(rng, 0.0, cfg.area_width_m);
      q.y = uniform(rng, 0.0, cfg.area_height_m);
    }
    p.uavs.push_back(q);
  }
  for (int u = 0; u < n; ++u) {
    UavDevices d;
    const Vec3 ground{p.uavs[u].x, p.uavs[u].y, 0.0};
    const int k_ds = uniform_int(rng, cfg.ds_devices_min, cfg.ds_devices_max);
    const int k_dt = uniform_int(rng, cfg.dt_devices_min, cfg.dt_devices_max);
    for (int k = 0; k < k_ds; ++k) d.ds.push_back(disc_point(rng, ground, cfg.device_radius_m));
    for (int k = 0; k < k_dt; ++k) d.dt.push_back(disc_point(rng, ground, cfg.device_radius_m));
    p.devices.push_back(std::move(d));
  }
  return p;
}

NetworkState generate_scenario(const ScenarioConfig& cfg, std::uint64_t seed) {
  NetworkState s;
  s.placement = place_nodes(cfg, seed);
  s.slots.resize(static_cast<std::size_t>(cfg.num_slots));
  for (int t = 0; t < cfg.num_slots; ++t) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(t) + 1));
    auto& slot = s.slots[static_cast<std::size_t>(t)];
    for (const auto& dev : s.placement.devices) {
      UavSlotDraw draw;
      for (std::size_t k = 0; k < dev.ds.size(); ++k) {
        draw.ds_bits.push_back(uniform(rng, cfg.ds_task_bits_min, cfg.ds_task_bits_max));
        draw.ds_scatter.push_back(unit_gaussian(rng));
      }
      for (std::size_t k = 0; k < dev.dt.size(); ++k) {
        draw.dt_scatter.push_back(unit_gaussian(rng));
      }
      slot.push_back(std::move(draw));
    }
  }
  return s;
}

UavLinkState link_state(const ScenarioConfig& cfg, const Vec3& uav, const UavDevices& devices,
                        const UavSlotDraw& draw) {
  UavLinkState ls;
  ls.ds_bits = draw.ds_bits;
  const int k_ds = static_cast<int>(devices.ds.size());
  const int k_dt = static_cast<int>(devices.dt.size());
  for (int k = 0; k < k_ds; ++k) {
    const double g = device_uav_gain(devices.ds[k], uav, cfg.channel, draw.ds_scatter[k]);
    ls.ds_rates.push_back(device_uav_rate(TaskClass::kDelaySensitive, g, cfg.channel, k_ds));
    ls.total_ds_bits += draw.ds_bits[k];
  }
  for (int k = 0; k < k_dt; ++k) {
    const double g = device_uav_gain(devices.dt[k], uav, cfg.channel, draw.dt_scatter[k]);
    const double r = device_uav_rate(TaskClass::kDelayTolerant, g, cfg.channel, k_dt);
    ls.dt_rates.push_back(r);
    ls.collect_rate_bps += r;
  }
  ls.offload_time_s = ds_offload_time(ls.ds_bits, ls.ds_rates);
  return ls;
}

}  // namespace csamn
