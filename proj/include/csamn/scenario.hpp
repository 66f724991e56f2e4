// Seeded network realisations: UAV and device placement plus per-slot
// fading samples and DS task sizes.
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "csamn/config.hpp"
#include "csamn/model.hpp"

namespace csamn {

struct UavDevices {
  std::vector<Vec3> ds;
  std::vector<Vec3> dt;
};

struct Placement {
  std::vector<Vec3> uavs;
  std::vector<UavDevices> devices;  // one entry per UAV
};

// Raw random draws for one UAV in one slot. Fading samples are unit-variance
// complex Gaussians; they are kept raw so the Rician factor can change
// without changing the random stream.
struct UavSlotDraw {
  std::vector<double> ds_bits;
  std::vector<std::complex<double>> ds_scatter;
  std::vector<std::complex<double>> dt_scatter;
};

struct NetworkState {
  Placement placement;
  std::vector<std::vector<UavSlotDraw>> slots;  // [slot][uav]
};

/// Per-UAV link quantities derived from a draw under a given configuration.
struct UavLinkState {
  std::vector<double> ds_bits;
  std::vector<double> ds_rates;
  std::vector<double> dt_rates;
  double total_ds_bits = 0.0;
  double offload_time_s = 0.0;
  double collect_rate_bps = 0.0;
};

Placement place_nodes(const ScenarioConfig& cfg, std::uint64_t seed);

/// Deterministic in (cfg, seed). Draw streams do not depend on the Rician
/// factor or the task size range, so sweeps over them use common random numbers.
NetworkState generate_scenario(const ScenarioConfig& cfg, std::uint64_t seed);

UavLinkState link_state(const ScenarioConfig& cfg, const Vec3& uav, const UavDevices& devices,
                        const UavSlotDraw& draw);

/// SplitMix64 finaliser, used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace csamn
