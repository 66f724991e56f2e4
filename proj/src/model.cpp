#include "csamn/model.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace csamn {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ModelError(what);
}

}  // namespace

double distance(const Vec3& a, const Vec3& b) {
  return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

void SatelliteGeometry::validate() const {
  require(altitude_m > 0.0, "satellite altitude must be positive");
  require(earth_radius_m > 0.0, "earth radius must be positive");
  require(elevation_rad >= 0.0 && elevation_rad <= std::numbers::pi / 2.0,
          "elevation must lie in [0, pi/2]");
  require(sat_speed_mps > 0.0, "satellite speed must be positive");
  require(light_speed_mps > 0.0, "speed of light must be positive");
}

double coverage_angle(const SatelliteGeometry& geom) {
  geom.validate();
  const double ratio = geom.earth_radius_m / (geom.earth_radius_m + geom.altitude_m);
  const double angle = std::acos(ratio * std::cos(geom.elevation_rad)) - geom.elevation_rad;
  // acos(cos(pi/2)) - pi/2 rounds to a tiny negative number at zenith.
  return std::max(angle, 0.0);
}

double visibility_window(const SatelliteGeometry& geom) {
  return 2.0 * (geom.earth_radius_m + geom.altitude_m) * coverage_angle(geom) / geom.sat_speed_mps;
}

double uav_sat_distance(const SatelliteGeometry& geom) {
  geom.validate();
  const double cos_el = std::cos(geom.elevation_rad);
  if (geom.elevation_rad >= std::numbers::pi / 2.0 || cos_el <= 1e-12) {
    throw ModelError("UAV-satellite distance is undefined at 90 degrees elevation");
  }
  return (geom.earth_radius_m + geom.altitude_m) * std::sin(coverage_angle(geom)) / cos_el;
}

double propagation_delay(const SatelliteGeometry& geom) {
  return uav_sat_distance(geom) / geom.light_speed_mps;
}

void MaritimeChannelParams::validate() const {
  require(pathloss_coeff >= 0.0, "path-loss coefficient must be non-negative");
  require(rician_k >= 0.0, "Rician factor must be non-negative");
  require(noise_power_w > 0.0, "noise power must be positive");
  require(uav_bandwidth_hz >= 0.0, "UAV bandwidth must be non-negative");
  require(ds_bandwidth_fraction >= 0.0 && ds_bandwidth_fraction <= 1.0,
          "DS bandwidth fraction must lie in [0, 1]");
  require(ds_device_power_w >= 0.0 && dt_device_power_w >= 0.0,
          "device powers must be non-negative");
}

double large_scale_gain(double distance_m, const MaritimeChannelParams& params) {
  if (!(distance_m > 0.0)) throw ModelError("device-UAV distance must be positive");
  return params.pathloss_coeff * std::pow(distance_m, -params.pathloss_exp);
}

double rician_power(std::complex<double> scatter, double k_factor) {
  if (k_factor < 0.0) throw ModelError("Rician factor must be non-negative");
  if (std::isinf(k_factor)) return 1.0;
  const double los = std::sqrt(k_factor / (1.0 + k_factor));
  const double nlos = std::sqrt(1.0 / (1.0 + k_factor));
  return std::norm(los + nlos * scatter);
}

double device_uav_gain(const Vec3& device, const Vec3& uav, const MaritimeChannelParams& params,
                       std::complex<double> scatter) {
  return large_scale_gain(distance(device, uav), params) * rician_power(scatter, params.rician_k);
}

double device_uav_rate(TaskClass kind, double gain, const MaritimeChannelParams& params,
                       int group_size) {
  if (group_size < 1) throw ModelError("device group must contain at least one device");
  const bool ds = kind == TaskClass::kDelaySensitive;
  const double share = ds ? params.ds_bandwidth_fraction : 1.0 - params.ds_bandwidth_fraction;
  const double power = ds ? params.ds_device_power_w : params.dt_device_power_w;
  const double bandwidth = share * params.uav_bandwidth_hz / group_size;
  return bandwidth * std::log2(1.0 + power * gain / params.noise_power_w);
}

void SatLinkParams::validate() const {
  require(ref_gain >= 0.0 && antenna_gain >= 0.0, "link gains must be non-negative");
  require(ref_distance_m > 0.0, "reference distance must be positive");
  require(bandwidth_hz >= 0.0, "satellite bandwidth must be non-negative");
  require(max_power_w >= 0.0 && dt_power_w >= 0.0, "UAV powers must be non-negative");
  require(dt_power_w <= max_power_w, "DT uplink power cannot exceed the UAV power limit");
  require(noise_power_w > 0.0, "noise power must be positive");
}

double uav_leo_gain(double distance_m, const SatLinkParams& link) {
  if (!(distance_m > 0.0)) throw ModelError("UAV-satellite distance must be positive");
  const double scaled = distance_m / link.ref_distance_m;
  return link.ref_gain * link.antenna_gain / (scaled * scaled);
}

double uav_leo_rate(double power_w, double gain, const SatLinkParams& link, int num_uavs) {
  if (num_uavs < 1) throw ModelError("at least one UAV must share the satellite band");
  if (power_w < 0.0) throw ModelError("transmit power must be non-negative");
  return link.bandwidth_hz / num_uavs * std::log2(1.0 + power_w * gain / link.noise_power_w);
}

void ComputeParams::validate() const {
  require(cycles_per_bit > 0.0, "cycles per bit must be positive");
  require(uav_cpu_hz > 0.0 && leo_cpu_hz > 0.0, "CPU frequencies must be positive");
  require(switch_cap > 0.0, "switched capacitance must be positive");
}

double ds_offload_time(std::span<const double> task_bits, std::span<const double> rates) {
  if (task_bits.size() != rates.size()) throw ModelError("task and rate lists differ in length");
  double slowest = 0.0;
  for (std::size_t k = 0; k < task_bits.size(); ++k) {
    if (task_bits[k] <= 0.0) continue;
    if (!(rates[k] > 0.0)) throw ModelError("DS device has data but zero uplink rate");
    slowest = std::max(slowest, task_bits[k] / rates[k]);
  }
  return slowest;
}

double DsTiming::total() const { return offload_s + std::max(local_s, satellite_branch()); }

DsTiming ds_completion_time(const UavDecision& decision, const DsLoad& load,
                            double leo_rate_sens, const ComputeParams& compute,
                            double prop_delay_s) {
  const double ratio = decision.offload_ratio;
  DsTiming t;
  t.offload_s = load.offload_time_s;
  t.local_s = compute.cycles_per_bit * (1.0 - ratio) * load.total_bits / compute.uav_cpu_hz;
  const double offloaded = ratio * load.total_bits;
  if (offloaded <= 0.0) return t;
  if (!(decision.leo_cpu_hz > 0.0)) {
    throw ModelError("offloading requires a positive satellite CPU share");
  }
  if (!(leo_rate_sens > 0.0)) throw ModelError("offloading requires a positive uplink rate");
  t.uplink_s = offloaded / leo_rate_sens;
  t.leo_compute_s = compute.cycles_per_bit * offloaded / decision.leo_cpu_hz;
  t.propagation_s = 2.0 * prop_delay_s;
  return t;
}

DtStep dt_collection_step(const UavStorage& storage, double dt_start_s, double collect_rate_bps,
                          double leo_rate_tol, double slot_len_s) {
  if (dt_start_s < 0.0 || dt_start_s > slot_len_s) {
    throw ModelError("DT start time must lie within the slot");
  }
  DtStep step;
  const double wanted = collect_rate_bps * dt_start_s;
  const double room = std::max(storage.remaining_bits, 0.0);
  step.overflow = wanted > room;
  step.collected_bits = std::min(wanted, room);
  step.uplink_bound_bits = step.collected_bits + storage.stored_bits();
  step.uplinked_bits =
      std::min(leo_rate_tol * (slot_len_s - dt_start_s), step.uplink_bound_bits);
  const double next =
      storage.remaining_bits - step.collected_bits + step.uplinked_bits;
  step.next.capacity_bits = storage.capacity_bits;
  step.next.remaining_bits = std::clamp(next, 0.0, storage.capacity_bits);
  return step;
}

EnergyBreakdown& EnergyBreakdown::operator+=(const EnergyBreakdown& other) {
  uav_comm_j += other.uav_comm_j;
  uav_comp_j += other.uav_comp_j;
  leo_comp_j += other.leo_comp_j;
  return *this;
}

EnergyBreakdown uav_slot_energy(const UavDecision& decision, double ds_bits, double leo_rate_sens,
                                double dt_power_w, double slot_len_s,
                                const ComputeParams& compute) {
  const double ratio = decision.offload_ratio;
  const double offloaded = ratio * ds_bits;
  double uplink_s = 0.0;
  if (offloaded > 0.0) {
    if (!(leo_rate_sens > 0.0)) throw ModelError("offloading requires a positive uplink rate");
    uplink_s = offloaded / leo_rate_sens;
  }
  const double energy_per_cycle = compute.cycles_per_bit * compute.switch_cap;
  EnergyBreakdown e;
  e.uav_comm_j = decision.power_w * uplink_s + dt_power_w * (slot_len_s - decision.dt_start_s);
  e.uav_comp_j = energy_per_cycle * (1.0 - ratio) * compute.uav_cpu_hz * compute.uav_cpu_hz * ds_bits;
  e.leo_comp_j = energy_per_cycle * ratio * decision.leo_cpu_hz * decision.leo_cpu_hz * ds_bits;
  return e;
}

EnergyBreakdown slot_energy(std::span<const EnergyBreakdown> per_uav) {
  EnergyBreakdown sum;
  for (const auto& e : per_uav) sum += e;
  return sum;
}

}  // namespace csamn
