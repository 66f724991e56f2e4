// Physical model of the satellite-UAV-maritime network: pass geometry,
// device and satellite links, DS task timing, DT storage dynamics and
// energy accounting. Everything here is a pure function of its arguments.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>

namespace csamn {

/// Thrown when a model expression is evaluated outside its domain.
class ModelError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double distance(const Vec3& a, const Vec3& b);

// ---------------------------------------------------------------------------
// LEO pass geometry

struct SatelliteGeometry {
  double altitude_m = 780e3;
  double earth_radius_m = 6371e3;
  double elevation_rad = deg_to_rad(20.0);
  double sat_speed_mps = 7.5e3;
  double light_speed_mps = 3e8;

  void validate() const;
};

/// Earth-central angle covered by the satellite above the given elevation.
double coverage_angle(const SatelliteGeometry& geom);

/// Duration the satellite stays visible above the elevation mask.
double visibility_window(const SatelliteGeometry& geom);

/// Slant range from a UAV to the satellite at the elevation mask.
/// Throws ModelError at 90 degrees elevation, where the expression degenerates.
double uav_sat_distance(const SatelliteGeometry& geom);

/// One-way propagation delay over the UAV-satellite slant range.
double propagation_delay(const SatelliteGeometry& geom);

// ---------------------------------------------------------------------------
// Device -> UAV maritime link

enum class TaskClass { kDelaySensitive, kDelayTolerant };

struct MaritimeChannelParams {
  double pathloss_coeff = 1.0;
  double pathloss_exp = 2.0;
  double rician_k = 10.0;
  double noise_power_w = 1e-11;
  double uav_bandwidth_hz = 10e6;
  double ds_bandwidth_fraction = 0.6;
  double ds_device_power_w = 0.3;
  double dt_device_power_w = 0.3;

  void validate() const;
};

/// Distance-dependent path loss PL_c * d^-PL_e.
double large_scale_gain(double distance_m, const MaritimeChannelParams& params);

/// Power of the small-scale Rician coefficient for one scatter sample.
/// An infinite K factor removes the scatter term entirely.
double rician_power(std::complex<double> scatter, double k_factor);

/// Composite power gain: path loss times squared Rician magnitude.
double device_uav_gain(const Vec3& device, const Vec3& uav, const MaritimeChannelParams& params,
                       std::complex<double> scatter);

/// Per-device uplink rate. The DS class shares a fraction beta of the UAV
/// band equally among its devices; the DT class shares the rest.
double device_uav_rate(TaskClass kind, double gain, const MaritimeChannelParams& params,
                       int group_size);

// ---------------------------------------------------------------------------
// UAV -> LEO link

struct SatLinkParams {
  double ref_gain = 1e-3;       // g0, linear
  double antenna_gain = 10.0;   // G, linear
  double ref_distance_m = 1e3;  // distance at which g0 is referenced
  double bandwidth_hz = 40e6;
  double max_power_w = 1.0;
  double dt_power_w = 1.0;
  double noise_power_w = 1e-11;

  void validate() const;
};

/// Free-space style power gain g0 * G / (d / d_ref)^2.
double uav_leo_gain(double distance_m, const SatLinkParams& link);

/// FDMA share of the satellite band for one of `num_uavs` UAVs.
double uav_leo_rate(double power_w, double gain, const SatLinkParams& link, int num_uavs);

// ---------------------------------------------------------------------------
// DS task timing

struct ComputeParams {
  double cycles_per_bit = 400.0;
  double uav_cpu_hz = 2e9;
  double leo_cpu_hz = 10e9;
  double switch_cap = 1e-28;

  void validate() const;
};

/// Decision variables of one UAV in one slot.
struct UavDecision {
  double power_w = 0.0;        // DS uplink power to the satellite
  double leo_cpu_hz = 0.0;     // satellite CPU share
  double dt_start_s = 0.0;     // instant DT uplink begins
  double offload_ratio = 0.0;  // fraction of DS bits sent to the satellite
};

/// Aggregated DS workload a UAV holds after collecting from its devices.
struct DsLoad {
  double total_bits = 0.0;
  double offload_time_s = 0.0;  // slowest device -> UAV transfer
};

/// Time for the slowest DS device to hand its task to the UAV.
/// Devices with zero bits do not contribute; a device with bits but zero
/// rate is a ModelError.
double ds_offload_time(std::span<const double> task_bits, std::span<const double> rates);

struct DsTiming {
  double offload_s = 0.0;
  double local_s = 0.0;
  double uplink_s = 0.0;
  double leo_compute_s = 0.0;
  double propagation_s = 0.0;  // two-way, zero when nothing is offloaded

  double satellite_branch() const { return uplink_s + leo_compute_s + propagation_s; }
  double total() const;
};

/// Completion time of the UAV's DS workload, local and satellite parts in
/// parallel. When no bits are offloaded the satellite branch is zero.
/// Throws ModelError if bits are offloaded with no CPU share or no rate.
DsTiming ds_completion_time(const UavDecision& decision, const DsLoad& load,
                            double leo_rate_sens, const ComputeParams& compute,
                            double prop_delay_s);

// ---------------------------------------------------------------------------
// DT storage

struct UavStorage {
  double capacity_bits = 0.0;
  double remaining_bits = 0.0;

  double stored_bits() const { return capacity_bits - remaining_bits; }
};

struct DtStep {
  double collected_bits = 0.0;
  double uplinked_bits = 0.0;
  double uplink_bound_bits = 0.0;  // stored backlog plus this slot's collection
  UavStorage next;
  bool overflow = false;  // collection would exceed the free space
};

/// Collect DT data until `dt_start_s`, then uplink until the slot ends.
/// Collection beyond the free space is truncated and flagged.
DtStep dt_collection_step(const UavStorage& storage, double dt_start_s, double collect_rate_bps,
                          double leo_rate_tol, double slot_len_s);

// ---------------------------------------------------------------------------
// Energy

struct EnergyBreakdown {
  double uav_comm_j = 0.0;
  double uav_comp_j = 0.0;
  double leo_comp_j = 0.0;

  double total() const { return uav_comm_j + uav_comp_j + leo_comp_j; }
  EnergyBreakdown& operator+=(const EnergyBreakdown& other);
};

EnergyBreakdown uav_slot_energy(const UavDecision& decision, double ds_bits, double leo_rate_sens,
                                double dt_power_w, double slot_len_s,
                                const ComputeParams& compute);

EnergyBreakdown slot_energy(std::span<const EnergyBreakdown> per_uav);

}  // namespace csamn
