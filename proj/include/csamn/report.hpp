// CSV and SVG output for experiment tables.
//
// CSV columns:
//   record      slot | run | mean | stddev
//   algorithm   jcorm | atsm | ga | no-offload
//   axis        swept parameter, "none" for single runs and comparisons
//   axis_value  value of the swept parameter
//   seed        scenario seed (empty on mean/stddev rows)
//   slot        slot index (empty unless record = slot)
//   utility     bit - omega * J
//   data_bits   DT bits delivered to the satellite
//   energy_j    total energy (J), then its three parts
//   uav_comm_j, uav_comp_j, leo_comp_j
//   ds_delay_s  mean DS completion time (s)
//   flagged     slot: 0/1; run: number of flagged slots
//   iterations  alternating-loop iterations (GA: generations)
// Numbers carry 9 significant digits. Mean and stddev rows are computed from
// the rounded run rows, so re-reading a file reproduces them exactly.
#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "csamn/experiment.hpp"

namespace csamn {

inline constexpr std::array<const char*, 9> kMetricNames = {
    "utility",    "data_bits",  "energy_j",   "uav_comm_j", "uav_comp_j",
    "leo_comp_j", "ds_delay_s", "flagged",    "iterations"};

struct MetricRow {
  std::string record;
  std::string algorithm;
  std::string axis;
  double axis_value = 0.0;
  std::string seed;  // empty on aggregate rows
  int slot = -1;     // -1 unless record == "slot"
  std::array<double, 9> metrics{};
};

/// Run rows (and slot rows when requested) followed by mean/stddev rows.
std::vector<MetricRow> table_rows(const SweepTable& table, bool include_slots);

/// Mean and sample stddev per (algorithm, axis value) over the run rows.
std::vector<MetricRow> aggregate_rows(const std::vector<MetricRow>& rows);

void write_csv(std::ostream& out, const std::vector<MetricRow>& rows);
std::vector<MetricRow> read_csv(std::istream& in);

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> mean;
  std::vector<double> stddev;
};

/// Self-contained SVG line plot with +-1 stddev error bars.
std::string svg_line_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                          const std::vector<PlotSeries>& series);

/// Series of one metric per algorithm from aggregate rows.
std::vector<PlotSeries> metric_series(const std::vector<MetricRow>& aggregates, std::size_t metric);

}  // namespace csamn
