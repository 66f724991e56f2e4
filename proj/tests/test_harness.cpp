#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "csamn/experiment.hpp"
#include "csamn/report.hpp"

using namespace csamn;

namespace {

ScenarioConfig small_config() {
  ScenarioConfig cfg;
  cfg.num_uavs = 3;
  cfg.num_slots = 4;
  cfg.ga.population = 10;
  cfg.ga.generations = 5;
  return cfg;
}

std::string csv_of(const SweepTable& t) {
  std::ostringstream out;
  write_csv(out, table_rows(t, true));
  return out.str();
}

}  // namespace

TEST(Experiment, ZeroSlots) {
  ScenarioConfig cfg = small_config();
  cfg.num_slots = 0;
  const ExperimentResult r = run_experiment(cfg);
  EXPECT_TRUE(r.slots.empty());
  EXPECT_EQ(r.utility, 0.0);
  EXPECT_EQ(r.avg_ds_delay_s, 0.0);
}

TEST(Experiment, TotalsMatchSlotSeries) {
  const ExperimentResult r = run_experiment(small_config());
  ASSERT_EQ(r.slots.size(), 4u);
  double utility = 0.0;
  double energy = 0.0;
  for (const SlotMetrics& m : r.slots) {
    utility += m.utility;
    energy += m.energy.total();
    EXPECT_NEAR(m.utility, m.data_bits - 10.0 * m.energy.total(), 1e-3);
  }
  EXPECT_NEAR(r.utility, utility, 1e-6 * std::abs(utility));
  EXPECT_NEAR(r.energy.total(), energy, 1e-9 * energy);
  EXPECT_GT(r.wall_clock_s, 0.0);
}

TEST(Experiment, StorageCarriesOver) {
  const ExperimentResult r = run_experiment(small_config());
  for (const SlotMetrics& m : r.slots) {
    for (double rem : m.remaining_bits) {
      EXPECT_GE(rem, 0.0);
      EXPECT_LE(rem, small_config().storage_capacity_bits);
    }
  }
}

TEST(Experiment, AtsmNotAboveJcorm) {
  ScenarioConfig cfg = small_config();
  const double jcorm = run_experiment(cfg).utility;
  cfg.algorithm = Algorithm::kAtsm;
  EXPECT_LE(run_experiment(cfg).utility, jcorm);
}

TEST(Sweep, DeterministicBytes) {
  const ScenarioConfig cfg = small_config();
  const std::vector<Algorithm> algos{Algorithm::kJcorm, Algorithm::kGa};
  const SweepTable a = run_sweep(cfg, "B_LEO", {20e6, 40e6}, {1, 2, 3}, algos, 1);
  const SweepTable b = run_sweep(cfg, "B_LEO", {20e6, 40e6}, {1, 2, 3}, algos, 4);
  EXPECT_EQ(csv_of(a), csv_of(b));
  ASSERT_EQ(a.cells.size(), 12u);
  EXPECT_EQ(a.cells[0].algorithm, Algorithm::kJcorm);
  EXPECT_EQ(a.cells[3].axis_value, 40e6);
  EXPECT_EQ(a.cells[5].seed, 3u);
}

TEST(Sweep, UnknownAxisIsConfigError) {
  EXPECT_THROW(run_sweep(small_config(), "not_a_field", {1.0}, {1}, {Algorithm::kJcorm}, 1), ConfigError);
}

TEST(Sweep, InvalidValueIsConfigError) {
  EXPECT_THROW(run_sweep(small_config(), "omega", {-1.0}, {1}, {Algorithm::kJcorm}, 1), ConfigError);
}

TEST(Sweep, AxisAliases) {
  ScenarioConfig cfg;
  apply_axis(cfg, "K_0", 5.0);
  EXPECT_EQ(cfg.channel.rician_k, 5.0);
  apply_axis(cfg, "ds_task_bits", 4e6);
  EXPECT_EQ(cfg.ds_task_bits_min, 4e6);
  EXPECT_EQ(cfg.ds_task_bits_max, 4e6);
  apply_axis(cfg, "pmax", 0.5);
  EXPECT_EQ(cfg.link.max_power_w, 0.5);
  EXPECT_LE(cfg.link.dt_power_w, 0.5);
  apply_axis(cfg, "noise_power_dbm", -70.0);
  EXPECT_NEAR(cfg.link.noise_power_w, 1e-10, 1e-24);
}

TEST(Report, CsvRoundTripReproducesAggregates) {
  const SweepTable t = run_sweep(small_config(), "omega", {0.1, 10.0}, {1, 2, 3}, {Algorithm::kJcorm}, 1);
  const std::vector<MetricRow> rows = table_rows(t, true);
  std::ostringstream out;
  write_csv(out, rows);
  std::istringstream in(out.str());
  const std::vector<MetricRow> back = read_csv(in);
  ASSERT_EQ(back.size(), rows.size());
  const std::vector<MetricRow> again = aggregate_rows(back);
  std::vector<MetricRow> original;
  for (const MetricRow& r : back) {
    if (r.record == "mean" || r.record == "stddev") original.push_back(r);
  }
  ASSERT_EQ(again.size(), original.size());
  for (std::size_t i = 0; i < again.size(); ++i) {
    EXPECT_EQ(again[i].record, original[i].record);
    for (std::size_t k = 0; k < 9; ++k) EXPECT_EQ(again[i].metrics[k], original[i].metrics[k]);
  }
}

TEST(Report, MalformedCsv) {
  std::istringstream in("header\nrun,jcorm,none,0,1\n");
  EXPECT_THROW(read_csv(in), std::runtime_error);
}

TEST(Report, SvgIsSelfContained) {
  const SweepTable t = run_sweep(small_config(), "K_0", {0.0, 10.0}, {1, 2}, {Algorithm::kJcorm}, 1);
  const std::vector<MetricRow> agg = aggregate_rows(table_rows(t, false));
  const std::string svg = svg_line_plot("utility", "K_0", "utility", metric_series(agg, 0));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("jcorm"), std::string::npos);
  EXPECT_EQ(svg.find("href"), std::string::npos);
}

TEST(Parsing, SeedLists) {
  EXPECT_EQ(parse_seed_list("1-3,7"), (std::vector<std::uint64_t>{1, 2, 3, 7}));
  EXPECT_THROW(parse_seed_list("5-2"), ConfigError);
  EXPECT_THROW(parse_seed_list("x"), ConfigError);
  EXPECT_THROW(parse_seed_list(""), ConfigError);
  EXPECT_EQ(parse_value_list("20e6, 3.5").size(), 2u);
  EXPECT_THROW(parse_value_list("1,abc"), ConfigError);
  EXPECT_EQ(parse_algorithm_list("jcorm,no-offload").back(), Algorithm::kNoOffload);
}
