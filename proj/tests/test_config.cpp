#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "csamn/config.hpp"

using namespace csamn;

TEST(Config, DefaultsValidate) {
  ScenarioConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.num_uavs, 6);
  EXPECT_DOUBLE_EQ(cfg.link.bandwidth_hz, 40e6);
  EXPECT_DOUBLE_EQ(cfg.storage_capacity_bits, 12e9);
  EXPECT_DOUBLE_EQ(cfg.storage_remaining_bits, 8e9);
  EXPECT_NEAR(cfg.link.noise_power_w, 1e-11, 1e-25);
  EXPECT_NEAR(cfg.link.ref_gain, 1e-3, 1e-18);
}

TEST(Config, FormatParseRoundTrip) {
  ScenarioConfig cfg;
  cfg.num_uavs = 3;
  cfg.weight_omega = 0.125;
  cfg.mode = DeadlineMode::kPaperRelaxed;
  cfg.algorithm = Algorithm::kGa;
  cfg.channel.rician_k = 4.5;
  cfg.seed = 987654321;
  std::istringstream in(format_config(cfg));
  const ScenarioConfig back = parse_config(in);
  for (const std::string& key : config_keys()) {
    EXPECT_EQ(get_config_value(back, key), get_config_value(cfg, key)) << key;
  }
}

TEST(Config, UnitConversions) {
  ScenarioConfig cfg;
  set_config_value(cfg, "noise_power_dbm", "-70");
  EXPECT_NEAR(cfg.link.noise_power_w, 1e-10, 1e-24);
  set_config_value(cfg, "elevation_deg", "30");
  EXPECT_NEAR(cfg.geometry.elevation_rad, std::acos(-1.0) / 6.0, 1e-15);
  EXPECT_EQ(get_config_value(cfg, "elevation_deg"), "30");
}

TEST(Config, UnknownKeyIsAnError) {
  std::istringstream in("num_uavs = 2\nbogus_key = 1\n");
  try {
    parse_config(in);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(Config, MalformedValues) {
  ScenarioConfig cfg;
  EXPECT_THROW(set_config_value(cfg, "num_uavs", "two"), ConfigError);
  EXPECT_THROW(set_config_value(cfg, "weight_omega", "1.5x"), ConfigError);
  EXPECT_THROW(set_config_value(cfg, "mode", "loose"), ConfigError);
  std::istringstream in("num_uavs 2\n");
  EXPECT_THROW(parse_config(in), ConfigError);
}

TEST(Config, CommentsAndBlankLines) {
  std::istringstream in("# header\n\nnum_uavs = 2  # trailing\n  algorithm = atsm\n");
  const ScenarioConfig cfg = parse_config(in);
  EXPECT_EQ(cfg.num_uavs, 2);
  EXPECT_EQ(cfg.algorithm, Algorithm::kAtsm);
}

TEST(Config, InvariantViolations) {
  ScenarioConfig cfg;
  cfg.num_slots = 50;  // 500 s exceeds the visibility window
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = ScenarioConfig{};
  cfg.storage_remaining_bits = cfg.storage_capacity_bits + 1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = ScenarioConfig{};
  cfg.weight_omega = -1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = ScenarioConfig{};
  cfg.ga.crossover_rate = 1.5;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = ScenarioConfig{};
  cfg.ds_devices_min = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Config, EnumNames) {
  for (Algorithm a : {Algorithm::kJcorm, Algorithm::kAtsm, Algorithm::kGa, Algorithm::kNoOffload}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
  EXPECT_EQ(to_string(Algorithm::kNoOffload), "no-offload");
  EXPECT_EQ(parse_mode("paper-relaxed"), DeadlineMode::kPaperRelaxed);
  EXPECT_EQ(parse_placement("random"), UavPlacement::kRandom);
}

TEST(Config, EveryKeyIsDocumented) {
  for (const std::string& key : config_keys()) EXPECT_FALSE(config_key_doc(key).empty()) << key;
}
