#include "crl/config.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

namespace {

nlohmann::json valid_json() {
  return nlohmann::json::parse(R"({
    "params": {
      "n": 20, "p_t_w": 5.0, "p_j_w": 1.0, "p_max_w": 10.0,
      "alpha": 0.3, "theta": 1.0, "epsilon_c": 0.2,
      "sigma_w2_db": -5.0, "sigma_c2_db": -5.0, "sigma_b2_w": 0.5
    },
    "sim": {"trials": 1000, "seed": 3, "mode": "scheme", "scheme": "mmrs",
            "power_mode": "fixed_pt", "workers": 2}
  })");
}

TEST(Config, ParsesValidFile) {
  std::vector<std::string> issues;
  const auto cfg = crl::parse_config(valid_json(), issues);
  ASSERT_TRUE(issues.empty()) << issues.front();
  EXPECT_EQ(cfg.params.n, 20);
  EXPECT_NEAR(cfg.params.sigma_w2, 0.31622776601683794, 1e-12);  // dB converted
  EXPECT_DOUBLE_EQ(cfg.params.sigma_b2, 0.5);                    // watts passthrough
  EXPECT_EQ(cfg.sim.mode, crl::SimMode::scheme);
  EXPECT_EQ(cfg.sim.scheme, crl::Scheme::mmrs);
  EXPECT_EQ(cfg.sim.power_mode, crl::PowerMode::fixed_pt);
  EXPECT_EQ(cfg.sim.workers, 2);
}

TEST(Config, RejectsBothUnitsForNoise) {
  auto j = valid_json();
  j["params"]["sigma_w2_w"] = 0.3;
  std::vector<std::string> issues;
  crl::parse_config(j, issues);
  ASSERT_FALSE(issues.empty());
  EXPECT_NE(issues.front().find("sigma_w2"), std::string::npos);
}

TEST(Config, RejectsMissingField) {
  auto j = valid_json();
  j["params"].erase("theta");
  std::vector<std::string> issues;
  crl::parse_config(j, issues);
  ASSERT_FALSE(issues.empty());
  EXPECT_NE(issues.front().find("theta"), std::string::npos);
}

TEST(Config, FlagsZeroTrialsWithFieldName) {
  auto j = valid_json();
  j["sim"]["trials"] = 0;
  std::vector<std::string> issues;
  crl::parse_config(j, issues);
  bool found = false;
  for (const auto& s : issues) found = found || s.find("sim.trials") != std::string::npos;
  EXPECT_TRUE(found);
}

TEST(Config, FlagsBadEpsilon) {
  auto j = valid_json();
  j["params"]["epsilon_c"] = 1.5;
  std::vector<std::string> issues;
  crl::parse_config(j, issues);
  bool found = false;
  for (const auto& s : issues) found = found || s.find("epsilon_c") != std::string::npos;
  EXPECT_TRUE(found);
}

TEST(Config, SweepValidation) {
  auto j = valid_json();
  j["sweep"] = {{"variable", "p_t_w"}, {"values", {1.0, 2.0, 4.0}}};
  std::vector<std::string> issues;
  auto cfg = crl::parse_config(j, issues);
  ASSERT_TRUE(issues.empty());
  ASSERT_TRUE(cfg.sweep.has_value());
  EXPECT_EQ(cfg.sweep->values.size(), 3u);

  j["sweep"]["values"] = {2.0, 1.0};
  issues.clear();
  crl::parse_config(j, issues);
  EXPECT_FALSE(issues.empty());

  j["sweep"]["values"] = {1.0, 2.0};
  j["sweep"]["variable"] = "bogus";
  issues.clear();
  crl::parse_config(j, issues);
  bool found = false;
  for (const auto& s : issues) found = found || s.find("bogus") != std::string::npos;
  EXPECT_TRUE(found);
}

TEST(Config, SweepApplication) {
  std::vector<std::string> issues;
  auto cfg = crl::parse_config(valid_json(), issues);
  ASSERT_TRUE(issues.empty());
  EXPECT_TRUE(crl::apply_sweep_value(cfg, "alpha", 0.7));
  EXPECT_DOUBLE_EQ(cfg.params.alpha, 0.7);
  EXPECT_TRUE(crl::apply_sweep_value(cfg, "n", 7.0));
  EXPECT_EQ(cfg.params.n, 7);
  EXPECT_FALSE(crl::apply_sweep_value(cfg, "nope", 1.0));
}

TEST(Config, LoadReportsMissingFile) {
  std::vector<std::string> issues;
  crl::load_config("/nonexistent/path.json", issues);
  ASSERT_FALSE(issues.empty());
  EXPECT_NE(issues.front().find("cannot open"), std::string::npos);
}

}  // namespace
