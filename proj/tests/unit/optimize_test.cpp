#include "crl/optimize.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

constexpr double kNoise = 0.31622776601683794;

crl::SystemParams base_params(int n, double eps_c) {
  crl::SystemParams p;
  p.n = n;
  p.p_t = 5.0;
  p.p_j = 1.0;
  p.p_max = 10.0;
  p.alpha = 0.3;
  p.theta = 1.0;
  p.sigma_w2 = p.sigma_c2 = p.sigma_b2 = kNoise;
  p.epsilon_c = eps_c;
  return p;
}

crl::SimConfig quick_cfg(long long trials = 20000) {
  crl::SimConfig cfg;
  cfg.trials = trials;
  cfg.seed = 77;
  return cfg;
}

TEST(MaxCovertRate, VacuousConstraintHitsPowerCap) {
  // eps_c ~ 1: any positive zeta* qualifies; the rate is increasing in P_T,
  // so the cap binds. n=5 keeps the published form out of its clamped zone.
  const auto p = base_params(5, 0.999);
  const auto r = crl::max_covert_rate(crl::Scheme::rrs, p, quick_cfg());
  EXPECT_EQ(r.binding, crl::BindingConstraint::power_cap);
  EXPECT_DOUBLE_EQ(r.p_t_star, p.p_max);
  EXPECT_GT(r.r_star, 0.0);
}

TEST(MaxCovertRate, NoJammingMakesTinyEpsilonInfeasible) {
  // Without jamming noise at the warden, the infinite-sample detector is
  // essentially perfect, so zeta* ~ 0 and a tiny eps_c cannot be met.
  auto p = base_params(5, 1e-6);
  p.alpha = 1e-12;  // no relay qualifies as a jammer
  auto cfg = quick_cfg();
  cfg.jammer_count = 0;
  const auto r = crl::max_covert_rate(crl::Scheme::rrs, p, cfg);
  EXPECT_EQ(r.binding, crl::BindingConstraint::none_feasible);
  EXPECT_EQ(r.r_star, 0.0);
}

TEST(MaxCovertRate, FeasibleSolutionsRespectResidual) {
  for (double eps : {0.5, 0.7, 0.9}) {
    const auto p = base_params(5, eps);
    const auto r = crl::max_covert_rate(crl::Scheme::rrs, p, quick_cfg());
    if (r.binding != crl::BindingConstraint::none_feasible) {
      EXPECT_GE(r.zeta_at_star - (1.0 - eps), -1e-9) << "eps=" << eps;
      EXPECT_LE(r.p_t_star, p.p_max);
    }
  }
}

TEST(MaxCovertRate, BeatsEveryFeasibleTraceProbe) {
  const auto p = base_params(5, 0.8);
  const auto r = crl::max_covert_rate(crl::Scheme::rrs, p, quick_cfg());
  ASSERT_NE(r.binding, crl::BindingConstraint::none_feasible);
  for (const auto& probe : r.trace) {
    if (probe.feasible) {
      EXPECT_GE(r.r_star, probe.covert_rate - 1e-12);
    }
  }
  EXPECT_GE(r.trace.size(), 8u);
}

TEST(MaxCovertRate, MonotoneInCovertnessBudget) {
  double prev = -1.0;
  for (double eps : {0.6, 0.7, 0.8, 0.9}) {
    const auto p = base_params(5, eps);
    const auto r = crl::max_covert_rate(crl::Scheme::rrs, p, quick_cfg());
    EXPECT_GE(r.r_star, prev - 1e-9) << "eps=" << eps;
    prev = r.r_star;
  }
}

TEST(MaxCovertRate, MmrsChannelInversionConstraintIsPowerIndependent) {
  // Averaged zeta* under channel inversion does not involve P_T: all grid
  // probes carry the same constraint value.
  const auto p = base_params(8, 0.3);
  auto cfg = quick_cfg(10000);
  const auto r = crl::max_covert_rate(crl::Scheme::mmrs, p, cfg);
  ASSERT_GE(r.trace.size(), 2u);
  for (const auto& probe : r.trace) {
    EXPECT_EQ(probe.zeta_star, r.trace.front().zeta_star);
  }
  if (r.binding != crl::BindingConstraint::none_feasible) {
    EXPECT_EQ(r.binding, crl::BindingConstraint::power_cap);
    EXPECT_DOUBLE_EQ(r.p_t_star, p.p_max);
  }
}

TEST(MaxCovertRate, MmrsFixedPowerModeUsesTheoremForm) {
  const auto p = base_params(5, 0.999);
  auto cfg = quick_cfg();
  cfg.power_mode = crl::PowerMode::fixed_pt;
  const auto r = crl::max_covert_rate(crl::Scheme::mmrs, p, cfg);
  EXPECT_EQ(r.binding, crl::BindingConstraint::power_cap);
  EXPECT_GT(r.r_star, 0.0);
}

TEST(MaxCovertRate, RejectsBadArguments) {
  const auto p = base_params(5, 0.5);
  EXPECT_THROW(crl::max_covert_rate(crl::Scheme::rrs, p, quick_cfg(), 4),
               crl::invalid_parameter);
  EXPECT_THROW(crl::max_covert_rate(crl::Scheme::rrs, p, quick_cfg(), 24, 0.0),
               crl::invalid_parameter);
}

TEST(MaxCovertRate, DeterministicGivenSeed) {
  const auto p = base_params(5, 0.8);
  const auto a = crl::max_covert_rate(crl::Scheme::rrs, p, quick_cfg());
  const auto b = crl::max_covert_rate(crl::Scheme::rrs, p, quick_cfg());
  EXPECT_EQ(a.p_t_star, b.p_t_star);
  EXPECT_EQ(a.r_star, b.r_star);
  EXPECT_EQ(a.trace.size(), b.trace.size());
}

}  // namespace
