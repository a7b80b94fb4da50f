#include "crl/model.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "crl/errors.hpp"

namespace {

crl::SystemParams demo_params(int n) {
  crl::SystemParams p;
  p.n = n;
  p.p_t = 5.0;
  p.p_j = 1.0;
  p.p_max = 10.0;
  p.alpha = 0.3;
  p.theta = 1.0;
  p.sigma_w2 = p.sigma_c2 = p.sigma_b2 = crl::db_to_linear(-5.0);
  p.epsilon_c = 0.2;
  return p;
}

TEST(DbToLinear, KnownValues) {
  EXPECT_DOUBLE_EQ(crl::db_to_linear(0.0), 1.0);
  EXPECT_NEAR(crl::db_to_linear(-5.0), 0.31623, 1e-5);
  EXPECT_DOUBLE_EQ(crl::db_to_linear(10.0), 10.0);
}

TEST(SystemParams, ValidationCatchesBadFields) {
  crl::SystemParams p = demo_params(4);
  EXPECT_TRUE(p.validate().empty());
  p.epsilon_c = 1.0;
  p.p_t = 20.0;  // above p_max
  const auto issues = p.validate();
  EXPECT_EQ(issues.size(), 2u);
  EXPECT_THROW(p.validate_or_throw(), crl::invalid_parameter);
}

TEST(SampleRealization, SameSeedReproducesBitExactly) {
  const crl::SystemParams p = demo_params(6);
  crl::Rng r1(123);
  const auto a1 = crl::sample_realization(p, r1);
  const auto a2 = crl::sample_realization(p, r1);
  crl::Rng r2(123);
  const auto b1 = crl::sample_realization(p, r2);
  const auto b2 = crl::sample_realization(p, r2);
  EXPECT_EQ(a1.g_ac, b1.g_ac);
  EXPECT_EQ(a2.g_jw, b2.g_jw);
  EXPECT_EQ(a1.g_aw, b1.g_aw);
  EXPECT_NE(a1.g_ac, a2.g_ac);  // two calls advance the stream
}

TEST(SampleRealization, GainsAreUnitExponential) {
  const crl::SystemParams p = demo_params(1);
  crl::Rng rng(7);
  const int trials = 100000;
  std::vector<double> xs;
  xs.reserve(trials);
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < trials; ++i) {
    const double g = crl::sample_realization(p, rng).g_ac[0];
    xs.push_back(g);
    sum += g;
    sumsq += g * g;
  }
  const double mean = sum / trials;
  const double var = sumsq / trials - mean * mean;
  EXPECT_NEAR(mean, 1.0, 0.01);
  EXPECT_NEAR(var, 1.0, 0.05);

  // Distribution check: sup distance between the empirical CDF and 1-e^-x.
  std::sort(xs.begin(), xs.end());
  double sup = 0.0;
  for (int i = 0; i < trials; ++i) {
    sup = std::max(sup, std::fabs((i + 1.0) / trials - (1.0 - std::exp(-xs[i]))));
  }
  EXPECT_LE(sup, 0.01);
}

TEST(SelectRrs, SingleRelayAlwaysZero) {
  crl::Rng rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(crl::select_rrs(1, rng), 0);
}

TEST(SelectRrs, UniformOverFourRelays) {
  crl::Rng rng(2);
  int counts[4] = {0, 0, 0, 0};
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) ++counts[crl::select_rrs(4, rng)];
  for (int k = 0; k < 4; ++k)
    EXPECT_NEAR(static_cast<double>(counts[k]) / trials, 0.25, 0.01);
}

TEST(SelectRrs, InRangeAndRejectsZero) {
  crl::Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const int idx = crl::select_rrs(50, rng);
    ASSERT_GE(idx, 0);
    ASSERT_LT(idx, 50);
  }
  EXPECT_THROW(crl::select_rrs(0, rng), crl::invalid_parameter);
}

TEST(SelectMmrs, DirectArgmax) {
  const std::vector<double> g_ac = {3.0, 1.0};
  const std::vector<double> g_cb = {0.5, 2.0};
  EXPECT_EQ(crl::select_mmrs(g_ac, g_cb), 1);
}

TEST(SelectMmrs, TiesBreakToLowestIndex) {
  const std::vector<double> g(4, 1.5);
  EXPECT_EQ(crl::select_mmrs(g, g), 0);
}

TEST(SelectMmrs, MatchesExhaustiveScan) {
  crl::Rng rng(11);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> a(5), b(5);
    for (auto& x : a) x = rng.exponential();
    for (auto& x : b) x = rng.exponential();
    int best = 0;
    for (int i = 1; i < 5; ++i) {
      if (std::min(a[i], b[i]) > std::min(a[best], b[best])) best = i;
    }
    EXPECT_EQ(crl::select_mmrs(a, b), best);
  }
}

TEST(SelectMmrs, InvariantUnderCommonRescaling) {
  crl::Rng rng(12);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> a(6), b(6);
    for (auto& x : a) x = rng.exponential();
    for (auto& x : b) x = rng.exponential();
    const int base = crl::select_mmrs(a, b);
    const double scale = 0.01 + 100.0 * rng.uniform01();
    std::vector<double> as = a, bs = b;
    for (auto& x : as) x *= scale;
    for (auto& x : bs) x *= scale;
    EXPECT_EQ(crl::select_mmrs(as, bs), base);
  }
}

TEST(SelectMmrs, RejectsEmpty) {
  const std::vector<double> empty;
  EXPECT_THROW(crl::select_mmrs(empty, empty), crl::invalid_parameter);
}

TEST(SelectJammers, DirectFilter) {
  const std::vector<double> gains = {0.1, 0.5, 0.2};
  const auto set = crl::select_jammers(gains, 0.3, 0, crl::Hop::first);
  EXPECT_EQ(set.l, 1);
  ASSERT_EQ(set.members.size(), 1u);
  EXPECT_EQ(set.members[0], 2);
}

TEST(SelectJammers, HugeAlphaTakesAllOthers) {
  const std::vector<double> gains = {0.1, 7.0, 2.0, 9.0};
  const auto set = crl::select_jammers(gains, 1e9, 2, crl::Hop::second);
  EXPECT_EQ(set.l, 3);
  EXPECT_TRUE(std::find(set.members.begin(), set.members.end(), 2) == set.members.end());
}

TEST(SelectJammers, RejectsNonpositiveAlpha) {
  const std::vector<double> gains = {0.1, 0.2};
  EXPECT_THROW(crl::select_jammers(gains, 0.0, 0, crl::Hop::first), crl::invalid_parameter);
}

TEST(SelectJammers, MeanCountMatchesBinomial) {
  // E[l] = (n-1)(1 - e^-alpha) over fresh realizations.
  const int n = 8;
  const double alpha = 0.6;
  crl::SystemParams p = demo_params(n);
  p.alpha = alpha;
  crl::Rng rng(31);
  const int trials = 100000;
  long long total = 0;
  for (int i = 0; i < trials; ++i) {
    const auto r = crl::sample_realization(p, rng);
    total += crl::select_jammers(r.g_jc, alpha, 0, crl::Hop::first).l;
  }
  const double expected = (n - 1) * (1.0 - std::exp(-alpha));
  EXPECT_NEAR(static_cast<double>(total) / trials, expected, 0.01 * (n - 1));
}

TEST(SelectJammers, CountNonincreasingAsAlphaShrinks) {
  crl::SystemParams p = demo_params(10);
  crl::Rng rng(17);
  const auto r = crl::sample_realization(p, rng);
  int prev = 1 << 30;
  for (double alpha : {2.0, 1.0, 0.5, 0.25, 0.1}) {
    const int l = crl::select_jammers(r.g_jc, alpha, 3, crl::Hop::first).l;
    EXPECT_LE(l, prev);
    prev = l;
  }
}

TEST(DefaultJammerCount, RoundsBinomialMean) {
  crl::SystemParams p = demo_params(20);
  EXPECT_EQ(p.default_jammer_count(), 5);  // 19 * (1 - e^-0.3) = 4.924
  p.n = 1;
  EXPECT_EQ(p.default_jammer_count(), 0);
}

}  // namespace
