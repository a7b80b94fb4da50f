#include "crl/special.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "crl/errors.hpp"
#include "crl/rng.hpp"

namespace {

TEST(ErlangTail, FullMassAtZero) { EXPECT_EQ(crl::erlang_tail(3, 0.0), 1.0); }

TEST(ErlangTail, ExponentialTail) {
  EXPECT_NEAR(crl::erlang_tail(1, 1.0), 0.36787944117144233, 1e-15);
}

TEST(ErlangTail, SeriesValue) {
  // Q(3,2) = e^-2 (1 + 2 + 2) = 5 e^-2.
  EXPECT_NEAR(crl::erlang_tail(3, 2.0), 0.6766764161830635, 1e-15);
}

TEST(ErlangTail, MatchesErlangSumMonteCarlo) {
  // Brute-force oracle: P(sum of 3 Exp(1) >= 2).
  crl::Rng rng(20240301);
  const int trials = 1000000;
  long long hits = 0;
  for (int i = 0; i < trials; ++i) {
    const double s = rng.exponential() + rng.exponential() + rng.exponential();
    if (s >= 2.0) ++hits;
  }
  const double est = static_cast<double>(hits) / trials;
  EXPECT_NEAR(crl::erlang_tail(3, 2.0), est, 0.002);
}

TEST(ErlangTail, RejectsBadArgs) {
  EXPECT_THROW(crl::erlang_tail(0, 1.0), crl::invalid_parameter);
  EXPECT_THROW(crl::erlang_tail(3, -0.5), crl::invalid_parameter);
}

TEST(ErlangTail, DerivativeMatchesFiniteDifference) {
  for (int l : {1, 2, 5}) {
    for (double a : {0.3, 1.0, 4.0}) {
      const double h = 1e-6;
      const double fd = (crl::erlang_tail(l, a + h) - crl::erlang_tail(l, a - h)) / (2 * h);
      EXPECT_NEAR(crl::erlang_tail_derivative(l, a), fd, 1e-7) << "l=" << l << " a=" << a;
    }
  }
}

TEST(BinomialRow, SmallValuesExact) {
  const auto row = crl::binomial_row(5);
  const double expected[] = {1, 5, 10, 10, 5, 1};
  for (int k = 0; k <= 5; ++k) EXPECT_EQ(static_cast<double>(row[k]), expected[k]);
  const auto big = crl::binomial_row(30);
  EXPECT_EQ(static_cast<double>(big[15]), 155117520.0);
}

TEST(CompensatedSum, RecoversCancellation) {
  crl::CompensatedSum acc;
  acc.add(1e16L);
  acc.add(1.0L);
  acc.add(-1e16L);
  EXPECT_EQ(static_cast<double>(acc.value()), 1.0);
}

TEST(GaussLegendre, IntegratesSmoothFunction) {
  const double v = crl::gauss_legendre([](double x) { return std::exp(-x); }, 0.0, 30.0);
  EXPECT_NEAR(v, 1.0 - std::exp(-30.0), 1e-12);
}

TEST(Rng, SubstreamsAreDistinct) {
  crl::Rng a(42, 1, 0);
  crl::Rng b(42, 2, 0);
  crl::Rng c(42, 1, 1);
  EXPECT_NE(a.next_u64(), b.next_u64());
  crl::Rng a2(42, 1, 0);
  a2.next_u64();
  EXPECT_NE(a2.next_u64(), c.next_u64());
}

TEST(Rng, StreamsUncorrelated) {
  // Empirical cross-correlation of two substreams of uniforms.
  crl::Rng a(7, 11, 0);
  crl::Rng b(7, 12, 0);
  const int n = 20000;
  double sxy = 0, sx = 0, sy = 0, sxx = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    const double x = a.uniform01();
    const double y = b.uniform01();
    sx += x;
    sy += y;
    sxy += x * y;
    sxx += x * x;
    syy += y * y;
  }
  const double cov = sxy / n - (sx / n) * (sy / n);
  const double vx = sxx / n - (sx / n) * (sx / n);
  const double vy = syy / n - (sy / n) * (sy / n);
  EXPECT_LT(std::fabs(cov / std::sqrt(vx * vy)), 0.03);
}

TEST(Rng, TruncatedExponentialStaysBelowAlpha) {
  crl::Rng rng(5);
  const double alpha = 0.4;
  double mx = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double g = rng.truncated_exponential(alpha);
    ASSERT_GE(g, 0.0);
    mx = std::max(mx, g);
  }
  EXPECT_LE(mx, alpha);
  EXPECT_GT(mx, 0.5 * alpha);
}

TEST(Rng, ComplexGaussianRouteMatchesExponential) {
  // Cross-check sampler: |h|^2 through Box-Muller has the same Exp(1) law.
  crl::Rng rng(99);
  const int n = 100000;
  std::vector<double> xs(n);
  for (auto& x : xs) x = rng.exponential_via_complex_gaussian();
  std::sort(xs.begin(), xs.end());
  double sup = 0.0;
  for (int i = 0; i < n; ++i) {
    const double ecdf = (i + 1.0) / n;
    sup = std::max(sup, std::fabs(ecdf - (1.0 - std::exp(-xs[i]))));
  }
  EXPECT_LE(sup, 0.01);
}

}  // namespace
