#pragma once

// Integer-order gamma tails, binomial coefficients, and compensated
// summation. Everything here is deterministic scalar math; accumulation
// runs in long double because the alternating binomial sums downstream
// are ill-conditioned.

#include <cmath>
#include <vector>

#include "crl/errors.hpp"

namespace crl {

inline double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(long double x) {
    const long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
};

// P(Erlang(l, rate 1) >= a), i.e. the regularized upper incomplete gamma
// Q(l, a) = e^-a * sum_{j<l} a^j / j! for integer order l >= 1.
inline double erlang_tail(int l, double a) {
  if (l < 1) throw invalid_parameter("erlang_tail: l must be >= 1");
  if (!(a >= 0.0)) throw invalid_parameter("erlang_tail: a must be >= 0");
  if (a == 0.0) return 1.0;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int j = 1; j < l; ++j) {
    term *= static_cast<long double>(a) / j;
    sum += term;
  }
  const long double q = std::exp(-static_cast<long double>(a)) * sum;
  return clamp01(static_cast<double>(q));
}

// d/da of erlang_tail: -a^(l-1) e^-a / (l-1)!.
inline double erlang_tail_derivative(int l, double a) {
  if (l < 1) throw invalid_parameter("erlang_tail_derivative: l must be >= 1");
  if (a < 0.0) throw invalid_parameter("erlang_tail_derivative: a must be >= 0");
  long double t = std::exp(-static_cast<long double>(a));
  for (int j = 1; j < l; ++j) t *= static_cast<long double>(a) / j;
  return -static_cast<double>(t);
}

// Binomial coefficients for one row of Pascal's triangle. Values up to
// n = 60 are integers below 2^63 and exact in long double.
inline std::vector<long double> binomial_row(int n) {
  if (n < 0) throw invalid_parameter("binomial_row: n must be >= 0");
  std::vector<long double> row(static_cast<std::size_t>(n) + 1);
  row[0] = 1.0L;
  for (int k = 1; k <= n; ++k) {
    row[static_cast<std::size_t>(k)] =
        row[static_cast<std::size_t>(k - 1)] * (n - k + 1) / k;
  }
  return row;
}

// Nodes/weights for 32-point Gauss-Legendre on [-1, 1], positive half.
// Used by the conditional missed-detection CDF when no stable closed
// form applies.
namespace gauss32 {
inline constexpr double kNodes[16] = {
    0.0483076656877383162, 0.1444719615827964934, 0.2392873622521370745,
    0.3318686022821276497, 0.4213512761306353454, 0.5068999089322293900,
    0.5877157572407623290, 0.6630442669302152009, 0.7321821187402896804,
    0.7944837959679424069, 0.8493676137325699701, 0.8963211557660521240,
    0.9349060759377396892, 0.9647622555875064307, 0.9856115115452683354,
    0.9972638618494815635};
inline constexpr double kWeights[16] = {
    0.0965400885147278006, 0.0956387200792748594, 0.0938443990808045654,
    0.0911738786957638847, 0.0876520930044038111, 0.0833119242269467552,
    0.0781938957870703065, 0.0723457941088485062, 0.0658222227763618468,
    0.0586840934785355471, 0.0509980592623761762, 0.0428358980222266807,
    0.0342738629130214331, 0.0253920653092620595, 0.0162743947309056706,
    0.0070186100094700966};
}  // namespace gauss32

// Integrates f over [a, b] with composite 32-point Gauss-Legendre panels
// of width <= max_panel. Exact enough (~1e-14) for the smooth
// exponential-polynomial integrands used here.
template <typename F>
double gauss_legendre(F&& f, double a, double b, double max_panel = 8.0) {
  if (b <= a) return 0.0;
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / max_panel)));
  const double h = (b - a) / panels;
  CompensatedSum acc;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    const double half = 0.5 * h;
    for (int i = 0; i < 16; ++i) {
      const double dx = half * gauss32::kNodes[i];
      acc.add(static_cast<long double>(gauss32::kWeights[i]) *
              (static_cast<long double>(f(mid - dx)) + static_cast<long double>(f(mid + dx))));
    }
  }
  return static_cast<double>(acc.value() * static_cast<long double>(0.5 * (b - a) / panels));
}

}  // namespace crl
