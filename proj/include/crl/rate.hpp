#pragma once

// SIR and covert-rate closed forms: the RRS two-hop transmission outage,
// the MMRS selected-gain CDF and first-hop outage, and the covert rate
// assembly (1 - P_out) * E[min rate]. The expected min rate itself has no
// closed form and comes from the montecarlo module.

#include <cmath>
#include <span>

#include "crl/detection.hpp"
#include "crl/errors.hpp"
#include "crl/model.hpp"
#include "crl/special.hpp"

namespace crl {

// Per-hop signal-to-interference-plus-noise ratio.
inline double sir_hop(double signal_gain, double p_t, double p_j,
                      std::span<const double> jam_gains, double sigma2) {
  if (signal_gain < 0.0 || p_t < 0.0 || p_j < 0.0)
    throw invalid_parameter("sir_hop: inputs must be >= 0");
  if (!(sigma2 > 0.0)) throw invalid_parameter("sir_hop: sigma2 must be > 0");
  double denom = sigma2;
  for (double g : jam_gains) denom += p_j * g;
  return p_t * signal_gain / denom;
}

namespace detail {

// E[exp(-y G)] for G exponential truncated to [0, alpha]:
// (1 - e^(-alpha(1+y))) / ((1+y)(1 - e^-alpha)). expm1 keeps it stable for
// small alpha.
inline double truncated_laplace(double alpha, double y) {
  return std::expm1(-alpha * (1.0 + y)) / ((1.0 + y) * std::expm1(-alpha));
}

}  // namespace detail

// Two-hop transmission outage under RRS with all n-1 non-selected relays
// jamming at below-threshold gains.
inline double outage_rrs(const SystemParams& p) {
  if (p.n < 1) throw invalid_parameter("outage_rrs: n must be >= 1");
  if (!(p.alpha > 0.0)) throw invalid_parameter("outage_rrs: alpha must be > 0");
  const double big_k = p.theta * p.p_j / p.p_t;
  const double bracket = detail::truncated_laplace(p.alpha, big_k);
  const double succ = std::exp(-p.theta * (p.sigma_c2 + p.sigma_b2) / p.p_t) *
                      std::pow(bracket, 2.0 * p.n - 2.0);
  return clamp01(1.0 - succ);
}

// CDF of the selected relay's first-hop gain under MMRS with n candidates.
inline double mmrs_first_gain_cdf(double x, int n) {
  if (x < 0.0) throw invalid_parameter("mmrs_first_gain_cdf: x must be >= 0");
  if (n < 1) throw invalid_parameter("mmrs_first_gain_cdf: n must be >= 1");
  if (n > 60) throw invalid_parameter("mmrs_first_gain_cdf: n capped at 60");
  const auto binom = binomial_row(n);
  CompensatedSum acc;
  for (int k = 0; k <= n; ++k) {
    const long double sign = (k % 2 == 0) ? 1.0L : -1.0L;
    const long double piece =
        (static_cast<long double>(k) * std::exp(-static_cast<long double>(x)) +
         static_cast<long double>(k - 1) * std::exp(-2.0L * k * static_cast<long double>(x))) /
        (2.0L * k - 1.0L);
    acc.add(sign * binom[static_cast<std::size_t>(k)] * piece);
  }
  return clamp01(static_cast<double>(acc.value()));
}

struct MmrsOutage {
  double value = 0.0;
  bool clamped = false;
  bool ill_conditioned = false;  // n > 30: alternating binomial sum degrades
};

// First-hop transmission outage under MMRS with l active jammers at
// below-threshold gains (the k index of the alternating sum is folded
// inside the summation).
inline MmrsOutage outage_mmrs_eval(const SystemParams& p, int l) {
  if (p.n < 1) throw invalid_parameter("outage_mmrs: n must be >= 1");
  if (p.n > 60) throw invalid_parameter("outage_mmrs: n capped at 60");
  if (l < 0) throw invalid_parameter("outage_mmrs: l must be >= 0");
  const double z = p.theta * p.p_j / p.p_t;
  const double c = p.theta * p.sigma_c2 / p.p_t;
  const auto binom = binomial_row(p.n);
  const long double bz =
      l == 0 ? 1.0L
             : std::pow(static_cast<long double>(detail::truncated_laplace(p.alpha, z)),
                        static_cast<long double>(l));
  CompensatedSum acc;
  for (int k = 0; k <= p.n; ++k) {
    const long double sign = (k % 2 == 0) ? 1.0L : -1.0L;
    const long double b2kz =
        l == 0 ? 1.0L
               : std::pow(static_cast<long double>(detail::truncated_laplace(p.alpha, 2.0 * k * z)),
                          static_cast<long double>(l));
    const long double piece =
        (static_cast<long double>(k) * std::exp(-static_cast<long double>(c)) * bz +
         static_cast<long double>(k - 1) * std::exp(-2.0L * k * static_cast<long double>(c)) *
             b2kz) /
        (2.0L * k - 1.0L);
    acc.add(sign * binom[static_cast<std::size_t>(k)] * piece);
  }
  MmrsOutage out;
  const double raw = static_cast<double>(acc.value());
  out.value = clamp01(raw);
  out.clamped = (out.value != raw);
  out.ill_conditioned = p.n > 30;
  return out;
}

inline double outage_mmrs(const SystemParams& p, int l) { return outage_mmrs_eval(p, l).value; }

// Covert rate: success probability times the expected two-hop bottleneck rate.
inline double covert_rate(double p_out, double expected_min_rate) {
  if (!(p_out >= 0.0 && p_out <= 1.0))
    throw invalid_parameter("covert_rate: p_out must lie in [0,1]");
  if (expected_min_rate < 0.0)
    throw invalid_parameter("covert_rate: expected_min_rate must be >= 0");
  return (1.0 - p_out) * expected_min_rate;
}

struct RateResult {
  double p_out = 0.0;
  double expected_min_rate = 0.0;
  double covert_rate = 0.0;
  Scheme scheme = Scheme::rrs;
};

inline RateResult make_rate_result(Scheme scheme, double p_out, double expected_min_rate) {
  RateResult r;
  r.scheme = scheme;
  r.p_out = p_out;
  r.expected_min_rate = expected_min_rate;
  r.covert_rate = covert_rate(p_out, expected_min_rate);
  return r;
}

}  // namespace crl
