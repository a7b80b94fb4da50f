#pragma once

// Simulation harness. Every closed form has a matching estimator here, in
// two flavors:
//
//  * formula_consistent — the sampling model matches the derivation behind
//    the closed form: all n-1 non-selected relays jam with gains truncated
//    to [0, alpha] (RRS outage), a fixed jammer count l (MMRS), and the
//    detection-error estimator keeps the conditional-expectation form of
//    the published missed-detection derivation (positivity indicator
//    dropped), so its expectation equals the theorem value exactly.
//  * scheme — the literal protocol: a relay jams only when its gain to the
//    hop's receiver is below alpha, counts are random, and detection error
//    is estimated by plain hypothesis-test frequencies (ground truth).

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "crl/detection.hpp"
#include "crl/errors.hpp"
#include "crl/mc_core.hpp"
#include "crl/model.hpp"

namespace crl {

enum class PowerMode { fixed_pt, channel_inversion };

struct SimConfig {
  long long trials = 100000;
  std::uint64_t seed = 1;
  SimMode mode = SimMode::formula_consistent;
  Scheme scheme = Scheme::rrs;
  PowerMode power_mode = PowerMode::channel_inversion;  // MMRS detection only
  int workers = 1;
  int jammer_count = -1;  // < 0: use params.default_jammer_count()
  bool conditional_min_rate = false;  // condition on non-outage (sensitivity variant)

  std::vector<std::string> validate() const {
    std::vector<std::string> issues;
    if (trials < 1) issues.emplace_back("sim.trials: must be >= 1");
    if (workers < 1) issues.emplace_back("sim.workers: must be >= 1");
    return issues;
  }
};

inline int resolved_jammer_count(const SystemParams& p, const SimConfig& cfg) {
  return cfg.jammer_count >= 0 ? cfg.jammer_count : p.default_jammer_count();
}

namespace salts {
inline constexpr std::uint64_t outage = 0x6f7574u;
inline constexpr std::uint64_t dep = 0x646570u;
inline constexpr std::uint64_t min_rate = 0x726174u;
inline constexpr std::uint64_t gain_cdf = 0x636466u;
}  // namespace salts

// ---------------------------------------------------------------------------
// Transmission outage
// ---------------------------------------------------------------------------

inline MetricEstimate simulate_outage(const SystemParams& p, const SimConfig& cfg) {
  p.validate_or_throw();
  const int n = p.n;
  const int l = resolved_jammer_count(p, cfg);
  const double trunc_c = -std::expm1(-p.alpha);

  auto trial = [&, n, l](Rng& rng) -> double {
    double sig_a = 0.0, sig_b = 0.0, jam1 = 0.0, jam2 = 0.0;
    bool first_hop_only = false;
    if (cfg.scheme == Scheme::rrs) {
      // Selection is uniform over i.i.d. relays; the selected pair is Exp(1).
      sig_a = rng.exponential();
      sig_b = rng.exponential();
      if (cfg.mode == SimMode::formula_consistent) {
        for (int i = 0; i < n - 1; ++i) jam1 += rng.truncated_exponential_premul(trunc_c);
        for (int i = 0; i < n - 1; ++i) jam2 += rng.truncated_exponential_premul(trunc_c);
      } else {
        for (int i = 0; i < n - 1; ++i) {
          const double g = rng.exponential();
          if (g < p.alpha) jam1 += g;
        }
        for (int i = 0; i < n - 1; ++i) {
          const double g = rng.exponential();
          if (g < p.alpha) jam2 += g;
        }
      }
    } else {
      double best_min = -1.0;
      for (int i = 0; i < n; ++i) {
        const double ga = rng.exponential();
        const double gb = rng.exponential();
        const double m = std::min(ga, gb);
        if (m > best_min) {
          best_min = m;
          sig_a = ga;
          sig_b = gb;
        }
      }
      if (cfg.mode == SimMode::formula_consistent) {
        // Theorem-consistent: fixed l jammers, first-hop outage only.
        for (int i = 0; i < l; ++i) jam1 += rng.truncated_exponential_premul(trunc_c);
        first_hop_only = true;
      } else {
        for (int i = 0; i < n - 1; ++i) {
          const double g = rng.exponential();
          if (g < p.alpha) jam1 += g;
        }
        for (int i = 0; i < n - 1; ++i) {
          const double g = rng.exponential();
          if (g < p.alpha) jam2 += g;
        }
      }
    }
    const double sir1 = p.p_t * sig_a / (p.p_j * jam1 + p.sigma_c2);
    if (sir1 < p.theta) return 1.0;
    if (first_hop_only) return 0.0;
    const double sir2 = p.p_t * sig_b / (p.p_j * jam2 + p.sigma_b2);
    return sir2 < p.theta ? 1.0 : 0.0;
  };

  auto e = mc_estimate(cfg.trials, cfg.seed, salts::outage, cfg.workers, cfg.mode, trial);
  e.mean = clamp01(e.mean);
  return e;
}

// ---------------------------------------------------------------------------
// Detection error probability at a threshold
// ---------------------------------------------------------------------------

// Estimates zeta(lambda) = P_FA + P_MD. In formula_consistent mode the
// missed-detection part is the conditional-expectation estimator matching
// the published derivation (mean can be negative where that form is), and
// under MMRS contexts with phi >= 1 (divergent paper form) trials are
// flagged invalid and excluded; `valid_fraction` reports the share kept.
struct DepEstimate {
  MetricEstimate zeta;
  double valid_fraction = 1.0;
};

inline DepEstimate simulate_dep(const SystemParams& p, const SimConfig& cfg, double lambda) {
  p.validate_or_throw();
  DepEstimate out;
  if (lambda <= p.sigma_w2) {
    // Statistic never falls below the noise floor: P_FA = 1, P_MD = 0.
    out.zeta.mean = 1.0;
    out.zeta.trials = cfg.trials;
    out.zeta.seed = cfg.seed;
    out.zeta.mode = cfg.mode;
    return out;
  }
  const int n = p.n;
  const int l = resolved_jammer_count(p, cfg);

  const bool mmrs_inversion =
      cfg.scheme == Scheme::mmrs && cfg.power_mode == PowerMode::channel_inversion;

  if (cfg.mode == SimMode::formula_consistent) {
    if (!mmrs_inversion) {
      // Fixed-power statistic (Theorem-1 model; also MMRS with fixed P_T).
      auto est = mc_estimate(
          cfg.trials, cfg.seed, salts::dep, cfg.workers, cfg.mode, [&, l](Rng& rng) {
            double jam_w = 0.0;
            for (int i = 0; i < l; ++i) jam_w += rng.exponential();
            const double y0 = p.p_j * jam_w + p.sigma_w2;
            const double fa = y0 >= lambda ? 1.0 : 0.0;
            const double md = 1.0 - std::exp((y0 - lambda) / p.p_t);
            return fa + md;
          });
      est.mean = clamp01(est.mean);
      out.zeta = est;
      return out;
    }
    // MMRS channel inversion: estimator conditioned on a fresh phi context
    // per trial; phi >= 1 contexts are excluded (paper form undefined).
    auto est = mc_estimate_vector(
        cfg.trials, cfg.seed, salts::dep, cfg.workers, cfg.mode, 2,
        [&, l](Rng& rng, double* res) {
          const MmrsDetectionContext ctx = sample_mmrs_context(p, l, rng, cfg.mode);
          double jam_w = 0.0;
          for (int i = 0; i < ctx.l; ++i) jam_w += rng.exponential();
          if (!ctx.paper_form_valid()) {
            res[0] = 0.0;
            res[1] = 0.0;
            return;
          }
          const double y0 = p.p_j * jam_w + p.sigma_w2;
          const double fa = y0 >= lambda ? 1.0 : 0.0;
          const double md = 1.0 - std::exp(ctx.phi * (y0 - lambda) / p.p_j);
          res[0] = fa + md;
          res[1] = 1.0;
        });
    out.valid_fraction = est[1].mean;
    if (out.valid_fraction > 0.0) {
      out.zeta = est[0];
      out.zeta.mean = clamp01(est[0].mean / out.valid_fraction);
      out.zeta.half_width = est[0].half_width / out.valid_fraction;
    } else {
      out.zeta = est[0];
      out.zeta.mean = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
  }

  // Literal scheme mode: random jammer sets, plain frequencies.
  auto est = mc_estimate(
      cfg.trials, cfg.seed, salts::dep, cfg.workers, cfg.mode, [&, n, l](Rng& rng) {
        (void)l;
        double transmit_power = p.p_t;
        double transmit_gain = 0.0;
        double jam_w = 0.0;
        if (cfg.scheme == Scheme::rrs) {
          for (int i = 0; i < n - 1; ++i) {
            const double g_rec = rng.exponential();
            if (g_rec < p.alpha) jam_w += rng.exponential();
          }
          transmit_gain = rng.exponential();
        } else {
          double best_min = -1.0;
          double sel_gac = 0.0;
          for (int i = 0; i < n; ++i) {
            const double ga = rng.exponential();
            const double gb = rng.exponential();
            const double m = std::min(ga, gb);
            if (m > best_min) {
              best_min = m;
              sel_gac = ga;
            }
          }
          double jam_c = 0.0;
          for (int i = 0; i < n - 1; ++i) {
            const double g_rec = rng.exponential();
            if (g_rec < p.alpha) {
              jam_c += g_rec;
              jam_w += rng.exponential();
            }
          }
          transmit_gain = rng.exponential();
          if (cfg.power_mode == PowerMode::channel_inversion) {
            transmit_power = p.theta * (p.p_j * jam_c + p.sigma_c2) / sel_gac;
          }
        }
        const double y0 = p.p_j * jam_w + p.sigma_w2;
        const double y1 = transmit_power * transmit_gain + y0;
        const double fa = y0 >= lambda ? 1.0 : 0.0;
        const double md = y1 < lambda ? 1.0 : 0.0;
        return fa + md;
      });
  est.mean = clamp01(est.mean);
  out.zeta = est;
  return out;
}

// ---------------------------------------------------------------------------
// Expected bottleneck rate
// ---------------------------------------------------------------------------

// Reusable sample store for E[min(R_AC, R_CB)]: selected-pair gains plus the
// raw jam-gain sums per hop. Evaluation at any (p_t, p_j, noise) then shares
// the same draws, which makes rate curves pathwise monotone in p_t (common
// random numbers).
class MinRateBatch {
 public:
  struct Sample {
    double sig_a, sig_b, jam1, jam2;
  };

  MinRateBatch(const SystemParams& p, const SimConfig& cfg) {
    p.validate_or_throw();
    const int n = p.n;
    const int l = resolved_jammer_count(p, cfg);
    const double trunc_c = -std::expm1(-p.alpha);
    samples_.resize(static_cast<std::size_t>(cfg.trials));

    const long long n_chunks = (cfg.trials + kMcChunk - 1) / kMcChunk;
    auto fill_chunk = [&, n, l](long long c) {
      const long long lo = c * kMcChunk;
      const long long hi = std::min<long long>(cfg.trials, lo + kMcChunk);
      Rng rng(cfg.seed, salts::min_rate, static_cast<std::uint64_t>(c));
      for (long long t = lo; t < hi; ++t) {
        Sample s{0.0, 0.0, 0.0, 0.0};
        if (cfg.scheme == Scheme::rrs) {
          s.sig_a = rng.exponential();
          s.sig_b = rng.exponential();
        } else {
          double best_min = -1.0;
          for (int i = 0; i < n; ++i) {
            const double ga = rng.exponential();
            const double gb = rng.exponential();
            const double m = std::min(ga, gb);
            if (m > best_min) {
              best_min = m;
              s.sig_a = ga;
              s.sig_b = gb;
            }
          }
        }
        if (cfg.mode == SimMode::formula_consistent) {
          const int jammers = cfg.scheme == Scheme::rrs ? n - 1 : l;
          for (int i = 0; i < jammers; ++i) s.jam1 += rng.truncated_exponential_premul(trunc_c);
          for (int i = 0; i < jammers; ++i) s.jam2 += rng.truncated_exponential_premul(trunc_c);
        } else {
          for (int i = 0; i < n - 1; ++i) {
            const double g = rng.exponential();
            if (g < p.alpha) s.jam1 += g;
          }
          for (int i = 0; i < n - 1; ++i) {
            const double g = rng.exponential();
            if (g < p.alpha) s.jam2 += g;
          }
        }
        samples_[static_cast<std::size_t>(t)] = s;
      }
    };
    const int nw = std::max(1, cfg.workers);
    if (nw == 1 || n_chunks == 1) {
      for (long long c = 0; c < n_chunks; ++c) fill_chunk(c);
    } else {
      std::atomic<long long> next{0};
      std::vector<std::thread> pool;
      for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&] {
          for (;;) {
            const long long c = next.fetch_add(1);
            if (c >= n_chunks) return;
            fill_chunk(c);
          }
        });
      }
      for (auto& t : pool) t.join();
    }
  }

  // Mean min-hop rate at the given powers/noises. With `conditional` set,
  // averages only over non-outage draws (min SIR >= theta).
  MetricEstimate evaluate(double p_t, double p_j, double sigma_c2, double sigma_b2,
                          double theta, bool conditional, std::uint64_t seed,
                          SimMode mode) const {
    double sum = 0.0, sumsq = 0.0;
    long long count = 0;
    constexpr double kInvLn2 = 1.4426950408889634;
    for (const auto& s : samples_) {
      const double sir1 = p_t * s.sig_a / (p_j * s.jam1 + sigma_c2);
      const double sir2 = p_t * s.sig_b / (p_j * s.jam2 + sigma_b2);
      if (conditional && std::min(sir1, sir2) < theta) continue;
      const double r = kInvLn2 * std::min(std::log1p(sir1), std::log1p(sir2));
      sum += r;
      sumsq += r * r;
      ++count;
    }
    MetricEstimate e;
    e.seed = seed;
    e.mode = mode;
    e.trials = count;
    if (count > 0) e.mean = sum / static_cast<double>(count);
    if (count > 1) {
      double var = (sumsq - sum * sum / static_cast<double>(count)) /
                   static_cast<double>(count - 1);
      if (var < 0.0) var = 0.0;
      e.half_width = 1.96 * std::sqrt(var / static_cast<double>(count));
    }
    return e;
  }

  std::size_t size() const { return samples_.size(); }

 private:
  std::vector<Sample> samples_;
};

inline MetricEstimate simulate_expected_min_rate(const SystemParams& p, const SimConfig& cfg) {
  MinRateBatch batch(p, cfg);
  return batch.evaluate(p.p_t, p.p_j, p.sigma_c2, p.sigma_b2, p.theta,
                        cfg.conditional_min_rate, cfg.seed, cfg.mode);
}

// ---------------------------------------------------------------------------
// MMRS selected-gain empirical CDF
// ---------------------------------------------------------------------------

inline std::vector<MetricEstimate> simulate_mmrs_gain_cdf(std::span<const double> x_grid, int n,
                                                          const SimConfig& cfg) {
  if (x_grid.empty()) throw invalid_parameter("simulate_mmrs_gain_cdf: empty grid");
  if (n < 1) throw invalid_parameter("simulate_mmrs_gain_cdf: n must be >= 1");
  const int width = static_cast<int>(x_grid.size());
  return mc_estimate_vector(
      cfg.trials, cfg.seed, salts::gain_cdf, cfg.workers, cfg.mode, width,
      [&x_grid, n](Rng& rng, double* out) {
        double best_min = -1.0;
        double sel = 0.0;
        for (int i = 0; i < n; ++i) {
          const double ga = rng.exponential();
          const double gb = rng.exponential();
          const double m = std::min(ga, gb);
          if (m > best_min) {
            best_min = m;
            sel = ga;
          }
        }
        for (std::size_t k = 0; k < x_grid.size(); ++k) out[k] = sel <= x_grid[k] ? 1.0 : 0.0;
      });
}

}  // namespace crl
