#pragma once

// Covert-rate maximization: choose P_T <= P_max maximizing
// (1 - P_out(P_T)) * E[min rate](P_T) subject to zeta*(P_T) >= 1 - eps_c.
//
// The problem is one-dimensional, so the solver is a deterministic
// log-spaced grid sweep with a bisection refinement of the feasibility
// boundary when zeta* is monotone, and a best-feasible-point fallback
// otherwise. Every probe lands in the trace for auditing. Rate probes share
// one sample batch (common random numbers), which makes the rate curve
// pathwise monotone in P_T and keeps the optimizer free of sampling
// chatter.
//
// zeta*(P_T) comes from the scheme's detection closed form: the RRS
// theorem form for RRS (and for MMRS under fixed transmit power), or the
// fading-averaged channel-inversion zeta* for MMRS, which does not depend
// on P_T at all (Alice's power then tracks the channel, not P_T).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "crl/detection.hpp"
#include "crl/errors.hpp"
#include "crl/montecarlo.hpp"
#include "crl/rate.hpp"

namespace crl {

enum class BindingConstraint { covertness, power_cap, none_feasible };

inline const char* binding_name(BindingConstraint b) {
  switch (b) {
    case BindingConstraint::covertness: return "covertness";
    case BindingConstraint::power_cap: return "power_cap";
    default: return "none_feasible";
  }
}

struct ProbeRecord {
  double p_t = 0.0;
  double zeta_star = 0.0;
  double covert_rate = 0.0;
  bool feasible = false;
  std::string phase;  // "grid", "bisect", "refine"
};

struct OptimizationResult {
  double p_t_star = 0.0;
  double r_star = 0.0;
  BindingConstraint binding = BindingConstraint::none_feasible;
  double zeta_at_star = 0.0;
  double r_star_half_width = 0.0;
  std::vector<ProbeRecord> trace;
};

inline constexpr int kMmrsZetaContexts = 10000;

inline OptimizationResult max_covert_rate(Scheme scheme, const SystemParams& base,
                                          const SimConfig& cfg, int grid_size = 24,
                                          double tol = 1e-4) {
  base.validate_or_throw();
  if (grid_size < 8) throw invalid_parameter("max_covert_rate: grid_size must be >= 8");
  if (!(tol > 0.0)) throw invalid_parameter("max_covert_rate: tol must be > 0");
  const double eps_c = base.epsilon_c;
  const double target = 1.0 - eps_c;
  const int l = resolved_jammer_count(base, cfg);

  SimConfig batch_cfg = cfg;
  batch_cfg.scheme = scheme;
  const MinRateBatch batch(base, batch_cfg);

  const bool mmrs_inversion =
      scheme == Scheme::mmrs && cfg.power_mode == PowerMode::channel_inversion;
  double mmrs_zeta_star = 0.0;
  if (mmrs_inversion) {
    mmrs_zeta_star =
        averaged_zeta_star_mmrs(base, l, kMmrsZetaContexts, cfg.seed, cfg.mode)
            .zeta_star_exact_mean;
  }

  auto zeta_star_at = [&](double p_t) -> double {
    if (mmrs_inversion) return mmrs_zeta_star;
    SystemParams pp = base;
    pp.p_t = p_t;
    if (l >= 1 && !pp.rrs_closed_form_valid()) return 0.0;
    return optimal_threshold(Scheme::rrs, l, pp).zeta_star;
  };

  auto rate_at = [&](double p_t) -> MetricEstimate {
    SystemParams pp = base;
    pp.p_t = p_t;
    const double p_out =
        scheme == Scheme::rrs ? outage_rrs(pp) : outage_mmrs(pp, l);
    MetricEstimate mr = batch.evaluate(p_t, base.p_j, base.sigma_c2, base.sigma_b2,
                                       base.theta, cfg.conditional_min_rate, cfg.seed,
                                       cfg.mode);
    mr.mean = covert_rate(p_out, mr.mean);
    mr.half_width *= (1.0 - p_out);
    return mr;
  };

  OptimizationResult res;
  auto probe = [&](double p_t, const char* phase) -> ProbeRecord {
    ProbeRecord rec;
    rec.p_t = p_t;
    rec.zeta_star = zeta_star_at(p_t);
    rec.feasible = rec.zeta_star >= target - 1e-12;
    rec.covert_rate = rate_at(p_t).mean;
    rec.phase = phase;
    res.trace.push_back(rec);
    return rec;
  };

  // Log-spaced grid over (p_j, p_max].
  const double lo = std::max(base.p_j * (1.0 + 1e-6), base.p_max * 1e-3);
  const double hi = base.p_max;
  if (!(lo < hi)) throw invalid_parameter("max_covert_rate: empty power grid (p_j >= p_max)");
  std::vector<double> grid(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    grid[static_cast<std::size_t>(i)] =
        lo * std::pow(hi / lo, static_cast<double>(i) / (grid_size - 1));
  }
  grid.back() = hi;

  std::vector<ProbeRecord> grid_probes;
  grid_probes.reserve(grid.size());
  for (double p_t : grid) grid_probes.push_back(probe(p_t, "grid"));

  const bool any_feasible =
      std::any_of(grid_probes.begin(), grid_probes.end(),
                  [](const ProbeRecord& r) { return r.feasible; });
  if (!any_feasible) {
    res.binding = BindingConstraint::none_feasible;
    res.r_star = 0.0;
    return res;
  }

  bool zeta_monotone = true;
  for (std::size_t i = 1; i < grid_probes.size(); ++i) {
    if (grid_probes[i].zeta_star > grid_probes[i - 1].zeta_star + 1e-9) {
      zeta_monotone = false;
      break;
    }
  }
  bool rate_monotone = true;
  {
    double prev = -1.0;
    for (const ProbeRecord& r : grid_probes) {
      if (!r.feasible) continue;
      if (r.covert_rate < prev - 1e-12) {
        rate_monotone = false;
        break;
      }
      prev = r.covert_rate;
    }
  }

  double p_star = 0.0;
  if (zeta_monotone && rate_monotone) {
    if (grid_probes.back().feasible) {
      p_star = hi;
    } else {
      // Feasibility boundary between the last feasible and first infeasible
      // grid points; bisection keeps the feasible side.
      double a = 0.0, b = 0.0;
      for (std::size_t i = 1; i < grid_probes.size(); ++i) {
        if (grid_probes[i - 1].feasible && !grid_probes[i].feasible) {
          a = grid_probes[i - 1].p_t;
          b = grid_probes[i].p_t;
          break;
        }
      }
      while ((b - a) / a > tol) {
        const double m = std::sqrt(a * b);
        if (probe(m, "bisect").feasible) {
          a = m;
        } else {
          b = m;
        }
      }
      p_star = a;
    }
  } else {
    // Non-monotone zeta* (clamp artifacts) or rate dip: take the best
    // feasible grid point and refine locally among feasible candidates.
    std::size_t best = 0;
    double best_rate = -1.0;
    for (std::size_t i = 0; i < grid_probes.size(); ++i) {
      if (grid_probes[i].feasible && grid_probes[i].covert_rate > best_rate) {
        best_rate = grid_probes[i].covert_rate;
        best = i;
      }
    }
    const double a = best > 0 ? grid_probes[best - 1].p_t : grid_probes[best].p_t;
    const double b =
        best + 1 < grid_probes.size() ? grid_probes[best + 1].p_t : grid_probes[best].p_t;
    p_star = grid_probes[best].p_t;
    double p_star_rate = best_rate;
    const int refine_points = 16;
    for (int i = 0; i < refine_points; ++i) {
      const double cand = a + (b - a) * (i + 0.5) / refine_points;
      const ProbeRecord rec = probe(cand, "refine");
      if (rec.feasible && rec.covert_rate > p_star_rate) {
        p_star_rate = rec.covert_rate;
        p_star = cand;
      }
    }
  }

  res.p_t_star = std::min(p_star, base.p_max);
  res.zeta_at_star = zeta_star_at(res.p_t_star);
  const MetricEstimate r = rate_at(res.p_t_star);
  res.r_star = r.mean;
  res.r_star_half_width = r.half_width;
  res.binding = (std::abs(res.p_t_star - base.p_max) <= 1e-12 * base.p_max)
                    ? BindingConstraint::power_cap
                    : BindingConstraint::covertness;
  return res;
}

}  // namespace crl
