#pragma once

// Closed-form detection performance at the warden: false-alarm and
// missed-detection probabilities, the detection error probability
// zeta = P_FA + P_MD, and the threshold lambda* minimizing it, for both
// relay-selection schemes.
//
// Conventions, shared by all functions here:
//  * The warden's statistic is the infinite-sample average power, so under
//    H0 it equals P_J * S + sigma_w2 with S the sum of l unit-mean
//    jammer gains (Erlang(l)), and under H1 it adds the transmitter term.
//  * P_FA is exact: erlang_tail(l, (lambda - sigma_w2)/P_J).
//  * The published missed-detection forms drop the positivity indicator of
//    the conditional exponential CDF and can therefore go negative for
//    small lambda. They are exposed raw (*_paper); zeta is clamped to
//    [0,1] with a flag. Ground truth is pmd_exact / the conditional CDF.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>

#include "crl/errors.hpp"
#include "crl/mc_core.hpp"
#include "crl/model.hpp"
#include "crl/special.hpp"

namespace crl {

enum class Scheme { rrs, mmrs };

inline const char* scheme_name(Scheme s) { return s == Scheme::rrs ? "rrs" : "mmrs"; }

// ---------------------------------------------------------------------------
// False alarm / missed detection
// ---------------------------------------------------------------------------

// P(decide H1 | H0) at threshold lambda. l = 0 means no jammers, in which
// case the H0 statistic is exactly sigma_w2.
inline double pfa(int l, double lambda, double sigma_w2, double p_j) {
  if (l < 0) throw invalid_parameter("pfa: l must be >= 0");
  if (!(p_j > 0.0)) throw invalid_parameter("pfa: p_j must be > 0");
  if (lambda <= sigma_w2) return 1.0;
  if (l == 0) return 0.0;
  return erlang_tail(l, (lambda - sigma_w2) / p_j);
}

// Raw published missed-detection form under RRS (fixed transmit power):
// 1 - (P_T/(P_T-P_J))^l * exp((sigma_w2-lambda)/P_T) for lambda > sigma_w2,
// else 0. May be negative; callers see the unclamped value.
inline double pmd_rrs_paper(int l, double lambda, double sigma_w2, double p_t, double p_j) {
  if (l < 0) throw invalid_parameter("pmd_rrs_paper: l must be >= 0");
  if (!(p_t > 0.0) || !(p_j > 0.0))
    throw invalid_parameter("pmd_rrs_paper: powers must be > 0");
  if (l >= 1 && p_t <= p_j)
    throw closed_form_invalid("pmd_rrs_paper: requires p_t > p_j");
  if (lambda <= sigma_w2) return 0.0;
  const double factor = (l == 0) ? 1.0 : std::pow(p_t / (p_t - p_j), l);
  return 1.0 - factor * std::exp((sigma_w2 - lambda) / p_t);
}

// Unbiased Monte Carlo estimate of the true missed-detection probability
// P(P_T X + P_J S + sigma_w2 < lambda), X ~ Exp(1), S ~ Erlang(l).
inline MetricEstimate pmd_exact(int l, double lambda, double sigma_w2, double p_t, double p_j,
                                long long trials, std::uint64_t seed, int workers = 1) {
  if (l < 0) throw invalid_parameter("pmd_exact: l must be >= 0");
  if (trials < 1) throw invalid_parameter("pmd_exact: trials must be >= 1");
  if (lambda <= sigma_w2) {
    MetricEstimate e;
    e.trials = trials;
    e.seed = seed;
    return e;  // event impossible
  }
  const double budget = lambda - sigma_w2;
  return mc_estimate(trials, seed, /*salt=*/0x706d64u, workers, SimMode::formula_consistent,
                     [l, budget, p_t, p_j](Rng& rng) {
                       double y = p_t * rng.exponential();
                       for (int j = 0; j < l; ++j) y += p_j * rng.exponential();
                       return y < budget ? 1.0 : 0.0;
                     });
}

// ---------------------------------------------------------------------------
// Detection error probability
// ---------------------------------------------------------------------------

struct DepEval {
  double zeta = 1.0;     // clamped P_FA + P_MD
  double pfa = 1.0;      // exact false-alarm component
  double pmd_raw = 0.0;  // published missed-detection form, unclamped
  bool clamped = false;  // zeta clamping fired
};

inline DepEval dep_rrs_eval(int l, double lambda, const SystemParams& p) {
  if (lambda <= p.sigma_w2) return {};
  DepEval e;
  e.pfa = pfa(l, lambda, p.sigma_w2, p.p_j);
  e.pmd_raw = pmd_rrs_paper(l, lambda, p.sigma_w2, p.p_t, p.p_j);
  const double sum = e.pfa + e.pmd_raw;
  e.zeta = clamp01(sum);
  e.clamped = (e.zeta != sum);
  return e;
}

// Theorem-form zeta under RRS, clamped to [0,1].
inline double dep_rrs(int l, double lambda, const SystemParams& p) {
  return dep_rrs_eval(l, lambda, p).zeta;
}

// Channel-inversion detection context under MMRS: Alice's received power at
// the warden scales with P_J/phi, phi = P_J g_ac / (theta (P_J sum_jc + sigma_c2)).
struct MmrsDetectionContext {
  double phi = 0.0;
  int l = 0;

  bool paper_form_valid() const { return phi > 0.0 && phi < 1.0; }
};

inline DepEval dep_mmrs_eval(const MmrsDetectionContext& ctx, double lambda, double sigma_w2,
                             double p_j) {
  if (!(ctx.phi > 0.0)) throw invalid_parameter("dep_mmrs: phi must be > 0");
  if (ctx.l < 0) throw invalid_parameter("dep_mmrs: l must be >= 0");
  if (ctx.phi >= 1.0)
    throw closed_form_invalid("dep_mmrs: paper form requires phi < 1");
  if (lambda <= sigma_w2) return {};
  DepEval e;
  e.pfa = pfa(ctx.l, lambda, sigma_w2, p_j);
  const double factor = (ctx.l == 0) ? 1.0 : std::pow(1.0 / (1.0 - ctx.phi), ctx.l);
  e.pmd_raw = 1.0 - factor * std::exp(ctx.phi * (sigma_w2 - lambda) / p_j);
  const double sum = e.pfa + e.pmd_raw;
  e.zeta = clamp01(sum);
  e.clamped = (e.zeta != sum);
  return e;
}

inline double dep_mmrs(const MmrsDetectionContext& ctx, double lambda, double sigma_w2,
                       double p_j) {
  return dep_mmrs_eval(ctx, lambda, sigma_w2, p_j).zeta;
}

// Exact conditional missed-detection CDF under MMRS channel inversion:
// P((P_J/phi) X + P_J S + sigma_w2 < lambda), valid for every phi > 0.
// The published form is its phi < 1 specialization with the positivity
// indicator dropped.
inline double pmd_mmrs_conditional(const MmrsDetectionContext& ctx, double lambda,
                                   double sigma_w2, double p_j) {
  if (!(ctx.phi > 0.0)) throw invalid_parameter("pmd_mmrs_conditional: phi must be > 0");
  if (ctx.l < 0) throw invalid_parameter("pmd_mmrs_conditional: l must be >= 0");
  if (!(p_j > 0.0)) throw invalid_parameter("pmd_mmrs_conditional: p_j must be > 0");
  const double t = (lambda - sigma_w2) / p_j;
  if (t <= 0.0) return 0.0;
  const double phi = ctx.phi;
  const int l = ctx.l;
  if (l == 0) return -std::expm1(-phi * t);
  if (std::fabs(phi - 1.0) < 1e-9) return 1.0 - erlang_tail(l + 1, t);
  if (phi < 1.0 && -l * std::log1p(-phi) < 30.0) {
    const double head = 1.0 - erlang_tail(l, t);
    const double scaled = 1.0 - erlang_tail(l, (1.0 - phi) * t);
    return clamp01(head - std::exp(-phi * t) * std::pow(1.0 - phi, -l) * scaled);
  }
  if (phi > 1.0 && -static_cast<double>(l) * std::log(phi - 1.0) < 25.0) {
    // Partial fractions of the Exp(phi) + Erlang(l,1) transform:
    // pmd = (1-e^-phi t)/(1-phi)^l
    //     + sum_m phi (-1)^(l-m) (phi-1)^-(l-m+1) P(Erlang(m) <= t).
    const long double gamma = static_cast<long double>(phi) - 1.0L;
    const long double sign_l = (l % 2 == 0) ? 1.0L : -1.0L;
    CompensatedSum acc;
    acc.add(sign_l * std::pow(gamma, static_cast<long double>(-l)) *
            (-std::expm1(-static_cast<long double>(phi) * t)));
    // P(Erlang(m) <= t) for m = 1..l, built incrementally from one exp(-t).
    const long double et = std::exp(-static_cast<long double>(t));
    long double term = et;  // t^(m-1) e^-t / (m-1)!
    long double q = et;     // Q(m, t)
    long double coef = static_cast<long double>(phi) * (-sign_l) *
                       std::pow(gamma, static_cast<long double>(-l));  // m = 1
    for (int m = 1; m <= l; ++m) {
      acc.add(coef * (1.0L - q));
      coef *= -gamma;
      term *= static_cast<long double>(t) / m;
      q += term;
    }
    return clamp01(static_cast<double>(acc.value()));
  }
  // Fallback for phi in the ill-conditioned band around 1: integrate the
  // transmitter-conditioned form e^-x F_S(t - x/phi) over x in (0, phi t).
  const double hi = std::min(phi * t, 45.0);
  const double v = gauss_legendre(
      [l, t, phi](double x) {
        return std::exp(-x) * (1.0 - erlang_tail(l, t - x / phi));
      },
      0.0, hi);
  return clamp01(v);
}

// Exact conditional zeta under MMRS channel inversion.
inline double dep_mmrs_exact(const MmrsDetectionContext& ctx, double lambda, double sigma_w2,
                             double p_j) {
  if (lambda <= sigma_w2) return 1.0;
  return clamp01(pfa(ctx.l, lambda, sigma_w2, p_j) + pmd_mmrs_conditional(ctx, lambda, sigma_w2, p_j));
}

// ---------------------------------------------------------------------------
// Analytic derivative of the unclamped zeta
// ---------------------------------------------------------------------------
// Note: the first term carries P_J^-l, i.e. d/dlambda of the Erlang tail in
// (lambda - sigma_w2)/P_J; at P_J = 1 W this matches the printed derivative.

inline double dzeta_dlambda_rrs(int l, double lambda, const SystemParams& p) {
  if (lambda <= p.sigma_w2)
    throw invalid_parameter("dzeta_dlambda_rrs: lambda must exceed sigma_w2");
  const double dpfa =
      (l == 0) ? 0.0 : erlang_tail_derivative(l, (lambda - p.sigma_w2) / p.p_j) / p.p_j;
  const double factor = (l == 0) ? 1.0 : std::pow(p.p_t / (p.p_t - p.p_j), l);
  const double dpmd = factor * std::exp((p.sigma_w2 - lambda) / p.p_t) / p.p_t;
  return dpfa + dpmd;
}

inline double dzeta_dlambda_mmrs(const MmrsDetectionContext& ctx, double lambda,
                                 double sigma_w2, double p_j) {
  if (lambda <= sigma_w2)
    throw invalid_parameter("dzeta_dlambda_mmrs: lambda must exceed sigma_w2");
  if (ctx.phi >= 1.0)
    throw closed_form_invalid("dzeta_dlambda_mmrs: paper form requires phi < 1");
  const double dpfa =
      (ctx.l == 0) ? 0.0 : erlang_tail_derivative(ctx.l, (lambda - sigma_w2) / p_j) / p_j;
  const double factor = (ctx.l == 0) ? 1.0 : std::pow(1.0 / (1.0 - ctx.phi), ctx.l);
  const double dpmd =
      (ctx.phi / p_j) * factor * std::exp(ctx.phi * (sigma_w2 - lambda) / p_j);
  return dpfa + dpmd;
}

// ---------------------------------------------------------------------------
// Optimal threshold search
// ---------------------------------------------------------------------------

struct DetectionAnalysis {
  double lambda_star = 0.0;
  double zeta_star = 1.0;
  double pfa_at_star = 1.0;
  double pmd_at_star = 0.0;        // raw (unclamped) missed-detection component
  bool clamped = false;            // zeta clamping active at lambda_star
  bool interior = false;           // lambda_star strictly inside the bracket, unclamped
  double derivative_at_star = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

struct ZetaMin {
  double x = 0.0;
  double fx = 1.0;
  double step = 0.0;  // scan cell width, for derivative polish
};

// Minimizes zeta over (sigma_w2, lambda_hi]. Bracket: expand lambda_hi by
// doubling its offset from sigma_w2 until zeta(hi) > zeta(midpoint); then a
// linear scan picks the first (leftmost) minimum cell and golden-section
// refines inside it. Ties drift left so that flat clamped regions report
// their left edge.
template <typename F>
inline ZetaMin minimize_zeta(F&& zeta, double sigma_w2, double hi0, int scan_points) {
  const double span0 = std::max(hi0 - sigma_w2, 1e-12 * std::max(sigma_w2, 1.0));
  const double lo = sigma_w2 + 1e-9 * (sigma_w2 + span0);
  double span = span0;
  int doublings = 0;
  for (;;) {
    const double hi = sigma_w2 + span;
    const double mid = 0.5 * (lo + hi);
    if (zeta(hi) > zeta(mid)) break;
    span *= 2.0;
    if (++doublings > 60)
      throw no_interior_minimum("optimal_threshold: bracket expansion exceeded 60 doublings");
  }
  const double hi = sigma_w2 + span;

  int best = 0;
  double best_val = zeta(lo);
  const double step = (hi - lo) / (scan_points - 1);
  for (int i = 1; i < scan_points; ++i) {
    const double v = zeta(lo + i * step);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = lo + std::max(0, best - 1) * step;
  double b = lo + std::min(scan_points - 1, best + 1) * step;

  constexpr double kInvGolden = 0.6180339887498949;
  double c = b - (b - a) * kInvGolden;
  double d = a + (b - a) * kInvGolden;
  double fc = zeta(c);
  double fd = zeta(d);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * (sigma_w2 + b); ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * kInvGolden;
      fc = zeta(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * kInvGolden;
      fd = zeta(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, zeta(x), step};
}

// Newton-free polish: bisect the analytic derivative to a sign change in a
// one-cell neighborhood, when one exists.
template <typename D>
inline double polish_by_derivative(D&& dzeta, double x, double h, double sigma_w2) {
  double a = std::max(x - h, sigma_w2 + 1e-12 * std::max(sigma_w2, 1.0));
  double b = x + h;
  double fa = dzeta(a);
  double fb = dzeta(b);
  if (!(fa < 0.0 && fb > 0.0)) return x;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = dzeta(m);
    if (fm < 0.0) {
      a = m;
    } else {
      b = m;
    }
    if (b - a < 1e-15 * std::max(1.0, b)) break;
  }
  return 0.5 * (a + b);
}

}  // namespace detail

// Minimum of the scheme's closed-form zeta over lambda. RRS uses the
// Theorem-form (clamped) zeta; MMRS requires a context with phi < 1.
inline DetectionAnalysis optimal_threshold(Scheme scheme, int l, const SystemParams& p,
                                           std::optional<MmrsDetectionContext> ctx = {},
                                           int scan_points = 2048) {
  DetectionAnalysis out;
  if (scheme == Scheme::rrs) {
    if (l >= 1 && !p.rrs_closed_form_valid())
      throw closed_form_invalid("optimal_threshold: RRS closed form requires p_t > p_j");
    auto zeta = [&](double lam) { return dep_rrs(l, lam, p); };
    const double hi0 = p.sigma_w2 + p.p_t;
    auto [x, fx, step] = detail::minimize_zeta(zeta, p.sigma_w2, hi0, scan_points);
    auto ev = dep_rrs_eval(l, x, p);
    if (!ev.clamped && ev.zeta > 0.0 && ev.zeta < 1.0) {
      const double px = detail::polish_by_derivative(
          [&](double lam) { return dzeta_dlambda_rrs(l, lam, p); }, x, step, p.sigma_w2);
      auto pe = dep_rrs_eval(l, px, p);
      if (pe.zeta <= fx) {
        x = px;
        ev = pe;
      }
    }
    out.lambda_star = x;
    out.zeta_star = ev.zeta;
    out.pfa_at_star = ev.pfa;
    out.pmd_at_star = ev.pmd_raw;
    out.clamped = ev.clamped;
    out.interior =
        !ev.clamped && ev.zeta > 0.0 && ev.zeta < 1.0 && (x - p.sigma_w2) > 2.0 * step;
    if (x > p.sigma_w2) out.derivative_at_star = dzeta_dlambda_rrs(l, x, p);
    return out;
  }

  if (!ctx) throw invalid_parameter("optimal_threshold: MMRS requires a detection context");
  if (!ctx->paper_form_valid())
    throw closed_form_invalid("optimal_threshold: MMRS paper form requires 0 < phi < 1");
  auto zeta = [&](double lam) { return dep_mmrs(*ctx, lam, p.sigma_w2, p.p_j); };
  const double hi0 = p.sigma_w2 + p.p_j * (ctx->l + 1.0 / ctx->phi);
  auto [x, fx, step] = detail::minimize_zeta(zeta, p.sigma_w2, hi0, scan_points);
  auto ev = dep_mmrs_eval(*ctx, x, p.sigma_w2, p.p_j);
  if (!ev.clamped && ev.zeta > 0.0 && ev.zeta < 1.0) {
    const double px = detail::polish_by_derivative(
        [&](double lam) { return dzeta_dlambda_mmrs(*ctx, lam, p.sigma_w2, p.p_j); }, x, step,
        p.sigma_w2);
    auto pe = dep_mmrs_eval(*ctx, px, p.sigma_w2, p.p_j);
    if (pe.zeta <= fx) {
      x = px;
      ev = pe;
    }
  }
  out.lambda_star = x;
  out.zeta_star = ev.zeta;
  out.pfa_at_star = ev.pfa;
  out.pmd_at_star = ev.pmd_raw;
  out.clamped = ev.clamped;
  out.interior =
      !ev.clamped && ev.zeta > 0.0 && ev.zeta < 1.0 && (x - p.sigma_w2) > 2.0 * step;
  if (x > p.sigma_w2) out.derivative_at_star = dzeta_dlambda_mmrs(*ctx, x, p.sigma_w2, p.p_j);
  return out;
}

// Minimum of the exact conditional zeta under MMRS channel inversion;
// defined for every phi > 0 (no clamping can fire).
inline DetectionAnalysis optimal_threshold_mmrs_exact(const MmrsDetectionContext& ctx,
                                                      double sigma_w2, double p_j,
                                                      int scan_points = 96) {
  auto zeta = [&](double lam) { return dep_mmrs_exact(ctx, lam, sigma_w2, p_j); };
  const double hi0 = sigma_w2 + p_j * (ctx.l + 1.0 / ctx.phi);
  auto [x, fx, step] = detail::minimize_zeta(zeta, sigma_w2, hi0, scan_points);
  (void)step;
  DetectionAnalysis out;
  out.lambda_star = x;
  out.zeta_star = fx;
  out.pfa_at_star = pfa(ctx.l, x, sigma_w2, p_j);
  out.pmd_at_star = pmd_mmrs_conditional(ctx, x, sigma_w2, p_j);
  out.interior = true;
  return out;
}

// ---------------------------------------------------------------------------
// Fading contexts
// ---------------------------------------------------------------------------

// Draw one MMRS detection context: select the max-min relay among n fresh
// pairs, then draw the l active jammers' gains to it. Formula-consistent
// mode keeps l fixed with below-threshold (truncated) gains; scheme mode
// applies the literal threshold rule, so l is random.
inline MmrsDetectionContext sample_mmrs_context(const SystemParams& p, int l, Rng& rng,
                                                SimMode mode = SimMode::formula_consistent) {
  const int n = p.n;
  double best_min = -1.0;
  double best_gac = 0.0;
  for (int i = 0; i < n; ++i) {
    const double ga = rng.exponential();
    const double gb = rng.exponential();
    const double m = std::min(ga, gb);
    if (m > best_min) {
      best_min = m;
      best_gac = ga;
    }
  }
  double jam_sum = 0.0;
  int count = 0;
  if (mode == SimMode::formula_consistent) {
    const double c = -std::expm1(-p.alpha);
    for (int j = 0; j < l; ++j) jam_sum += rng.truncated_exponential_premul(c);
    count = l;
  } else {
    for (int j = 0; j < n - 1; ++j) {
      const double g = rng.exponential();
      if (g < p.alpha) {
        jam_sum += g;
        ++count;
      }
    }
  }
  MmrsDetectionContext ctx;
  ctx.l = count;
  ctx.phi = p.p_j * best_gac / (p.theta * (p.p_j * jam_sum + p.sigma_c2));
  return ctx;
}

// Expectation of the per-context minimum zeta over fading, plus the
// paper-form average restricted to its phi < 1 validity region.
struct MmrsZetaStats {
  double zeta_star_exact_mean = 0.0;  // exact conditional form, all contexts
  double zeta_star_paper_mean = 0.0;  // paper form, contexts with phi < 1
  double invalid_fraction = 0.0;      // share of contexts with phi >= 1
  int contexts = 0;
};

inline MmrsZetaStats averaged_zeta_star_mmrs(const SystemParams& p, int l, int n_contexts,
                                             std::uint64_t seed,
                                             SimMode mode = SimMode::formula_consistent) {
  if (n_contexts < 1) throw invalid_parameter("averaged_zeta_star_mmrs: need >= 1 context");
  Rng rng(seed, /*salt=*/0x637478u);
  CompensatedSum exact_sum;
  CompensatedSum paper_sum;
  int invalid = 0;
  for (int i = 0; i < n_contexts; ++i) {
    const MmrsDetectionContext ctx = sample_mmrs_context(p, l, rng, mode);
    exact_sum.add(optimal_threshold_mmrs_exact(ctx, p.sigma_w2, p.p_j).zeta_star);
    if (ctx.paper_form_valid()) {
      paper_sum.add(optimal_threshold(Scheme::mmrs, ctx.l, p, ctx).zeta_star);
    } else {
      ++invalid;
    }
  }
  MmrsZetaStats s;
  s.contexts = n_contexts;
  s.invalid_fraction = static_cast<double>(invalid) / n_contexts;
  s.zeta_star_exact_mean = static_cast<double>(exact_sum.value()) / n_contexts;
  const int valid = n_contexts - invalid;
  s.zeta_star_paper_mean =
      valid > 0 ? static_cast<double>(paper_sum.value()) / valid
                : std::numeric_limits<double>::quiet_NaN();
  return s;
}

}  // namespace crl
