#pragma once

// System parameters, fading realizations, and the relay/jammer selection
// rules. Gains are |h|^2 for unit-variance complex Gaussian h, i.e.
// Exponential(1); they are sampled directly (the Gaussian route stays
// available in Rng as a cross-check).

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "crl/errors.hpp"
#include "crl/rng.hpp"

namespace crl {

inline double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

// All scalar model parameters. Powers and noise variances are linear watts;
// dB inputs are converted at config-ingestion time.
struct SystemParams {
  int n = 1;               // potential relays
  double p_t = 1.0;        // covert transmit power of Alice/Carol [W]
  double p_j = 1.0;        // jammer transmit power [W]
  double p_max = 1.0;      // power cap for P_T and P_J [W]
  double alpha = 0.3;      // jammer-selection channel-gain threshold
  double theta = 1.0;      // SIR decoding threshold
  double sigma_w2 = 1.0;   // noise variance at Willie [W]
  double sigma_c2 = 1.0;   // noise variance at Carol [W]
  double sigma_b2 = 1.0;   // noise variance at Bob [W]
  double epsilon_c = 0.1;  // covertness requirement

  // The RRS detection closed form needs (P_T/(P_T-P_J))^l finite positive.
  bool rrs_closed_form_valid() const { return p_t > p_j; }

  // Mean jammer count (n-1 candidates, each below alpha w.p. 1-e^-alpha),
  // rounded; the default l wherever a fixed count is needed.
  int default_jammer_count() const {
    return static_cast<int>(std::lround((n - 1) * -std::expm1(-alpha)));
  }

  std::vector<std::string> validate() const {
    std::vector<std::string> issues;
    auto req = [&issues](bool ok, const char* msg) {
      if (!ok) issues.emplace_back(msg);
    };
    req(n >= 1, "params.n: must be >= 1");
    req(p_t > 0.0, "params.p_t_w: must be > 0");
    req(p_j > 0.0, "params.p_j_w: must be > 0");
    req(p_max > 0.0, "params.p_max_w: must be > 0");
    req(alpha > 0.0, "params.alpha: must be > 0");
    req(theta > 0.0, "params.theta: must be > 0");
    req(sigma_w2 > 0.0, "params.sigma_w2: must be > 0");
    req(sigma_c2 > 0.0, "params.sigma_c2: must be > 0");
    req(sigma_b2 > 0.0, "params.sigma_b2: must be > 0");
    req(p_t <= p_max, "params.p_t_w: exceeds p_max_w");
    req(p_j <= p_max, "params.p_j_w: exceeds p_max_w");
    req(epsilon_c > 0.0 && epsilon_c < 1.0, "params.epsilon_c: must lie in (0,1)");
    return issues;
  }

  void validate_or_throw() const {
    auto issues = validate();
    if (!issues.empty()) {
      std::string msg;
      for (const auto& s : issues) {
        if (!msg.empty()) msg += "; ";
        msg += s;
      }
      throw invalid_parameter(msg);
    }
  }
};

// Squared channel gains for one time slot.
struct ChannelRealization {
  std::vector<double> g_ac;  // Alice -> relay i
  std::vector<double> g_cb;  // relay i -> Bob
  double g_aw = 0.0;         // Alice -> Willie
  double g_cw = 0.0;         // selected relay -> Willie
  std::vector<double> g_jw;  // relay i -> Willie
  std::vector<double> g_jc;  // relay i -> selected relay
  std::vector<double> g_jb;  // relay i -> Bob
};

// Draw one slot's gains, all i.i.d. Exponential(1), in a fixed field order.
inline ChannelRealization sample_realization(const SystemParams& params, Rng& rng) {
  const std::size_t n = static_cast<std::size_t>(params.n);
  ChannelRealization r;
  r.g_ac.resize(n);
  r.g_cb.resize(n);
  r.g_jw.resize(n);
  r.g_jc.resize(n);
  r.g_jb.resize(n);
  for (auto& g : r.g_ac) g = rng.exponential();
  for (auto& g : r.g_cb) g = rng.exponential();
  r.g_aw = rng.exponential();
  r.g_cw = rng.exponential();
  for (auto& g : r.g_jw) g = rng.exponential();
  for (auto& g : r.g_jc) g = rng.exponential();
  for (auto& g : r.g_jb) g = rng.exponential();
  return r;
}

// RRS: uniform choice among the n potential relays.
inline int select_rrs(int n, Rng& rng) {
  if (n < 1) throw invalid_parameter("select_rrs: n must be >= 1");
  return static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n)));
}

// MMRS: argmax_i min(g_ac[i], g_cb[i]); ties break to the lowest index.
inline int select_mmrs(std::span<const double> g_ac, std::span<const double> g_cb) {
  if (g_ac.empty() || g_ac.size() != g_cb.size())
    throw invalid_parameter("select_mmrs: gain lists must be nonempty and equal length");
  int best = 0;
  double best_min = std::min(g_ac[0], g_cb[0]);
  for (std::size_t i = 1; i < g_ac.size(); ++i) {
    const double m = std::min(g_ac[i], g_cb[i]);
    if (m > best_min) {
      best_min = m;
      best = static_cast<int>(i);
    }
  }
  return best;
}

enum class Hop { first, second };

// Active jammers for one hop plus their count.
struct JammerSet {
  Hop hop = Hop::first;
  std::vector<int> members;
  int l = 0;
};

// Threshold rule: relay i (excluding the selected one) jams when its gain
// to the hop's receiver is below alpha.
inline JammerSet select_jammers(std::span<const double> gains_to_receiver, double alpha,
                                int selected, Hop hop) {
  if (!(alpha > 0.0)) throw invalid_parameter("select_jammers: alpha must be > 0");
  if (selected < 0 || static_cast<std::size_t>(selected) >= gains_to_receiver.size())
    throw invalid_parameter("select_jammers: selected index out of range");
  JammerSet set;
  set.hop = hop;
  for (std::size_t i = 0; i < gains_to_receiver.size(); ++i) {
    if (static_cast<int>(i) == selected) continue;
    if (gains_to_receiver[i] < alpha) set.members.push_back(static_cast<int>(i));
  }
  set.l = static_cast<int>(set.members.size());
  return set;
}

}  // namespace crl
