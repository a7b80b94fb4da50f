#pragma once

// Chunked Monte Carlo kernel. Trials are split into fixed-size chunks,
// each driven by substream (seed, salt, chunk index); chunk statistics
// are reduced in chunk order, so results are bit-identical for any
// worker count.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "crl/errors.hpp"
#include "crl/rng.hpp"

namespace crl {

enum class SimMode { formula_consistent, scheme };

// One Monte Carlo estimate with a 95% normal-approximation interval.
struct MetricEstimate {
  double mean = 0.0;
  double half_width = 0.0;
  long long trials = 0;
  std::uint64_t seed = 0;
  SimMode mode = SimMode::formula_consistent;
};

inline constexpr long long kMcChunk = 8192;

namespace detail {

struct MomentSums {
  double sum = 0.0;
  double sumsq = 0.0;
};

// Runs fn(rng, out) `trials` times accumulating per-component moments.
// fn writes `width` values per trial into out.
template <typename Fn>
inline std::vector<MomentSums> mc_moments(long long trials, std::uint64_t seed,
                                          std::uint64_t salt, int workers, int width,
                                          Fn&& fn) {
  if (trials < 1) throw invalid_parameter("trials: must be >= 1");
  if (width < 1) throw invalid_parameter("mc_moments: width must be >= 1");
  const long long n_chunks = (trials + kMcChunk - 1) / kMcChunk;
  std::vector<std::vector<MomentSums>> per_chunk(static_cast<std::size_t>(n_chunks));

  auto run_chunk = [&](long long c) {
    const long long lo = c * kMcChunk;
    const long long hi = std::min(trials, lo + kMcChunk);
    Rng rng(seed, salt, static_cast<std::uint64_t>(c));
    std::vector<MomentSums> acc(static_cast<std::size_t>(width));
    std::vector<double> out(static_cast<std::size_t>(width));
    for (long long t = lo; t < hi; ++t) {
      fn(rng, out.data());
      for (int k = 0; k < width; ++k) {
        acc[static_cast<std::size_t>(k)].sum += out[static_cast<std::size_t>(k)];
        acc[static_cast<std::size_t>(k)].sumsq +=
            out[static_cast<std::size_t>(k)] * out[static_cast<std::size_t>(k)];
      }
    }
    per_chunk[static_cast<std::size_t>(c)] = std::move(acc);
  };

  const int nw = std::max(1, workers);
  if (nw == 1 || n_chunks == 1) {
    for (long long c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::atomic<long long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nw));
    for (int w = 0; w < nw; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const long long c = next.fetch_add(1);
          if (c >= n_chunks) return;
          run_chunk(c);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  // Deterministic reduce in chunk order.
  std::vector<MomentSums> total(static_cast<std::size_t>(width));
  for (long long c = 0; c < n_chunks; ++c) {
    for (int k = 0; k < width; ++k) {
      total[static_cast<std::size_t>(k)].sum += per_chunk[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)].sum;
      total[static_cast<std::size_t>(k)].sumsq += per_chunk[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)].sumsq;
    }
  }
  return total;
}

inline MetricEstimate to_estimate(const MomentSums& m, long long trials, std::uint64_t seed,
                                  SimMode mode) {
  MetricEstimate e;
  e.trials = trials;
  e.seed = seed;
  e.mode = mode;
  e.mean = m.sum / static_cast<double>(trials);
  if (trials > 1) {
    double var = (m.sumsq - m.sum * m.sum / static_cast<double>(trials)) /
                 static_cast<double>(trials - 1);
    if (var < 0.0) var = 0.0;
    e.half_width = 1.96 * std::sqrt(var / static_cast<double>(trials));
  }
  return e;
}

}  // namespace detail

// Mean of a scalar per-trial functional.
template <typename Fn>
inline MetricEstimate mc_estimate(long long trials, std::uint64_t seed, std::uint64_t salt,
                                  int workers, SimMode mode, Fn&& fn) {
  auto moments = detail::mc_moments(trials, seed, salt, workers, 1,
                                    [&fn](Rng& rng, double* out) { out[0] = fn(rng); });
  return detail::to_estimate(moments[0], trials, seed, mode);
}

// Means of a fixed-width vector functional (one pass, shared draws).
template <typename Fn>
inline std::vector<MetricEstimate> mc_estimate_vector(long long trials, std::uint64_t seed,
                                                      std::uint64_t salt, int workers,
                                                      SimMode mode, int width, Fn&& fn) {
  auto moments = detail::mc_moments(trials, seed, salt, workers, width, fn);
  std::vector<MetricEstimate> out;
  out.reserve(moments.size());
  for (const auto& m : moments) out.push_back(detail::to_estimate(m, trials, seed, mode));
  return out;
}

}  // namespace crl
