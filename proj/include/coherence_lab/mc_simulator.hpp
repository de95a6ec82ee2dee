// Monte Carlo estimate of chained yes/no answers across two displacements.
//
// Each trial draws three uniforms from its batch's stream:
//   1. answer at theta (is the statement true at I(theta) given it is true at I(0)?)
//   2. answer at vartheta from the intermediate truth state; a "no" means the
//      complementary statement holds there, so "yes" has probability 1 - p(vartheta)
//   3. an independent direct answer at theta + vartheta
//
// Streams: trials are cut into fixed batches of kBatchSize. Batch b uses
// std::mt19937_64 seeded with std::seed_seq{seed_lo, seed_hi, b}; uniforms
// are ((x >> 11) + 0.5) * 2^-53, which lie strictly inside (0, 1). Results
// are independent of the number of worker threads.
#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "coherence_lab/probability.hpp"

namespace coherence_lab::mc {

using Model = probability::CoherenceModel<double>;

inline constexpr std::string_view kGeneratorName = "mt19937_64/seed_seq(seed_lo,seed_hi,batch)/u53+0.5";
inline constexpr std::uint64_t kBatchSize = 1u << 16;
inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr std::uint64_t kDefaultTrials = 1'000'000;

struct TrialPlan {
  Model model{0.5};
  double theta = 0;
  double vartheta = 0;
  std::uint64_t trials = kDefaultTrials;
  std::uint64_t seed = kDefaultSeed;
};

struct TrialReport {
  double a;
  double theta;
  double vartheta;
  std::uint64_t trials;
  std::uint64_t seed;
  double p_direct_hat;
  double p_chained_hat;
  double interference_hat;   // p_direct_hat - p_chained_hat
  double analytic_interference;
  double analytic_classical;
  double std_error;          // of interference_hat, binomial at observed rates

  /// |interference_hat - analytic| <= sigmas * std_error
  bool within(double sigmas) const noexcept;
};

/// Stream for batch `batch` of a run seeded with `seed`.
std::mt19937_64 batch_stream(std::uint64_t seed, std::uint64_t batch);

/// Uniform in (0, 1) from one 64-bit draw.
double next_uniform(std::mt19937_64& rng);

/// "yes" with probability cos^2(a theta).
bool sample_answer(const Model& model, double theta, std::mt19937_64& rng);

/// `threads` = 0 picks the hardware concurrency.
TrialReport run_chained(const TrialPlan& plan, unsigned threads = 0);

/// One report per theta, each run with the same seed and fixed vartheta.
std::vector<TrialReport> sweep(const Model& model, std::span<const double> theta_grid, double vartheta,
                               std::uint64_t trials, std::uint64_t seed, unsigned threads = 0);

}  // namespace coherence_lab::mc
