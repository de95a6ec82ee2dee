#include "coherence_lab/mc_simulator.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

namespace coherence_lab::mc {

namespace {

struct Tally {
  std::uint64_t direct_yes = 0;
  std::uint64_t chained_yes = 0;
};

Tally run_batch(const TrialPlan& plan, std::uint64_t batch, std::uint64_t count) {
  std::mt19937_64 rng = batch_stream(plan.seed, batch);
  const double p_first = probability::p(plan.model, plan.theta).value();
  const double p_second = probability::p(plan.model, plan.vartheta).value();
  const double p_direct = probability::p(plan.model, plan.theta + plan.vartheta).value();
  Tally tally;
  for (std::uint64_t i = 0; i < count; ++i) {
    const bool intermediate = next_uniform(rng) < p_first;
    const double second = intermediate ? p_second : 1.0 - p_second;
    if (next_uniform(rng) < second) ++tally.chained_yes;
    if (next_uniform(rng) < p_direct) ++tally.direct_yes;
  }
  return tally;
}

}  // namespace

bool TrialReport::within(double sigmas) const noexcept {
  return std::abs(interference_hat - analytic_interference) <= sigmas * std_error;
}

std::mt19937_64 batch_stream(std::uint64_t seed, std::uint64_t batch) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(batch & 0xffffffffu), static_cast<std::uint32_t>(batch >> 32)};
  return std::mt19937_64(seq);
}

double next_uniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

bool sample_answer(const Model& model, double theta, std::mt19937_64& rng) {
  return next_uniform(rng) < probability::p(model, theta).value();
}

TrialReport run_chained(const TrialPlan& plan, unsigned threads) {
  if (plan.trials == 0) throw std::invalid_argument("trial plan needs at least one trial");
  const std::uint64_t batches = (plan.trials + kBatchSize - 1) / kBatchSize;
  auto batch_count = [&](std::uint64_t b) { return std::min(kBatchSize, plan.trials - b * kBatchSize); };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t workers = std::min<std::uint64_t>(threads, batches);

  std::vector<Tally> tallies(batches);
  if (workers <= 1) {
    for (std::uint64_t b = 0; b < batches; ++b) tallies[b] = run_batch(plan, b, batch_count(b));
  } else {
    std::vector<std::future<void>> jobs;
    for (std::uint64_t w = 0; w < workers; ++w)
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::uint64_t b = w; b < batches; b += workers) tallies[b] = run_batch(plan, b, batch_count(b));
      }));
    for (auto& job : jobs) job.get();
  }

  Tally total;
  for (const Tally& t : tallies) {
    total.direct_yes += t.direct_yes;
    total.chained_yes += t.chained_yes;
  }

  const double n = static_cast<double>(plan.trials);
  TrialReport r{};
  r.a = plan.model.a;
  r.theta = plan.theta;
  r.vartheta = plan.vartheta;
  r.trials = plan.trials;
  r.seed = plan.seed;
  r.p_direct_hat = static_cast<double>(total.direct_yes) / n;
  r.p_chained_hat = static_cast<double>(total.chained_yes) / n;
  r.interference_hat = r.p_direct_hat - r.p_chained_hat;
  r.analytic_interference = probability::interference_term(plan.model, plan.theta, plan.vartheta);
  r.analytic_classical = probability::classical_compose(probability::p(plan.model, plan.theta).value(),
                                                        probability::p(plan.model, plan.vartheta).value());
  // Direct and chained draws are independent, so their variances add.
  r.std_error = std::sqrt((r.p_direct_hat * (1 - r.p_direct_hat) + r.p_chained_hat * (1 - r.p_chained_hat)) / n);
  return r;
}

std::vector<TrialReport> sweep(const Model& model, std::span<const double> theta_grid, double vartheta,
                               std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  if (theta_grid.empty()) throw std::invalid_argument("sweep grid is empty");
  std::vector<TrialReport> rows;
  rows.reserve(theta_grid.size());
  for (double theta : theta_grid) rows.push_back(run_chained(TrialPlan{model, theta, vartheta, trials, seed}, threads));
  return rows;
}

}  // namespace coherence_lab::mc
