#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sco/profile.hpp"
#include "sco/random.hpp"
#include "sco/sgd.hpp"

namespace sco {

struct FyConfig {
  double epsilon = 1.0;   // Gumbel noise scale
  int mc_samples = 1;     // samples per perturbed-rank estimate
  double learning_rate = 0.01;
  std::int64_t iterations = 10000;
  int batch_size = 32;    // 0 selects full-batch
  std::uint64_t seed = 0;
  double theta_min = 0.0;
  double theta_max = 100.0;
  std::int64_t checkpoint_every = 0;
  bool record_checkpoint_loss = true;
  std::optional<Ranking> convergence_target;
};

// Rank vector of values: ranks[k] counts coordinates strictly smaller than
// values[k], ties broken by ascending index (higher value => higher rank).
std::vector<double> hard_ranks(std::span<const double> values);

// Monte-Carlo average of hard_ranks over values + epsilon * Gumbel noise.
// Every sample's ranks are a permutation of 0..n-1, so the average sums to
// n(n-1)/2 exactly.
std::vector<double> perturbed_ranks(std::span<const double> values,
                                    double epsilon, int mc_samples, Rng& rng);

// Target ranks of a vote: the most-preferred element gets |v|-1, the least
// preferred 0.
std::vector<double> vote_target_ranks(const Vote& vote);

// Batch-mean Fenchel-Young gradient: per vote, (perturbed ranks of theta
// restricted to the vote's candidates) minus the target ranks, scattered
// into full-length coordinates. Multiplicities weight the mean.
std::vector<double> fy_gradient(std::span<const Vote> batch,
                                const Ratings& ratings, const FyConfig& config,
                                Rng& rng);

// Monte-Carlo estimate of the batch-mean Fenchel-Young loss
// F_eps(theta_S) - y^T theta_S (monitoring only).
double fy_loss(std::span<const Vote> batch, const Ratings& ratings,
               const FyConfig& config, Rng& rng);

// Projected stochastic gradient descent with fy_gradient. Same sampling,
// projection, tracing and determinism contract as fit_sgd.
std::pair<Ratings, TrainingTrace> fit_fy(const PreferenceProfile& profile,
                                         const FyConfig& config);

}  // namespace sco
