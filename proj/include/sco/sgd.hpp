#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sco/profile.hpp"
#include "sco/random.hpp"

namespace sco {

// Bounded rating vector; sorting it (descending, index tie-break) induces a
// ranking.
struct Ratings {
  std::vector<double> theta;
  double theta_min = 0.0;
  double theta_max = 100.0;
};

struct SgdConfig {
  double learning_rate = 0.01;
  double temperature = 1.0;  // tau
  // Votes per sampled batch. 0 selects full-batch (deterministic) gradient
  // descent over the whole profile.
  int batch_size = 32;
  std::int64_t iterations = 10000;
  std::uint64_t seed = 0;
  double theta_min = 0.0;
  double theta_max = 100.0;
  // Trace cadence; 0 selects max(1, iterations / 1000).
  std::int64_t checkpoint_every = 0;
  // Full-profile loss per checkpoint; disable for large datasets where only
  // the rankings matter.
  bool record_checkpoint_loss = true;
  // Optional inverse-sqrt learning-rate decay (alpha_t = alpha / sqrt(t+1)).
  bool inverse_sqrt_decay = false;
  // When set, the trainer checks the induced ranking every iteration and
  // reports the first iteration from which it equals this target onward.
  std::optional<Ranking> convergence_target;
};

struct Checkpoint {
  std::int64_t iteration;  // 0-based: state after iteration+1 updates
  double loss;             // full-profile sigmoid loss at this state
  Ranking ranking;
};

struct TrainingTrace {
  std::vector<Checkpoint> checkpoints;
  // First 0-based iteration from which the induced ranking equals
  // convergence_target at every subsequent iteration; requires the target to
  // be set in the config.
  std::optional<std::int64_t> converged_at;
};

// Smooth discrepancy D~(theta_a, theta_b) = 1 / (1 + exp((theta_a -
// theta_b)/tau)): close to 1 when b outrates a (the ratings contradict a
// vote preferring a), 1/2 at a tie.
double soft_discrepancy(double theta_a, double theta_b, double tau);

// Numerically stable sigma(a) - sigma(b) for the standard logistic sigma.
// Exact sign even when both arguments are deep in a saturated tail.
double sigmoid_diff(double a, double b);

// Multiplicity-weighted sum over votes of pairwise soft discrepancies
// (Eq.-style batch loss; the full-profile loss when batch = all votes).
double sigmoid_loss(std::span<const Vote> batch, const Ratings& ratings,
                    double tau);
double sigmoid_loss(const PreferenceProfile& profile, const Ratings& ratings,
                    double tau);

// Exact gradient of sigmoid_loss with respect to theta (the weighted sum,
// no batch normalization). Components of alternatives absent from the batch
// are exactly zero.
std::vector<double> sigmoid_loss_gradient(std::span<const Vote> batch,
                                          const Ratings& ratings, double tau);

// Exact change of the full-profile sigmoid loss when theta[alt] is raised by
// delta (others fixed), computed through the margin decomposition with
// sigmoid_diff so the sign survives saturation. Strictly negative for any
// delta > 0 when alt is a strong Condorcet winner.
double sigmoid_loss_delta(const MarginMatrix& margins,
                          std::span<const double> theta, int alt,
                          double delta, double tau);

// Componentwise clamp into [theta_min, theta_max].
Ratings project(Ratings ratings);

// Descending sort of the ratings; ties broken by ascending index.
Ranking induced_ranking(std::span<const double> theta);
Ranking induced_ranking(const Ratings& ratings);

// Projected (stochastic) gradient descent on the sigmoid loss. Batches are
// sampled uniformly with replacement over expanded ballots (a multiplicity-w
// vote is w ballots); the update applies the batch-mean gradient. With
// batch_size = 0 every iteration uses the exact mean gradient over the whole
// profile. theta starts at the box midpoint.
std::pair<Ratings, TrainingTrace> fit_sgd(const PreferenceProfile& profile,
                                          const SgdConfig& config);

// One projected gradient step on a single ballot (multiplicity ignored).
// Equals a fit_sgd step with batch {vote}. Only the ratings of alternatives
// in the vote change.
Ratings update_online(Ratings ratings, const Vote& vote, double alpha,
                      double tau);

}  // namespace sco
