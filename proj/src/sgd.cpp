#include "sco/sgd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sco {

double soft_discrepancy(double theta_a, double theta_b, double tau) {
  const double x = (theta_a - theta_b) / tau;
  // 1 / (1 + e^x), evaluated from the side that cannot overflow.
  if (x >= 0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

double sigmoid_diff(double a, double b) {
  // sigma(a) - sigma(b) = sigma(b) * sigma(-a) * (e^(a-b) - 1).
  const double sb = soft_discrepancy(-b, 0.0, 1.0);   // sigma(b)
  const double sna = soft_discrepancy(a, 0.0, 1.0);   // sigma(-a)
  return sb * sna * std::expm1(a - b);
}

namespace {

void check_ids(std::span<const Vote> batch, std::size_t m) {
  for (const Vote& v : batch) {
    for (int id : v.order) {
      if (id < 0 || static_cast<std::size_t>(id) >= m) {
        throw std::invalid_argument("vote id outside rating range");
      }
    }
  }
}

double vote_loss(const Vote& v, std::span<const double> theta, double tau) {
  double loss = 0.0;
  for (std::size_t i = 0; i < v.order.size(); ++i) {
    for (std::size_t j = i + 1; j < v.order.size(); ++j) {
      loss += soft_discrepancy(theta[v.order[i]], theta[v.order[j]], tau);
    }
  }
  return loss;
}

// Adds weight * d(vote loss)/d(theta) into grad.
void accumulate_vote_gradient(const Vote& v, std::span<const double> theta,
                              double tau, double weight,
                              std::vector<double>& grad) {
  for (std::size_t i = 0; i < v.order.size(); ++i) {
    for (std::size_t j = i + 1; j < v.order.size(); ++j) {
      const int a = v.order[i];
      const int b = v.order[j];
      const double s = soft_discrepancy(theta[a], theta[b], tau);
      const double c = weight * s * (1.0 - s) / tau;
      grad[a] -= c;
      grad[b] += c;
    }
  }
}

Ranking induced_ranking_into(std::span<const double> theta,
                             std::vector<int>& scratch) {
  scratch.resize(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) scratch[i] = (int)i;
  std::sort(scratch.begin(), scratch.end(), [&](int a, int b) {
    if (theta[a] != theta[b]) return theta[a] > theta[b];
    return a < b;
  });
  return scratch;
}

}  // namespace

double sigmoid_loss(std::span<const Vote> batch, const Ratings& ratings,
                    double tau) {
  check_ids(batch, ratings.theta.size());
  double loss = 0.0;
  for (const Vote& v : batch) {
    loss += static_cast<double>(v.multiplicity) *
            vote_loss(v, ratings.theta, tau);
  }
  return loss;
}

double sigmoid_loss(const PreferenceProfile& profile, const Ratings& ratings,
                    double tau) {
  return sigmoid_loss(profile.votes(), ratings, tau);
}

std::vector<double> sigmoid_loss_gradient(std::span<const Vote> batch,
                                          const Ratings& ratings,
                                          double tau) {
  check_ids(batch, ratings.theta.size());
  std::vector<double> grad(ratings.theta.size(), 0.0);
  for (const Vote& v : batch) {
    accumulate_vote_gradient(v, ratings.theta, tau,
                             static_cast<double>(v.multiplicity), grad);
  }
  return grad;
}

double sigmoid_loss_delta(const MarginMatrix& margins,
                          std::span<const double> theta, int alt,
                          double delta, double tau) {
  // Raising theta[alt] only moves terms involving alt. Grouping the (alt,b)
  // and (b,alt) discrepancies gives M(alt,b) * [sigma(u') - sigma(u)] with
  // u = (theta_b - theta_alt)/tau and u' = u - delta/tau.
  double change = 0.0;
  const int m = margins.size();
  for (int b = 0; b < m; ++b) {
    if (b == alt) continue;
    const std::int64_t margin = margins.margin(alt, b);
    if (margin == 0) continue;
    const double u = (theta[b] - theta[alt]) / tau;
    change += static_cast<double>(margin) * sigmoid_diff(u - delta / tau, u);
  }
  return change;
}

Ratings project(Ratings ratings) {
  for (double& t : ratings.theta) {
    t = std::clamp(t, ratings.theta_min, ratings.theta_max);
  }
  return ratings;
}

Ranking induced_ranking(std::span<const double> theta) {
  std::vector<int> scratch;
  return induced_ranking_into(theta, scratch);
}

Ranking induced_ranking(const Ratings& ratings) {
  return induced_ranking(std::span<const double>(ratings.theta));
}

std::pair<Ratings, TrainingTrace> fit_sgd(const PreferenceProfile& profile,
                                          const SgdConfig& config) {
  if (profile.votes().empty()) {
    throw std::invalid_argument("fit_sgd: empty profile");
  }
  const int m = profile.num_alternatives();
  Ratings ratings;
  ratings.theta_min = config.theta_min;
  ratings.theta_max = config.theta_max;
  ratings.theta.assign(m, 0.5 * (config.theta_min + config.theta_max));

  // Expanded ballot index: sampling a uniform entry makes every underlying
  // ballot equally likely regardless of how votes were aggregated.
  std::vector<int> ballots;
  if (config.batch_size > 0) {
    for (std::size_t i = 0; i < profile.votes().size(); ++i) {
      const std::int64_t w = profile.votes()[i].multiplicity;
      for (std::int64_t k = 0; k < w; ++k) ballots.push_back((int)i);
    }
  }

  const double total_weight = static_cast<double>(profile.total_weight());
  const std::int64_t cadence =
      config.checkpoint_every > 0
          ? config.checkpoint_every
          : std::max<std::int64_t>(1, config.iterations / 1000);

  Rng rng(config.seed);
  TrainingTrace trace;
  std::vector<double> grad(m, 0.0);
  std::vector<int> scratch;
  std::optional<std::int64_t> stable_since;

  for (std::int64_t t = 0; t < config.iterations; ++t) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double batch_weight = 0.0;
    if (config.batch_size == 0) {
      for (const Vote& v : profile.votes()) {
        accumulate_vote_gradient(v, ratings.theta, config.temperature,
                                 static_cast<double>(v.multiplicity), grad);
      }
      batch_weight = total_weight;
    } else {
      for (int k = 0; k < config.batch_size; ++k) {
        const int vi = ballots[rng.uniform_int(ballots.size())];
        accumulate_vote_gradient(profile.votes()[vi], ratings.theta,
                                 config.temperature, 1.0, grad);
      }
      batch_weight = static_cast<double>(config.batch_size);
    }
    double alpha = config.learning_rate;
    if (config.inverse_sqrt_decay) {
      alpha /= std::sqrt(static_cast<double>(t + 1));
    }
    const double step = alpha / batch_weight;
    for (int i = 0; i < m; ++i) {
      ratings.theta[i] = std::clamp(ratings.theta[i] - step * grad[i],
                                    config.theta_min, config.theta_max);
    }

    if (config.convergence_target.has_value()) {
      const Ranking r = induced_ranking_into(ratings.theta, scratch);
      if (r == *config.convergence_target) {
        if (!stable_since.has_value()) stable_since = t;
      } else {
        stable_since.reset();
      }
    }
    if ((t + 1) % cadence == 0 || t + 1 == config.iterations) {
      Checkpoint cp;
      cp.iteration = t;
      cp.loss = config.record_checkpoint_loss
                    ? sigmoid_loss(profile, ratings, config.temperature)
                    : 0.0;
      cp.ranking = induced_ranking_into(ratings.theta, scratch);
      trace.checkpoints.push_back(std::move(cp));
    }
  }
  trace.converged_at = stable_since;
  return {std::move(ratings), std::move(trace)};
}

Ratings update_online(Ratings ratings, const Vote& vote, double alpha,
                      double tau) {
  const Vote single{vote.order, 1};
  std::vector<double> grad(ratings.theta.size(), 0.0);
  check_ids(std::span<const Vote>(&single, 1), ratings.theta.size());
  accumulate_vote_gradient(single, ratings.theta, tau, 1.0, grad);
  for (int id : vote.order) {
    ratings.theta[id] = std::clamp(ratings.theta[id] - alpha * grad[id],
                                   ratings.theta_min, ratings.theta_max);
  }
  return ratings;
}

}  // namespace sco
