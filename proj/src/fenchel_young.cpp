#include "sco/fenchel_young.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sco {

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

void hard_ranks_into(std::span<const double> values,
                     std::vector<double>& ranks, std::vector<int>& scratch) {
  const std::size_t n = values.size();
  scratch.resize(n);
  for (std::size_t i = 0; i < n; ++i) scratch[i] = (int)i;
  std::sort(scratch.begin(), scratch.end(), [&](int a, int b) {
    if (values[a] != values[b]) return values[a] < values[b];
    return a < b;
  });
  ranks.assign(n, 0.0);
  for (std::size_t pos = 0; pos < n; ++pos) {
    ranks[scratch[pos]] = static_cast<double>(pos);
  }
}

// One noisy rank sample of theta restricted to the vote, accumulated into
// out (length |v|).
void accumulate_rank_sample(std::span<const double> theta_sub, double epsilon,
                            Rng& rng, std::vector<double>& noisy,
                            std::vector<double>& ranks,
                            std::vector<int>& scratch,
                            std::vector<double>& out) {
  noisy.resize(theta_sub.size());
  for (std::size_t k = 0; k < theta_sub.size(); ++k) {
    noisy[k] = theta_sub[k] + epsilon * rng.gumbel();
  }
  hard_ranks_into(noisy, ranks, scratch);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += ranks[k];
}

}  // namespace

std::vector<double> hard_ranks(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("hard_ranks: empty input");
  }
  std::vector<double> ranks;
  std::vector<int> scratch;
  hard_ranks_into(values, ranks, scratch);
  return ranks;
}

std::vector<double> perturbed_ranks(std::span<const double> values,
                                    double epsilon, int mc_samples,
                                    Rng& rng) {
  if (values.empty()) {
    throw std::invalid_argument("perturbed_ranks: empty input");
  }
  if (epsilon <= 0 || mc_samples < 1) {
    throw std::invalid_argument("perturbed_ranks: bad epsilon/mc_samples");
  }
  std::vector<double> sum(values.size(), 0.0);
  std::vector<double> noisy, ranks;
  std::vector<int> scratch;
  for (int s = 0; s < mc_samples; ++s) {
    accumulate_rank_sample(values, epsilon, rng, noisy, ranks, scratch, sum);
  }
  for (double& x : sum) x /= static_cast<double>(mc_samples);
  return sum;
}

std::vector<double> vote_target_ranks(const Vote& vote) {
  const std::size_t len = vote.order.size();
  std::vector<double> y(len);
  for (std::size_t k = 0; k < len; ++k) {
    y[k] = static_cast<double>(len - 1 - k);
  }
  return y;
}

std::vector<double> fy_gradient(std::span<const Vote> batch,
                                const Ratings& ratings, const FyConfig& config,
                                Rng& rng) {
  check_ids(batch, ratings.theta.size());
  std::vector<double> grad(ratings.theta.size(), 0.0);
  double total_weight = 0.0;
  std::vector<double> theta_sub, sample_sum, noisy, ranks;
  std::vector<int> scratch;
  for (const Vote& v : batch) {
    const std::size_t len = v.order.size();
    theta_sub.resize(len);
    for (std::size_t k = 0; k < len; ++k) {
      theta_sub[k] = ratings.theta[v.order[k]];
    }
    sample_sum.assign(len, 0.0);
    for (int s = 0; s < config.mc_samples; ++s) {
      accumulate_rank_sample(theta_sub, config.epsilon, rng, noisy, ranks,
                             scratch, sample_sum);
    }
    const double w = static_cast<double>(v.multiplicity);
    const double inv = 1.0 / static_cast<double>(config.mc_samples);
    for (std::size_t k = 0; k < len; ++k) {
      const double target = static_cast<double>(len - 1 - k);
      grad[v.order[k]] += w * (sample_sum[k] * inv - target);
    }
    total_weight += w;
  }
  if (total_weight > 0) {
    for (double& g : grad) g /= total_weight;
  }
  return grad;
}

double fy_loss(std::span<const Vote> batch, const Ratings& ratings,
               const FyConfig& config, Rng& rng) {
  check_ids(batch, ratings.theta.size());
  double loss = 0.0;
  double total_weight = 0.0;
  std::vector<double> theta_sub, noisy, ranks;
  std::vector<int> scratch;
  for (const Vote& v : batch) {
    const std::size_t len = v.order.size();
    theta_sub.resize(len);
    for (std::size_t k = 0; k < len; ++k) {
      theta_sub[k] = ratings.theta[v.order[k]];
    }
    // F_eps(theta_S) = E[ y*(theta_S + eps Z)^T (theta_S + eps Z) ].
    double f_eps = 0.0;
    for (int s = 0; s < config.mc_samples; ++s) {
      noisy.resize(len);
      for (std::size_t k = 0; k < len; ++k) {
        noisy[k] = theta_sub[k] + config.epsilon * rng.gumbel();
      }
      hard_ranks_into(noisy, ranks, scratch);
      for (std::size_t k = 0; k < len; ++k) f_eps += ranks[k] * noisy[k];
    }
    f_eps /= static_cast<double>(config.mc_samples);
    double y_dot_theta = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
      y_dot_theta += static_cast<double>(len - 1 - k) * theta_sub[k];
    }
    loss += static_cast<double>(v.multiplicity) * (f_eps - y_dot_theta);
    total_weight += static_cast<double>(v.multiplicity);
  }
  return total_weight > 0 ? loss / total_weight : 0.0;
}

std::pair<Ratings, TrainingTrace> fit_fy(const PreferenceProfile& profile,
                                         const FyConfig& config) {
  if (profile.votes().empty()) {
    throw std::invalid_argument("fit_fy: empty profile");
  }
  const int m = profile.num_alternatives();
  Ratings ratings;
  ratings.theta_min = config.theta_min;
  ratings.theta_max = config.theta_max;
  ratings.theta.assign(m, 0.5 * (config.theta_min + config.theta_max));

  std::vector<int> ballots;
  if (config.batch_size > 0) {
    for (std::size_t i = 0; i < profile.votes().size(); ++i) {
      for (std::int64_t k = 0; k < profile.votes()[i].multiplicity; ++k) {
        ballots.push_back((int)i);
      }
    }
  }

  const std::int64_t cadence =
      config.checkpoint_every > 0
          ? config.checkpoint_every
          : std::max<std::int64_t>(1, config.iterations / 1000);

  Rng rng(config.seed);
  TrainingTrace trace;
  std::vector<int> scratch;
  std::optional<std::int64_t> stable_since;
  std::vector<Vote> batch;

  for (std::int64_t t = 0; t < config.iterations; ++t) {
    std::vector<double> grad;
    if (config.batch_size == 0) {
      grad = fy_gradient(profile.votes(), ratings, config, rng);
    } else {
      batch.clear();
      for (int k = 0; k < config.batch_size; ++k) {
        const int vi = ballots[rng.uniform_int(ballots.size())];
        batch.push_back({profile.votes()[vi].order, 1});
      }
      grad = fy_gradient(batch, ratings, config, rng);
    }
    for (int i = 0; i < m; ++i) {
      ratings.theta[i] =
          std::clamp(ratings.theta[i] - config.learning_rate * grad[i],
                     config.theta_min, config.theta_max);
    }
    if (config.convergence_target.has_value()) {
      const Ranking r = induced_ranking(ratings);
      if (r == *config.convergence_target) {
        if (!stable_since.has_value()) stable_since = t;
      } else {
        stable_since.reset();
      }
    }
    if ((t + 1) % cadence == 0 || t + 1 == config.iterations) {
      Checkpoint cp;
      cp.iteration = t;
      if (config.record_checkpoint_loss) {
        // Loss checkpoints use an evaluation stream seeded from the
        // iteration so the trace stays deterministic and the training
        // stream untouched.
        Rng eval_rng(config.seed ^
                     (0x9e3779b97f4a7c15ULL + (std::uint64_t)t));
        FyConfig eval_cfg = config;
        eval_cfg.mc_samples = std::max(config.mc_samples, 16);
        cp.loss = fy_loss(profile.votes(), ratings, eval_cfg, eval_rng);
      }
      cp.ranking = induced_ranking(ratings);
      trace.checkpoints.push_back(std::move(cp));
    }
  }
  trace.converged_at = stable_since;
  return {std::move(ratings), std::move(trace)};
}

}  // namespace sco
