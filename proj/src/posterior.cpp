#include "sco/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "sco/random.hpp"

namespace sco {

const Ranking& RankingDistribution::mode() const {
  if (support.empty()) {
    throw std::logic_error("RankingDistribution: empty support");
  }
  // Highest count; support is sorted by ranking so ties pick the
  // lexicographically smallest.
  std::size_t best = 0;
  for (std::size_t i = 1; i < support.size(); ++i) {
    if (support[i].second > support[best].second) best = i;
  }
  return support[best].first;
}

double RankingDistribution::probability(const Ranking& ranking) const {
  for (const auto& [r, c] : support) {
    if (r == ranking) return static_cast<double>(c) / total;
  }
  return 0.0;
}

RankingDistribution sample_posterior(const PreferenceProfile& profile,
                                     const SgdConfig& sgd_config,
                                     const PosteriorConfig& posterior_config) {
  if (posterior_config.sampling_iterations <= 0 ||
      posterior_config.thinning <= 0) {
    throw std::invalid_argument("sample_posterior: bad sampling config");
  }
  SgdConfig burn = sgd_config;
  burn.iterations = posterior_config.burn_in_iterations;
  burn.seed = posterior_config.seed;
  auto [ratings, trace] = fit_sgd(profile, burn);
  const int m = profile.num_alternatives();

  Rng rng(posterior_config.seed ^ 0xc2b2ae3d27d4eb4fULL);
  std::vector<int> ballots;
  for (std::size_t i = 0; i < profile.votes().size(); ++i) {
    for (std::int64_t k = 0; k < profile.votes()[i].multiplicity; ++k) {
      ballots.push_back((int)i);
    }
  }
  const int batch = std::max(1, sgd_config.batch_size);
  const double n = static_cast<double>(profile.total_weight());

  double step = posterior_config.sampling_step_size;
  if (step <= 0.0) {
    // Scalar constant-step heuristic from SGD-as-sampling: epsilon* =
    // 2 (K/n) d / trace(per-ballot gradient covariance at the burn-in
    // point). The batch-mean gradient noise is that covariance over K.
    const int samples = std::max(2, posterior_config.gradient_samples_for_auto);
    std::vector<std::vector<double>> grads;
    std::vector<double> mean(m, 0.0);
    for (int s = 0; s < samples; ++s) {
      const Vote& v =
          profile.votes()[ballots[rng.uniform_int(ballots.size())]];
      const Vote single{v.order, 1};
      std::vector<double> g = sigmoid_loss_gradient(
          std::span<const Vote>(&single, 1), ratings, sgd_config.temperature);
      for (int i = 0; i < m; ++i) mean[i] += g[i];
      grads.push_back(std::move(g));
    }
    for (int i = 0; i < m; ++i) mean[i] /= samples;
    double trace_cov = 0.0;
    for (const auto& g : grads) {
      for (int i = 0; i < m; ++i) {
        trace_cov += (g[i] - mean[i]) * (g[i] - mean[i]);
      }
    }
    trace_cov /= samples;
    if (trace_cov <= 1e-300) {
      step = sgd_config.learning_rate;  // noiseless gradients; keep training step
    } else {
      step = 2.0 * (static_cast<double>(batch) / n) *
             static_cast<double>(m) / trace_cov;
    }
  }

  // Projection is suspended only when burn-in ended strictly inside the box.
  bool boundary = false;
  for (double t : ratings.theta) {
    if (t <= ratings.theta_min + 1e-9 || t >= ratings.theta_max - 1e-9) {
      boundary = true;
      break;
    }
  }

  std::map<Ranking, std::int64_t> counts;
  std::vector<double> grad(m);
  for (std::int64_t t = 0; t < posterior_config.sampling_iterations; ++t) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (int k = 0; k < batch; ++k) {
      const Vote& v =
          profile.votes()[ballots[rng.uniform_int(ballots.size())]];
      for (std::size_t i = 0; i < v.order.size(); ++i) {
        for (std::size_t j = i + 1; j < v.order.size(); ++j) {
          const int a = v.order[i];
          const int b = v.order[j];
          const double s = soft_discrepancy(ratings.theta[a],
                                            ratings.theta[b],
                                            sgd_config.temperature);
          const double c = s * (1.0 - s) / sgd_config.temperature;
          grad[a] -= c;
          grad[b] += c;
        }
      }
    }
    for (int i = 0; i < m; ++i) {
      double next = ratings.theta[i] - step * grad[i] / batch;
      if (boundary) {
        next = std::clamp(next, ratings.theta_min, ratings.theta_max);
      }
      ratings.theta[i] = next;
    }
    if ((t + 1) % posterior_config.thinning == 0) {
      ++counts[induced_ranking(ratings)];
    }
  }
  if (counts.empty()) {
    throw std::invalid_argument(
        "sample_posterior: thinning exceeds sampling_iterations");
  }

  RankingDistribution dist;
  dist.step_size = step;
  dist.boundary_contact = boundary;
  for (auto& [r, c] : counts) {
    dist.support.emplace_back(r, c);
    dist.total += c;
  }
  return dist;
}

double pairwise_uncertainty(const RankingDistribution& distribution, int a,
                            int b) {
  if (a == b) {
    throw std::invalid_argument("pairwise_uncertainty: a must differ from b");
  }
  std::int64_t ahead = 0;
  for (const auto& [r, c] : distribution.support) {
    for (int x : r) {
      if (x == a) {
        ahead += c;
        break;
      }
      if (x == b) break;
    }
  }
  return static_cast<double>(ahead) / distribution.total;
}

std::string distribution_to_csv(const RankingDistribution& distribution) {
  std::ostringstream out;
  out << "ranking,count,probability\n";
  out.precision(17);
  for (const auto& [r, c] : distribution.support) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i > 0) out << ">";
      out << r[i];
    }
    out << "," << c << ","
        << static_cast<double>(c) / distribution.total << "\n";
  }
  return out.str();
}

}  // namespace sco
