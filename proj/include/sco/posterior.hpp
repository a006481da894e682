#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sco/profile.hpp"
#include "sco/sgd.hpp"

namespace sco {

struct PosteriorConfig {
  std::int64_t burn_in_iterations = 10000;
  std::int64_t sampling_iterations = 10000;
  double sampling_step_size = 0.0;  // 0 selects the auto estimate
  std::int64_t thinning = 10;
  std::uint64_t seed = 0;
  int gradient_samples_for_auto = 100;
};

// Empirical distribution over induced rankings collected from constant-step
// SGD iterates after burn-in.
struct RankingDistribution {
  std::vector<std::pair<Ranking, std::int64_t>> support;  // sorted by ranking
  std::int64_t total = 0;
  double step_size = 0.0;      // step used during sampling
  bool boundary_contact = false;  // burn-in point touched the rating box

  const Ranking& mode() const;
  double probability(const Ranking& ranking) const;
};

// Burn-in via fit_sgd, then constant-step-size SGD whose iterates are
// recorded every `thinning` iterations. With step size 0 the constant step
// is estimated as 2 * (batch/n) * m / trace(gradient covariance at the
// burn-in point). Projection is suspended during sampling when the burn-in
// point is interior to the rating box.
RankingDistribution sample_posterior(const PreferenceProfile& profile,
                                     const SgdConfig& sgd_config,
                                     const PosteriorConfig& posterior_config);

// Empirical probability that a precedes b across sampled rankings.
double pairwise_uncertainty(const RankingDistribution& distribution, int a,
                            int b);

// CSV export: ranking string ("2>0>1"), count, probability.
std::string distribution_to_csv(const RankingDistribution& distribution);

}  // namespace sco
