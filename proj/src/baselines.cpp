#include "sco/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sco {

namespace {

Ranking rank_by_scores(const std::vector<double>& scores) {
  Ranking order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  return order;
}

}  // namespace

double elo_predict(double rating_i, double rating_j, double scale) {
  return 1.0 / (1.0 + std::pow(10.0, (rating_j - rating_i) / scale));
}

std::pair<double, double> elo_update_online(double rating_i, double rating_j,
                                            int outcome, double k_factor) {
  if (outcome != 0 && outcome != 1) {
    throw std::invalid_argument("elo_update_online: outcome must be 0 or 1");
  }
  const double p = elo_predict(rating_i, rating_j);
  const double delta = k_factor * (static_cast<double>(outcome) - p);
  return {rating_i + delta, rating_j - delta};
}

std::vector<double> elo_play_profile(const PreferenceProfile& profile,
                                     const EloConfig& config) {
  std::vector<double> ratings(profile.num_alternatives(),
                              config.initial_rating);
  for (const Vote& v : profile.votes()) {
    for (std::int64_t rep = 0; rep < v.multiplicity; ++rep) {
      for (std::size_t i = 0; i < v.order.size(); ++i) {
        for (std::size_t j = i + 1; j < v.order.size(); ++j) {
          const int winner = v.order[i];
          const int loser = v.order[j];
          const auto [wi, lo] = elo_update_online(
              ratings[winner], ratings[loser], 1, config.k_factor);
          ratings[winner] = wi;
          ratings[loser] = lo;
        }
      }
    }
  }
  return ratings;
}

double bt_log_likelihood(const PairwiseCounts& counts,
                         const std::vector<double>& gamma,
                         double prior_pseudocount) {
  double ll = 0.0;
  counts.for_each_nonzero([&](int a, int b, std::int64_t w) {
    ll += static_cast<double>(w) *
          (std::log(gamma[a]) - std::log(gamma[a] + gamma[b]));
  });
  if (prior_pseudocount > 0) {
    for (double g : gamma) {
      // prior_pseudocount wins and losses against a fixed opponent with
      // strength 1.
      ll += prior_pseudocount * (std::log(g) - 2.0 * std::log(g + 1.0));
    }
  }
  return ll;
}

std::vector<double> elo_mm_step(const PairwiseCounts& counts,
                                const std::vector<double>& gamma,
                                double prior_pseudocount) {
  const int m = counts.size();
  std::vector<double> wins(m, prior_pseudocount);
  std::vector<double> denom(m, 0.0);
  if (prior_pseudocount > 0) {
    for (int i = 0; i < m; ++i) {
      denom[i] = 2.0 * prior_pseudocount / (gamma[i] + 1.0);
    }
  }
  counts.for_each_nonzero([&](int a, int b, std::int64_t w) {
    wins[a] += static_cast<double>(w);
    const double pair_games =
        static_cast<double>(w) / (gamma[a] + gamma[b]);
    denom[a] += pair_games;
    denom[b] += pair_games;
  });
  std::vector<double> next(m, 1.0);
  for (int i = 0; i < m; ++i) {
    if (denom[i] > 0) next[i] = wins[i] / denom[i];
  }
  if (prior_pseudocount <= 0) {
    // Nothing pins the scale without the prior; renormalize to geometric
    // mean 1.
    double log_sum = 0.0;
    for (double g : next) log_sum += std::log(g);
    const double shift = std::exp(log_sum / m);
    for (double& g : next) g /= shift;
  }
  return next;
}

std::vector<double> elo_fit_mm(const PreferenceProfile& profile,
                               int iterations, double prior_pseudocount,
                               const EloConfig& config) {
  if (iterations < 1) {
    throw std::invalid_argument("elo_fit_mm: iterations must be >= 1");
  }
  const int m = profile.num_alternatives();
  const PairwiseCounts counts = preference_matrix(profile);
  std::vector<double> gamma(m, 1.0);
  for (int it = 0; it < iterations; ++it) {
    std::vector<double> next = elo_mm_step(counts, gamma, prior_pseudocount);
    double max_rel = 0.0;
    for (int i = 0; i < m; ++i) {
      max_rel = std::max(max_rel,
                         std::abs(next[i] - gamma[i]) / std::abs(gamma[i]));
    }
    gamma = std::move(next);
    if (max_rel < 1e-10) break;
  }
  std::vector<double> ratings(m, config.initial_rating);
  if (m == 0) return ratings;
  double mean = 0.0;
  for (int i = 0; i < m; ++i) {
    ratings[i] = config.scale * std::log10(gamma[i]);
    mean += ratings[i];
  }
  mean /= m;
  for (double& r : ratings) r += config.initial_rating - mean;
  return ratings;
}

Ranking copeland(const PreferenceProfile& profile) {
  const int m = profile.num_alternatives();
  const MarginMatrix margins = margin_matrix(preference_matrix(profile));
  std::vector<double> scores(m, 0.0);
  for (int a = 0; a < m; ++a) {
    const int wins = margins.positive_count(a);
    const int losses = margins.negative_count(a);
    const int ties = m - 1 - wins - losses;
    scores[a] = wins + 0.5 * ties;
  }
  return rank_by_scores(scores);
}

Ranking borda(const PreferenceProfile& profile) {
  std::vector<double> scores(profile.num_alternatives(), 0.0);
  for (const Vote& v : profile.votes()) {
    const std::size_t len = v.order.size();
    for (std::size_t k = 0; k < len; ++k) {
      scores[v.order[k]] +=
          static_cast<double>(v.multiplicity) * double(len - 1 - k);
    }
  }
  return rank_by_scores(scores);
}

Ranking plurality(const PreferenceProfile& profile) {
  std::vector<double> scores(profile.num_alternatives(), 0.0);
  for (const Vote& v : profile.votes()) {
    scores[v.order.front()] += static_cast<double>(v.multiplicity);
  }
  return rank_by_scores(scores);
}

Ranking approval(const PreferenceProfile& profile,
                 double threshold_fraction) {
  if (threshold_fraction <= 0.0 || threshold_fraction > 1.0) {
    throw std::invalid_argument("approval: threshold must be in (0, 1]");
  }
  std::vector<double> scores(profile.num_alternatives(), 0.0);
  for (const Vote& v : profile.votes()) {
    const auto approved = static_cast<std::size_t>(
        std::ceil(threshold_fraction * static_cast<double>(v.order.size())));
    for (std::size_t k = 0; k < approved && k < v.order.size(); ++k) {
      scores[v.order[k]] += static_cast<double>(v.multiplicity);
    }
  }
  return rank_by_scores(scores);
}

Ranking ranked_pairs(const PreferenceProfile& profile) {
  const int m = profile.num_alternatives();
  const PairwiseCounts counts = preference_matrix(profile);
  const MarginMatrix margins = margin_matrix(counts);

  struct Pair {
    std::int64_t margin;
    std::int64_t support;  // N(a,b)
    int a, b;
  };
  std::vector<Pair> pairs;
  margins.for_each_nonzero([&](int a, int b, std::int64_t d) {
    if (d > 0) pairs.push_back({d, counts.count(a, b), a, b});
  });
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    if (x.margin != y.margin) return x.margin > y.margin;
    if (x.support != y.support) return x.support > y.support;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });

  // Lock pairs that do not close a cycle in the digraph locked so far.
  std::vector<std::vector<int>> out(m);
  auto reaches = [&](int from, int to) {
    std::vector<char> seen(m, 0);
    std::vector<int> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      if (x == to) return true;
      for (int y : out[x]) {
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
    return false;
  };
  std::vector<int> indegree(m, 0);
  for (const Pair& p : pairs) {
    if (!reaches(p.b, p.a)) {
      out[p.a].push_back(p.b);
      ++indegree[p.b];
    }
  }

  // Kahn's algorithm, always emitting the smallest-index available source.
  Ranking order;
  std::vector<char> emitted(m, 0);
  for (int step = 0; step < m; ++step) {
    int pick = -1;
    for (int a = 0; a < m; ++a) {
      if (!emitted[a] && indegree[a] == 0) {
        pick = a;
        break;
      }
    }
    emitted[pick] = 1;
    order.push_back(pick);
    for (int b : out[pick]) --indegree[b];
  }
  return order;
}

}  // namespace sco
