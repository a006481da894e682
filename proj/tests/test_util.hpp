#pragma once

#include <algorithm>
#include <vector>

#include "sco/metrics.hpp"
#include "sco/profile.hpp"
#include "sco/random.hpp"

namespace sco::testutil {

// Independent Kemeny oracle: plain enumeration of all m! rankings via
// next_permutation, scoring each with profile_distance. No pruning, no
// shared code path with kemeny_optimal's search.
inline std::pair<Ranking, std::int64_t> kemeny_brute_force(
    const PreferenceProfile& profile) {
  Ranking perm = identity_ranking(profile.num_alternatives());
  Ranking best = perm;
  std::int64_t best_dist = profile_distance(profile, perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    const std::int64_t d = profile_distance(profile, perm);
    if (d < best_dist) {
      best_dist = d;
      best = perm;
    }
  }
  return {best, best_dist};
}

inline std::vector<Ranking> kemeny_brute_force_all(
    const PreferenceProfile& profile) {
  Ranking perm = identity_ranking(profile.num_alternatives());
  std::int64_t best = profile_distance(profile, perm);
  std::vector<Ranking> out{perm};
  while (std::next_permutation(perm.begin(), perm.end())) {
    const std::int64_t d = profile_distance(profile, perm);
    if (d < best) {
      best = d;
      out.clear();
    }
    if (d == best) out.push_back(perm);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Random profile of complete or partial strict votes.
inline PreferenceProfile random_profile(Rng& rng, int m, int votes,
                                        bool partial = false,
                                        int max_multiplicity = 3) {
  std::vector<Vote> out;
  for (int v = 0; v < votes; ++v) {
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    rng.shuffle(order);
    if (partial && m > 2) {
      const int len = 2 + rng.index(m - 1);
      order.resize(len);
    }
    out.push_back(
        {order, 1 + (std::int64_t)rng.uniform_int(max_multiplicity)});
  }
  return build_profile(std::move(out), m);
}

// Random profile guaranteed to have a strong Condorcet winner (resamples).
inline PreferenceProfile random_profile_with_winner(Rng& rng, int m,
                                                    int votes) {
  while (true) {
    PreferenceProfile p = random_profile(rng, m, votes);
    const auto winner =
        condorcet_winner(margin_matrix(preference_matrix(p))).strong;
    if (winner.has_value()) return p;
  }
}

}  // namespace sco::testutil
