#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sco/profile.hpp"

namespace sco {

// Pair-disagreement count between a (possibly partial) ranking v and a
// ranking r over a superset of v's elements. Counts unordered pairs of v
// ordered differently in r. Throws if an element of v is missing from r.
std::int64_t kendall_tau(std::span<const int> v, std::span<const int> r);

// 2*K_d / (|v| (|v|-1)), in [0,1]; 0 when |v| < 2.
double normalized_kendall_tau(std::span<const int> v, std::span<const int> r);

// Multiplicity-weighted sum of Kendall-tau distances from every vote to the
// ranking. The ranking must cover all alternatives of the profile.
std::int64_t profile_distance(const PreferenceProfile& profile,
                              const Ranking& ranking);

// Sum over ranking positions i < j of N(ranking[i], ranking[j]). Maximized
// by the same rankings that minimize profile_distance.
std::int64_t kemeny_score(const PreferenceProfile& profile,
                          const Ranking& ranking);

struct KemenyResult {
  Ranking ranking;        // lexicographically smallest co-optimal ranking
  std::int64_t distance;  // minimal profile_distance
};

// Exact Kemeny-Young optimum by branch-and-bound over permutation prefixes.
// Guarded by max_m (default 10); throws when the profile is larger.
KemenyResult kemeny_optimal(const PreferenceProfile& profile, int max_m = 10);

// All co-optimal rankings, ascending lexicographic order.
std::vector<Ranking> kemeny_optimal_all(const PreferenceProfile& profile,
                                        int max_m = 10);

// nullopt when the profile has no strong Condorcet winner; otherwise whether
// ranking[0] is the winner.
std::optional<bool> condorcet_match(const Ranking& ranking,
                                    const PreferenceProfile& profile);

}  // namespace sco
