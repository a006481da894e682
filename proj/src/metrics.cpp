#include "sco/metrics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace sco {

namespace {

// Position lookup for r. Dense vector when the universe is small, hash map
// otherwise (r may rank tens of thousands of alternatives).
class PositionIndex {
 public:
  explicit PositionIndex(std::span<const int> r) {
    int max_id = -1;
    for (int x : r) max_id = std::max(max_id, x);
    if (max_id < (1 << 22)) {
      dense_.assign(max_id + 1, -1);
      for (std::size_t i = 0; i < r.size(); ++i) dense_[r[i]] = (int)i;
    } else {
      map_.reserve(r.size() * 2);
      for (std::size_t i = 0; i < r.size(); ++i) map_[r[i]] = (int)i;
    }
  }

  int position(int x) const {
    if (!dense_.empty()) {
      if (x < 0 || x >= static_cast<int>(dense_.size())) return -1;
      return dense_[x];
    }
    auto it = map_.find(x);
    return it == map_.end() ? -1 : it->second;
  }

 private:
  std::vector<int> dense_;
  std::unordered_map<int, int> map_;
};

std::int64_t kendall_tau_with_index(std::span<const int> v,
                                    const PositionIndex& index) {
  std::int64_t disagreements = 0;
  std::vector<int> pos(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    pos[i] = index.position(v[i]);
    if (pos[i] < 0) {
      throw std::invalid_argument("element " + std::to_string(v[i]) +
                                  " of v missing from r");
    }
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (pos[i] > pos[j]) ++disagreements;
    }
  }
  return disagreements;
}

}  // namespace

std::int64_t kendall_tau(std::span<const int> v, std::span<const int> r) {
  return kendall_tau_with_index(v, PositionIndex(r));
}

double normalized_kendall_tau(std::span<const int> v,
                              std::span<const int> r) {
  if (v.size() < 2) {
    kendall_tau(v, r);  // still validate membership
    return 0.0;
  }
  const double pairs = 0.5 * static_cast<double>(v.size()) *
                       static_cast<double>(v.size() - 1);
  return static_cast<double>(kendall_tau(v, r)) / pairs;
}

std::int64_t profile_distance(const PreferenceProfile& profile,
                              const Ranking& ranking) {
  const PositionIndex index{std::span<const int>(ranking)};
  std::int64_t total = 0;
  for (const Vote& v : profile.votes()) {
    total += v.multiplicity * kendall_tau_with_index(v.order, index);
  }
  return total;
}

std::int64_t kemeny_score(const PreferenceProfile& profile,
                          const Ranking& ranking) {
  const PairwiseCounts counts = preference_matrix(profile);
  std::int64_t score = 0;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    for (std::size_t j = i + 1; j < ranking.size(); ++j) {
      score += counts.count(ranking[i], ranking[j]);
    }
  }
  return score;
}

namespace {

// Depth-first search over permutation prefixes in lexicographic order.
// Appending x behind an unplaced set U costs sum_{y in U} N(y, x); the
// remaining positions cost at least sum over unplaced pairs of
// min(N(y,z), N(z,y)).
struct KemenySearch {
  int m;
  std::vector<std::int64_t> n;  // dense m*m counts
  std::int64_t best = 0;
  bool collect_all = false;
  Ranking current;
  std::vector<char> placed;
  Ranking best_ranking;
  std::vector<Ranking> all_best;

  std::int64_t count(int a, int b) const {
    return n[static_cast<std::size_t>(a) * m + b];
  }

  std::int64_t remaining_bound() const {
    std::int64_t bound = 0;
    for (int a = 0; a < m; ++a) {
      if (placed[a]) continue;
      for (int b = a + 1; b < m; ++b) {
        if (placed[b]) continue;
        bound += std::min(count(a, b), count(b, a));
      }
    }
    return bound;
  }

  void search(std::int64_t partial) {
    if (static_cast<int>(current.size()) == m) {
      if (collect_all) {
        if (partial < best) {
          best = partial;
          all_best.clear();
        }
        if (partial == best) all_best.push_back(current);
      } else if (partial < best) {
        best = partial;
        best_ranking = current;
      }
      return;
    }
    for (int x = 0; x < m; ++x) {
      if (placed[x]) continue;
      std::int64_t step = 0;
      for (int y = 0; y < m; ++y) {
        if (!placed[y] && y != x) step += count(y, x);
      }
      const std::int64_t next = partial + step;
      placed[x] = 1;
      current.push_back(x);
      const std::int64_t lb = next + remaining_bound();
      const bool keep = collect_all ? lb <= best : lb < best;
      if (keep) search(next);
      current.pop_back();
      placed[x] = 0;
    }
  }
};

KemenySearch make_search(const PreferenceProfile& profile, int max_m,
                         bool collect_all) {
  const int m = profile.num_alternatives();
  if (m > max_m) {
    throw std::invalid_argument("kemeny_optimal: " + std::to_string(m) +
                                " alternatives exceeds max_m " +
                                std::to_string(max_m));
  }
  KemenySearch s;
  s.m = m;
  s.collect_all = collect_all;
  s.n.assign(static_cast<std::size_t>(m) * m, 0);
  const PairwiseCounts counts = preference_matrix(profile, /*sparse=*/false);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      s.n[static_cast<std::size_t>(a) * m + b] = counts.count(a, b);
    }
  }
  s.placed.assign(m, 0);
  // Seed the incumbent with the identity ranking so pruning has a finite
  // bound from the start.
  const Ranking id = identity_ranking(m);
  s.best = profile_distance(profile, id);
  s.best_ranking = id;
  return s;
}

}  // namespace

KemenyResult kemeny_optimal(const PreferenceProfile& profile, int max_m) {
  if (profile.num_alternatives() == 0) return {Ranking{}, 0};
  KemenySearch s = make_search(profile, max_m, /*collect_all=*/false);
  // Identity may already be optimal; DFS only replaces on strict
  // improvement, which keeps the lexicographically smallest optimum because
  // prefixes are explored in lexicographic order.
  s.search(0);
  return {s.best_ranking, s.best};
}

std::vector<Ranking> kemeny_optimal_all(const PreferenceProfile& profile,
                                        int max_m) {
  if (profile.num_alternatives() == 0) return {Ranking{}};
  KemenySearch s = make_search(profile, max_m, /*collect_all=*/true);
  s.search(0);
  std::sort(s.all_best.begin(), s.all_best.end());
  return s.all_best;
}

std::optional<bool> condorcet_match(const Ranking& ranking,
                                    const PreferenceProfile& profile) {
  const CondorcetResult c =
      condorcet_winner(margin_matrix(preference_matrix(profile)));
  if (!c.strong.has_value()) return std::nullopt;
  if (ranking.empty()) return false;
  return ranking.front() == *c.strong;
}

}  // namespace sco
