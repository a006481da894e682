#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace sco {

// A ranking is a permutation of the alternative indices 0..m-1, best first.
using Ranking = std::vector<int>;

// A strict partial ranking over registered alternatives, best first, with a
// positive integer weight.
struct Vote {
  std::vector<int> order;
  std::int64_t multiplicity = 1;

  bool operator==(const Vote&) const = default;
};

// A weighted multiset of votes over a dense alternative set 0..m-1. Optional
// external names (e.g. from PrefLib files) are kept alongside. Immutable
// after construction.
class PreferenceProfile {
 public:
  PreferenceProfile() = default;
  PreferenceProfile(std::vector<Vote> votes, int num_alternatives,
                    std::vector<std::string> names = {});

  int num_alternatives() const { return num_alternatives_; }
  std::int64_t total_weight() const { return total_weight_; }  // n
  const std::vector<Vote>& votes() const { return votes_; }
  bool has_names() const { return !names_.empty(); }
  const std::vector<std::string>& names() const { return names_; }

  bool operator==(const PreferenceProfile& other) const = default;

 private:
  std::vector<Vote> votes_;
  int num_alternatives_ = 0;
  std::int64_t total_weight_ = 0;
  std::vector<std::string> names_;
};

// Validates votes and registers alternatives. Every id appearing in a vote
// must be covered; `num_alternatives` may widen the registry beyond that
// (agents that never competed), or be left at 0 to infer max id + 1.
// Throws std::invalid_argument on duplicate ids within a vote, empty votes,
// or nonpositive multiplicities.
PreferenceProfile build_profile(std::vector<Vote> votes,
                                int num_alternatives = 0,
                                std::vector<std::string> names = {});

// Pairwise win counts N(a,b) = total weight of votes ranking a above b.
// Dense storage up to kDenseLimit alternatives, hash map above; both forms
// answer the same queries.
class PairwiseCounts {
 public:
  static constexpr int kDenseLimit = 512;

  static PairwiseCounts dense(int m);
  static PairwiseCounts sparse(int m);

  int size() const { return m_; }
  bool is_sparse() const { return dense_.empty(); }
  std::int64_t count(int a, int b) const;
  void add(int a, int b, std::int64_t weight);
  void for_each_nonzero(
      const std::function<void(int, int, std::int64_t)>& fn) const;

 private:
  int m_ = 0;
  std::vector<std::int64_t> dense_;                      // m*m when dense
  std::unordered_map<std::uint64_t, std::int64_t> map_;  // keyed a*m+b
};

// Signed margins delta(a,b) = N(a,b) - N(b,a); antisymmetric, zero diagonal.
// Keeps per-row counts of positive/negative entries so Condorcet detection
// is O(nonzeros) for sparse matrices.
class MarginMatrix {
 public:
  int size() const { return m_; }
  std::int64_t margin(int a, int b) const;
  int positive_count(int a) const { return row_positive_[a]; }
  int negative_count(int a) const { return row_negative_[a]; }
  void for_each_nonzero(
      const std::function<void(int, int, std::int64_t)>& fn) const;

  friend MarginMatrix margin_matrix(const PairwiseCounts& counts);

 private:
  int m_ = 0;
  std::vector<std::int64_t> dense_;
  std::unordered_map<std::uint64_t, std::int64_t> map_;
  std::vector<int> row_positive_;
  std::vector<int> row_negative_;
};

PairwiseCounts preference_matrix(const PreferenceProfile& profile);
PairwiseCounts preference_matrix(const PreferenceProfile& profile,
                                 bool sparse);
MarginMatrix margin_matrix(const PairwiseCounts& counts);

struct CondorcetResult {
  std::optional<int> strong;  // beats every other alternative head-to-head
  std::vector<int> weak;      // wins or ties every pairing, ascending index
};

CondorcetResult condorcet_winner(const MarginMatrix& margins);

// Identity permutation 0..m-1, the tie-break baseline everywhere.
Ranking identity_ranking(int m);

// True iff `ranking` is a permutation of 0..m-1.
bool is_permutation_of(const Ranking& ranking, int m);

}  // namespace sco
