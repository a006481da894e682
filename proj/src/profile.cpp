#include "sco/profile.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sco {

namespace {

std::uint64_t pair_key(int a, int b, int m) {
  return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(m) +
         static_cast<std::uint64_t>(b);
}

}  // namespace

PreferenceProfile::PreferenceProfile(std::vector<Vote> votes,
                                     int num_alternatives,
                                     std::vector<std::string> names)
    : votes_(std::move(votes)),
      num_alternatives_(num_alternatives),
      names_(std::move(names)) {
  for (const Vote& v : votes_) total_weight_ += v.multiplicity;
}

PreferenceProfile build_profile(std::vector<Vote> votes, int num_alternatives,
                                std::vector<std::string> names) {
  int max_id = -1;
  std::vector<char> seen;
  for (std::size_t k = 0; k < votes.size(); ++k) {
    const Vote& v = votes[k];
    if (v.order.empty()) {
      throw std::invalid_argument("vote " + std::to_string(k) + " is empty");
    }
    if (v.multiplicity <= 0) {
      throw std::invalid_argument("vote " + std::to_string(k) +
                                  " has nonpositive multiplicity");
    }
    for (int id : v.order) {
      if (id < 0) {
        throw std::invalid_argument("vote " + std::to_string(k) +
                                    " contains negative id");
      }
      max_id = std::max(max_id, id);
    }
    if (static_cast<int>(seen.size()) <= max_id) seen.resize(max_id + 1, 0);
    for (int id : v.order) {
      if (seen[id]) {
        throw std::invalid_argument("vote " + std::to_string(k) +
                                    " contains duplicate id " +
                                    std::to_string(id));
      }
      seen[id] = 1;
    }
    for (int id : v.order) seen[id] = 0;
  }
  const int inferred = max_id + 1;
  if (num_alternatives == 0) num_alternatives = inferred;
  if (num_alternatives < inferred) {
    throw std::invalid_argument("num_alternatives smaller than largest id");
  }
  if (!names.empty()) {
    if (static_cast<int>(names.size()) != num_alternatives) {
      throw std::invalid_argument("name table size mismatch");
    }
    std::unordered_map<std::string, int> seen_names;
    for (const std::string& n : names) {
      if (!n.empty() && ++seen_names[n] > 1) {
        throw std::invalid_argument("duplicate alternative name: " + n);
      }
    }
  }
  return PreferenceProfile(std::move(votes), num_alternatives,
                           std::move(names));
}

PairwiseCounts PairwiseCounts::dense(int m) {
  PairwiseCounts c;
  c.m_ = m;
  c.dense_.assign(static_cast<std::size_t>(m) * m, 0);
  return c;
}

PairwiseCounts PairwiseCounts::sparse(int m) {
  PairwiseCounts c;
  c.m_ = m;
  return c;
}

std::int64_t PairwiseCounts::count(int a, int b) const {
  if (!dense_.empty()) {
    return dense_[static_cast<std::size_t>(a) * m_ + b];
  }
  auto it = map_.find(pair_key(a, b, m_));
  return it == map_.end() ? 0 : it->second;
}

void PairwiseCounts::add(int a, int b, std::int64_t weight) {
  if (!dense_.empty()) {
    dense_[static_cast<std::size_t>(a) * m_ + b] += weight;
  } else {
    map_[pair_key(a, b, m_)] += weight;
  }
}

void PairwiseCounts::for_each_nonzero(
    const std::function<void(int, int, std::int64_t)>& fn) const {
  if (!dense_.empty()) {
    for (int a = 0; a < m_; ++a) {
      for (int b = 0; b < m_; ++b) {
        const std::int64_t c = dense_[static_cast<std::size_t>(a) * m_ + b];
        if (c != 0) fn(a, b, c);
      }
    }
  } else {
    for (const auto& [key, c] : map_) {
      if (c != 0) {
        fn(static_cast<int>(key / m_), static_cast<int>(key % m_), c);
      }
    }
  }
}

PairwiseCounts preference_matrix(const PreferenceProfile& profile,
                                 bool sparse) {
  const int m = profile.num_alternatives();
  PairwiseCounts counts =
      sparse ? PairwiseCounts::sparse(m) : PairwiseCounts::dense(m);
  for (const Vote& v : profile.votes()) {
    const auto& order = v.order;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t j = i + 1; j < order.size(); ++j) {
        counts.add(order[i], order[j], v.multiplicity);
      }
    }
  }
  return counts;
}

PairwiseCounts preference_matrix(const PreferenceProfile& profile) {
  return preference_matrix(
      profile, profile.num_alternatives() > PairwiseCounts::kDenseLimit);
}

MarginMatrix margin_matrix(const PairwiseCounts& counts) {
  MarginMatrix m;
  m.m_ = counts.size();
  m.row_positive_.assign(m.m_, 0);
  m.row_negative_.assign(m.m_, 0);
  const bool sparse = counts.is_sparse();
  if (!sparse) {
    m.dense_.assign(static_cast<std::size_t>(m.m_) * m.m_, 0);
  }
  auto put = [&](int a, int b, std::int64_t d) {
    if (d == 0) return;
    if (sparse) {
      m.map_[pair_key(a, b, m.m_)] = d;
    } else {
      m.dense_[static_cast<std::size_t>(a) * m.m_ + b] = d;
    }
    if (d > 0) {
      ++m.row_positive_[a];
      ++m.row_negative_[b];
    }
  };
  counts.for_each_nonzero([&](int a, int b, std::int64_t c) {
    if (a < b) {
      const std::int64_t d = c - counts.count(b, a);
      put(a, b, d);
      put(b, a, -d);
    } else if (counts.count(b, a) == 0) {
      // (b, a) is zero so this pair was not visited from the a < b side.
      put(b, a, -c);
      put(a, b, c);
    }
  });
  return m;
}

std::int64_t MarginMatrix::margin(int a, int b) const {
  if (!dense_.empty()) {
    return dense_[static_cast<std::size_t>(a) * m_ + b];
  }
  auto it = map_.find(pair_key(a, b, m_));
  return it == map_.end() ? 0 : it->second;
}

void MarginMatrix::for_each_nonzero(
    const std::function<void(int, int, std::int64_t)>& fn) const {
  if (!dense_.empty()) {
    for (int a = 0; a < m_; ++a) {
      for (int b = 0; b < m_; ++b) {
        const std::int64_t d = dense_[static_cast<std::size_t>(a) * m_ + b];
        if (d != 0) fn(a, b, d);
      }
    }
  } else {
    for (const auto& [key, d] : map_) {
      fn(static_cast<int>(key / m_), static_cast<int>(key % m_), d);
    }
  }
}

CondorcetResult condorcet_winner(const MarginMatrix& margins) {
  CondorcetResult result;
  const int m = margins.size();
  for (int a = 0; a < m; ++a) {
    if (margins.negative_count(a) == 0) {
      result.weak.push_back(a);
      if (margins.positive_count(a) == m - 1) {
        result.strong = a;
      }
    }
  }
  return result;
}

Ranking identity_ranking(int m) {
  Ranking r(m);
  for (int i = 0; i < m; ++i) r[i] = i;
  return r;
}

bool is_permutation_of(const Ranking& ranking, int m) {
  if (static_cast<int>(ranking.size()) != m) return false;
  std::vector<char> seen(m, 0);
  for (int x : ranking) {
    if (x < 0 || x >= m || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

}  // namespace sco
