#include "sco/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "sco/random.hpp"
#include "sco/sgd.hpp"

namespace sco {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::int64_t parse_int(std::string_view s, int line, const char* what) {
  s = trim(s);
  std::int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(line, std::string("expected ") + what + ", got '" +
                               std::string(s) + "'");
  }
  return value;
}

}  // namespace

PreferenceProfile parse_preflib(std::string_view text) {
  int declared_alternatives = -1;
  std::vector<std::string> names;
  std::vector<Vote> votes;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view meta = trim(line.substr(1));
      const std::size_t colon = meta.find(':');
      if (colon == std::string_view::npos) continue;
      const std::string_view key = trim(meta.substr(0, colon));
      const std::string_view value = trim(meta.substr(colon + 1));
      if (key == "NUMBER ALTERNATIVES") {
        declared_alternatives =
            static_cast<int>(parse_int(value, line_no, "alternative count"));
        if (declared_alternatives < 1) {
          throw ParseError(line_no, "NUMBER ALTERNATIVES must be positive");
        }
        if (static_cast<int>(names.size()) < declared_alternatives) {
          names.resize(declared_alternatives);
        }
      } else if (key.starts_with("ALTERNATIVE NAME ")) {
        const std::int64_t id = parse_int(
            key.substr(std::string_view("ALTERNATIVE NAME ").size()),
            line_no, "alternative id");
        if (id < 1) throw ParseError(line_no, "alternative ids are 1-based");
        if (static_cast<std::size_t>(id) > names.size()) names.resize(id);
        names[id - 1] = std::string(value);
      }
      // Unknown metadata keys are ignored.
      continue;
    }
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError(line_no, "expected 'multiplicity: id,id,...'");
    }
    const std::int64_t mult =
        parse_int(line.substr(0, colon), line_no, "multiplicity");
    if (mult < 1) throw ParseError(line_no, "multiplicity must be positive");
    Vote vote;
    vote.multiplicity = mult;
    std::string_view rest = line.substr(colon + 1);
    std::unordered_set<int> seen;
    while (true) {
      rest = trim(rest);
      if (rest.empty()) break;
      const std::size_t comma = rest.find(',');
      const std::string_view tok =
          comma == std::string_view::npos ? rest : rest.substr(0, comma);
      const std::int64_t id = parse_int(tok, line_no, "alternative id");
      if (id < 1) throw ParseError(line_no, "alternative ids are 1-based");
      if (declared_alternatives >= 0 && id > declared_alternatives) {
        throw ParseError(line_no, "alternative id " + std::to_string(id) +
                                      " out of declared range");
      }
      if (!seen.insert(static_cast<int>(id)).second) {
        throw ParseError(line_no, "duplicate alternative id " +
                                      std::to_string(id) + " within vote");
      }
      vote.order.push_back(static_cast<int>(id) - 1);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (vote.order.empty()) throw ParseError(line_no, "empty vote");
    votes.push_back(std::move(vote));
  }
  int m = declared_alternatives;
  if (m < 0) {
    m = 0;
    for (const Vote& v : votes) {
      for (int id : v.order) m = std::max(m, id + 1);
    }
  }
  bool any_name = false;
  for (const std::string& n : names) any_name |= !n.empty();
  if (any_name) {
    names.resize(m);
    for (int i = 0; i < m; ++i) {
      if (names[i].empty()) names[i] = std::to_string(i + 1);
    }
  } else {
    names.clear();
  }
  return build_profile(std::move(votes), m, std::move(names));
}

std::string serialize_preflib(const PreferenceProfile& profile) {
  std::ostringstream out;
  const int m = profile.num_alternatives();
  const char* type = [&] {
    for (const Vote& v : profile.votes()) {
      if (static_cast<int>(v.order.size()) != m) return "soi";
    }
    return "soc";
  }();
  out << "# FILE NAME: profile." << type << "\n";
  out << "# DATA TYPE: " << type << "\n";
  out << "# NUMBER ALTERNATIVES: " << m << "\n";
  out << "# NUMBER VOTERS: " << profile.total_weight() << "\n";
  if (profile.has_names()) {
    for (int i = 0; i < m; ++i) {
      out << "# ALTERNATIVE NAME " << (i + 1) << ": " << profile.names()[i]
          << "\n";
    }
  }
  for (const Vote& v : profile.votes()) {
    out << v.multiplicity << ": ";
    for (std::size_t k = 0; k < v.order.size(); ++k) {
      if (k > 0) out << ",";
      out << (v.order[k] + 1);
    }
    out << "\n";
  }
  return out.str();
}

std::pair<PreferenceProfile, GroundTruth> generate_tournament(
    const TournamentConfig& config) {
  if (config.contest_size > config.num_agents || config.contest_size < 1) {
    throw std::invalid_argument("generate_tournament: bad contest size");
  }
  Rng rng(config.seed);
  const int m = config.num_agents;
  GroundTruth truth;
  truth.true_ratings.resize(m);
  for (int i = 0; i < m; ++i) {
    truth.true_ratings[i] =
        rng.gaussian(config.skill_mean, config.skill_stddev);
  }
  truth.true_ranking =
      induced_ranking(std::span<const double>(truth.true_ratings));

  std::vector<Vote> votes;
  std::vector<int> participants;
  std::vector<char> in_contest(m, 0);
  std::vector<std::pair<double, int>> performances;
  for (int c = 0; c < config.num_contests; ++c) {
    participants.clear();
    std::fill(in_contest.begin(), in_contest.end(), 0);
    auto draw_fresh = [&] {
      int a;
      do {
        a = rng.index(m);
      } while (in_contest[a]);
      return a;
    };
    if (config.matching == Matching::kUniform) {
      while (static_cast<int>(participants.size()) < config.contest_size) {
        const int a = draw_fresh();
        in_contest[a] = 1;
        participants.push_back(a);
      }
    } else {
      const int first = rng.index(m);
      in_contest[first] = 1;
      participants.push_back(first);
      double sum = truth.true_ratings[first];
      while (static_cast<int>(participants.size()) < config.contest_size) {
        const double avg = sum / static_cast<double>(participants.size());
        int best = -1;
        double best_gap = 0.0;
        for (int k = 0; k < 3; ++k) {
          const int cand = draw_fresh();
          const double gap = std::abs(truth.true_ratings[cand] - avg);
          // Candidate ties in closeness break by index.
          if (best < 0 || gap < best_gap ||
              (gap == best_gap && cand < best)) {
            best = cand;
            best_gap = gap;
          }
        }
        in_contest[best] = 1;
        participants.push_back(best);
        sum += truth.true_ratings[best];
      }
    }
    performances.clear();
    for (int a : participants) {
      performances.emplace_back(
          truth.true_ratings[a] +
              rng.gaussian(0.0, config.performance_noise_stddev),
          a);
    }
    std::sort(performances.begin(), performances.end(),
              [](const auto& x, const auto& y) {
                if (x.first != y.first) return x.first > y.first;
                return x.second < y.second;
              });
    Vote vote;
    for (const auto& [perf, a] : performances) vote.order.push_back(a);
    votes.push_back(std::move(vote));
  }
  return {build_profile(std::move(votes), m), std::move(truth)};
}

double missing_pair_proportion(const PreferenceProfile& profile) {
  const int m = profile.num_alternatives();
  if (m < 2) {
    throw std::invalid_argument("missing_pair_proportion: need m >= 2");
  }
  const PairwiseCounts counts = preference_matrix(profile);
  std::unordered_set<std::uint64_t> covered;
  counts.for_each_nonzero([&](int a, int b, std::int64_t) {
    const int lo = std::min(a, b);
    const int hi = std::max(a, b);
    covered.insert(static_cast<std::uint64_t>(lo) * m + hi);
  });
  const double total = 0.5 * static_cast<double>(m) * (m - 1);
  return 1.0 - static_cast<double>(covered.size()) / total;
}

std::pair<PreferenceProfile, PreferenceProfile> train_test_split(
    const PreferenceProfile& profile, std::int64_t test_count,
    std::uint64_t seed, int max_retries) {
  const std::int64_t n = profile.total_weight();
  if (test_count <= 0 || test_count >= n) {
    throw std::invalid_argument("train_test_split: bad test_count");
  }
  // Ballot-level indices (multiplicity w contributes w ballots).
  std::vector<int> ballots;
  for (std::size_t i = 0; i < profile.votes().size(); ++i) {
    for (std::int64_t k = 0; k < profile.votes()[i].multiplicity; ++k) {
      ballots.push_back((int)i);
    }
  }
  const int m = profile.num_alternatives();
  Rng rng(seed);
  std::vector<char> in_train(m, 0);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    rng.shuffle(ballots);
    std::fill(in_train.begin(), in_train.end(), 0);
    for (std::size_t k = test_count; k < ballots.size(); ++k) {
      for (int id : profile.votes()[ballots[k]].order) in_train[id] = 1;
    }
    bool ok = true;
    for (std::int64_t k = 0; k < test_count && ok; ++k) {
      for (int id : profile.votes()[ballots[k]].order) {
        if (!in_train[id]) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    std::vector<Vote> test_votes, train_votes;
    for (std::size_t k = 0; k < ballots.size(); ++k) {
      Vote v{profile.votes()[ballots[k]].order, 1};
      if (static_cast<std::int64_t>(k) < test_count) {
        test_votes.push_back(std::move(v));
      } else {
        train_votes.push_back(std::move(v));
      }
    }
    return {build_profile(std::move(train_votes), m),
            build_profile(std::move(test_votes), m)};
  }
  throw std::runtime_error(
      "train_test_split: no feasible split found in " +
      std::to_string(max_retries) + " attempts");
}

double mtrd(const Ranking& ranking, const GroundTruth& ground_truth) {
  const std::size_t m = ground_truth.true_ratings.size();
  if (ranking.size() != m) {
    throw std::invalid_argument("mtrd: ranking size mismatch");
  }
  std::vector<int> pos(m), true_pos(m);
  for (std::size_t i = 0; i < m; ++i) {
    pos[ranking[i]] = (int)i;
    true_pos[ground_truth.true_ranking[i]] = (int)i;
  }
  double sum = 0.0;
  std::int64_t discordant = 0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const bool order = pos[a] < pos[b];
      const bool true_order = true_pos[a] < true_pos[b];
      if (order != true_order) {
        sum += std::abs(ground_truth.true_ratings[a] -
                        ground_truth.true_ratings[b]);
        ++discordant;
      }
    }
  }
  return discordant == 0 ? 0.0 : sum / static_cast<double>(discordant);
}

std::pair<PreferenceProfile, GroundTruth> generate_sparse_dataset(
    const SparseDatasetConfig& config) {
  if (config.vote_length > config.num_agents || config.vote_length < 2) {
    throw std::invalid_argument("generate_sparse_dataset: bad vote length");
  }
  Rng rng(config.seed);
  const int m = config.num_agents;
  GroundTruth truth;
  truth.true_ratings.resize(m);
  for (int i = 0; i < m; ++i) {
    truth.true_ratings[i] =
        rng.gaussian(config.skill_mean, config.skill_stddev);
  }
  truth.true_ranking =
      induced_ranking(std::span<const double>(truth.true_ratings));

  // Heavy-tailed participation: weight_i proportional to rank^-exponent of a
  // random agent order.
  std::vector<int> perm(m);
  for (int i = 0; i < m; ++i) perm[i] = i;
  rng.shuffle(perm);
  std::vector<double> weight(m);
  for (int r = 0; r < m; ++r) {
    weight[perm[r]] =
        std::pow(static_cast<double>(r + 1), -config.participation_exponent);
  }
  std::vector<double> cumulative(m);
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    acc += weight[i];
    cumulative[i] = acc;
  }
  auto draw_agent = [&] {
    const double u = rng.uniform() * acc;
    return static_cast<int>(
        std::lower_bound(cumulative.begin(), cumulative.end(), u) -
        cumulative.begin());
  };

  std::vector<int> appearances(m, 0);
  std::vector<Vote> votes;
  std::vector<char> in_vote(m, 0);
  std::vector<std::pair<double, int>> performances;
  auto push_vote = [&](const std::vector<int>& participants) {
    performances.clear();
    for (int a : participants) {
      performances.emplace_back(
          truth.true_ratings[a] +
              rng.gaussian(0.0, config.performance_noise_stddev),
          a);
      ++appearances[a];
    }
    std::sort(performances.begin(), performances.end(),
              [](const auto& x, const auto& y) {
                if (x.first != y.first) return x.first > y.first;
                return x.second < y.second;
              });
    Vote vote;
    for (const auto& [perf, a] : performances) vote.order.push_back(a);
    votes.push_back(std::move(vote));
  };

  std::vector<int> participants;
  for (int c = 0; c < config.num_votes; ++c) {
    participants.clear();
    std::fill(in_vote.begin(), in_vote.end(), 0);
    while (static_cast<int>(participants.size()) < config.vote_length) {
      const int a = draw_agent();
      if (in_vote[a]) continue;
      in_vote[a] = 1;
      participants.push_back(a);
    }
    push_vote(participants);
  }
  // Top up agents that fell short of the minimum appearance count with
  // extra uniform votes (one under-seen agent plus uniform fillers each).
  std::vector<int> starved;
  for (int a = 0; a < m; ++a) {
    for (int k = appearances[a]; k < config.min_appearances; ++k) {
      starved.push_back(a);
    }
  }
  for (int a : starved) {
    participants.clear();
    std::fill(in_vote.begin(), in_vote.end(), 0);
    participants.push_back(a);
    in_vote[a] = 1;
    while (static_cast<int>(participants.size()) < config.vote_length) {
      const int b = rng.index(m);
      if (in_vote[b]) continue;
      in_vote[b] = 1;
      participants.push_back(b);
    }
    push_vote(participants);
  }
  return {build_profile(std::move(votes), m), std::move(truth)};
}

std::string serialize_dataset(const PreferenceProfile& profile,
                              const GroundTruth* ground_truth) {
  std::ostringstream out;
  out << "# DATASET: sco synthetic\n";
  out << "# NUMBER ALTERNATIVES: " << profile.num_alternatives() << "\n";
  out << "# NUMBER VOTES: " << profile.total_weight() << "\n";
  if (ground_truth != nullptr) {
    out.precision(17);
    for (std::size_t i = 0; i < ground_truth->true_ratings.size(); ++i) {
      out << "# TRUE RATING " << i << ": " << ground_truth->true_ratings[i]
          << "\n";
    }
  }
  for (const Vote& v : profile.votes()) {
    out << v.multiplicity << ": ";
    for (std::size_t k = 0; k < v.order.size(); ++k) {
      if (k > 0) out << ",";
      out << v.order[k];
    }
    out << "\n";
  }
  return out.str();
}

std::pair<PreferenceProfile, std::optional<GroundTruth>> parse_dataset(
    std::string_view text) {
  int declared = -1;
  std::vector<double> true_ratings;
  std::vector<Vote> votes;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view meta = trim(line.substr(1));
      const std::size_t colon = meta.find(':');
      if (colon == std::string_view::npos) continue;
      const std::string_view key = trim(meta.substr(0, colon));
      const std::string_view value = trim(meta.substr(colon + 1));
      if (key == "NUMBER ALTERNATIVES") {
        declared = static_cast<int>(parse_int(value, line_no, "count"));
      } else if (key.starts_with("TRUE RATING ")) {
        const std::int64_t id = parse_int(
            key.substr(std::string_view("TRUE RATING ").size()), line_no,
            "agent id");
        if (static_cast<std::size_t>(id) >= true_ratings.size()) {
          true_ratings.resize(id + 1, 0.0);
        }
        true_ratings[id] = std::stod(std::string(value));
      }
      continue;
    }
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError(line_no, "expected 'multiplicity: id,id,...'");
    }
    Vote vote;
    vote.multiplicity = parse_int(line.substr(0, colon), line_no,
                                  "multiplicity");
    if (vote.multiplicity < 1) {
      throw ParseError(line_no, "multiplicity must be positive");
    }
    std::string_view rest = line.substr(colon + 1);
    std::unordered_set<int> seen;
    while (true) {
      rest = trim(rest);
      if (rest.empty()) break;
      const std::size_t comma = rest.find(',');
      const std::string_view tok =
          comma == std::string_view::npos ? rest : rest.substr(0, comma);
      const int id = static_cast<int>(parse_int(tok, line_no, "agent id"));
      if (id < 0) throw ParseError(line_no, "agent ids are 0-based");
      if (!seen.insert(id).second) {
        throw ParseError(line_no, "duplicate agent id within vote");
      }
      vote.order.push_back(id);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (vote.order.empty()) throw ParseError(line_no, "empty vote");
    votes.push_back(std::move(vote));
  }
  PreferenceProfile profile =
      build_profile(std::move(votes), declared > 0 ? declared : 0);
  std::optional<GroundTruth> truth;
  if (!true_ratings.empty()) {
    GroundTruth g;
    g.true_ratings = std::move(true_ratings);
    g.true_ranking = induced_ranking(std::span<const double>(g.true_ratings));
    truth = std::move(g);
  }
  return {std::move(profile), std::move(truth)};
}

}  // namespace sco
