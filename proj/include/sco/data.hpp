#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sco/profile.hpp"

namespace sco {

// Parse error carrying the 1-based input line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// PrefLib SOC/SOI text: '#'-prefixed metadata (NUMBER ALTERNATIVES,
// ALTERNATIVE NAME <i>, others ignored) followed by "multiplicity: id,id,.."
// data lines with 1-based alternative ids.
PreferenceProfile parse_preflib(std::string_view text);

// Canonical PrefLib-format serialization; parse(serialize(p)) == p and
// serialize is a fixed point from the second application onward.
std::string serialize_preflib(const PreferenceProfile& profile);

enum class Matching { kUniform, kSkillMatched };

struct TournamentConfig {
  int num_agents = 20;
  int contest_size = 4;
  int num_contests = 100;  // n
  double skill_mean = 100.0;
  double skill_stddev = 30.0;
  double performance_noise_stddev = 5.0;
  Matching matching = Matching::kUniform;
  std::uint64_t seed = 0;
};

struct GroundTruth {
  std::vector<double> true_ratings;
  Ranking true_ranking;  // descending true rating, index tie-break
};

// Simulated contests: true skills drawn once from N(mean, stddev^2);
// participants drawn uniformly or by skill matching (seed one uniformly,
// then repeatedly draw 3 fresh candidates and keep the one closest to the
// current contest average); each vote sorts participants by noisy
// performance, best first.
std::pair<PreferenceProfile, GroundTruth> generate_tournament(
    const TournamentConfig& config);

// Fraction of unordered alternative pairs never evaluated together.
double missing_pair_proportion(const PreferenceProfile& profile);

// Random ballot-level partition with |test| = test_count such that every
// alternative in test also appears in train, found by rejection resampling.
// Throws after max_retries failures.
std::pair<PreferenceProfile, PreferenceProfile> train_test_split(
    const PreferenceProfile& profile, std::int64_t test_count,
    std::uint64_t seed, int max_retries = 1000);

// Mean absolute true-rating gap over pairs the ranking misorders relative
// to the ground-truth ranking; 0 when there is no disagreement.
double mtrd(const Ranking& ranking, const GroundTruth& ground_truth);

// Large sparse synthetic dataset with fixed-length votes and heavy-tailed
// agent participation (the "diplomacy-like" preset shape). Every agent
// appears at least min_appearances times so constrained train/test splits
// stay feasible.
struct SparseDatasetConfig {
  int num_agents = 2000;
  int vote_length = 7;
  int num_votes = 6000;
  double participation_exponent = 1.2;  // Zipf-style tail over agents
  int min_appearances = 2;
  double skill_mean = 100.0;
  double skill_stddev = 30.0;
  double performance_noise_stddev = 5.0;
  std::uint64_t seed = 0;
};

std::pair<PreferenceProfile, GroundTruth> generate_sparse_dataset(
    const SparseDatasetConfig& config);

// Line-oriented dataset exchange format: "# key: value" header, one
// "multiplicity: id,id,.." line per vote (0-based ids), and an optional
// "# TRUE RATING <i>: value" block for the ground truth.
std::string serialize_dataset(const PreferenceProfile& profile,
                              const GroundTruth* ground_truth = nullptr);
std::pair<PreferenceProfile, std::optional<GroundTruth>> parse_dataset(
    std::string_view text);

}  // namespace sco
