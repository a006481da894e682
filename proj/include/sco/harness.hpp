#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sco/data.hpp"
#include "sco/fenchel_young.hpp"
#include "sco/profile.hpp"
#include "sco/report.hpp"
#include "sco/sgd.hpp"

namespace sco {

// The two worked example profiles used throughout the experiments: the
// five-vote three-alternative profile with Condorcet winner C, and the
// {2: A>B>C, 3: C>A>B} profile where C wins head-to-head but A has the
// higher win rate.
PreferenceProfile example_profile_table1();
PreferenceProfile example_profile_eq10();

// Key=value configuration file ("key = value" lines, '#' comments).
class ConfigMap {
 public:
  static ConfigMap parse(std::string_view text);
  static ConfigMap load(const std::string& path);

  bool has(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  double get(const std::string& key, double fallback) const;
  std::int64_t get(const std::string& key, std::int64_t fallback) const;

  const std::map<std::string, std::string>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::string> entries_;
};

// Simple deterministic worker pool: runs fn(i) for i in [0, count) on up to
// `threads` workers; results must be written to per-index slots.
void parallel_for(std::int64_t count, int threads,
                  const std::function<void(std::int64_t)>& fn);

// ---------------------------------------------------------------------------
// Warmup: convergence table on the Eq.-10-style profile plus the Elo and
// Fenchel-Young contrast.

struct WarmupCell {
  std::string method;  // "gd" or "sgd2"
  double alpha = 0.0;
  double tau = 0.0;
  // Mean over seeds of the first iteration (0-based) from which the induced
  // ranking stays C > A > B; -1 when a run never converged.
  double convergence_iteration = -1.0;
  Ranking final_ranking;
};

struct WarmupOutcome {
  std::vector<WarmupCell> cells;
  std::vector<double> elo_ratings;  // Elo-MM fit on the warmup profile
  Ranking elo_ranking;
  Ranking fy_ranking;
  ExperimentReport report;
};

WarmupOutcome run_warmup(std::int64_t gd_iterations = 20000,
                         int sgd_seeds = 3);

// ---------------------------------------------------------------------------
// Kemeny-Young approximation quality on a suite of small profiles.

struct KemenySuiteConfig {
  int num_profiles = 200;
  int min_alternatives = 3;
  int max_alternatives = 7;
  int min_votes = 10;
  int max_votes = 200;
  std::uint64_t seed = 20240501;
};

// Noisy-performance profiles (complete votes) spanning the configured m and
// n ranges; the surrogate for the PrefLib SOC instances.
std::vector<PreferenceProfile> generate_kemeny_suite(
    const KemenySuiteConfig& config);

struct KemenyEvalConfig {
  SgdConfig sgd;  // defaults set in run_kemeny_eval when left untouched
  int seeds_per_instance = 3;
  int kemeny_max_m = 10;
  int threads = 2;
};

struct KemenyGroupSummary {
  int m = 0;
  int instances = 0;
  double mean_normalized_kt = 0.0;
  double condorcet_match_proportion = 0.0;  // over runs with a winner
};

struct KemenyEvalOutcome {
  ExperimentReport report;
  // Seed-averaged normalized Kendall-tau distance to the exact Kemeny
  // ranking, averaged over instances.
  double mean_normalized_kt = 0.0;
  // Fraction of (instance, seed) runs top-ranking the strong Condorcet
  // winner, over instances that have one.
  double condorcet_match_proportion = 0.0;
  std::int64_t instances_with_winner = 0;
  std::vector<KemenyGroupSummary> groups;  // aggregated per m, ascending
};

KemenyEvalOutcome run_kemeny_eval(
    const std::vector<PreferenceProfile>& instances,
    const KemenyEvalConfig& config);

// ---------------------------------------------------------------------------
// Sparse synthetic tournaments (uniform and skill-matched).

struct TournamentSweepConfig {
  std::vector<int> contest_counts = {5, 10, 20, 30, 50, 75, 100, 200};
  std::vector<Matching> matchings = {Matching::kUniform,
                                     Matching::kSkillMatched};
  int seeds = 50;
  int num_agents = 20;
  int contest_size = 4;
  double sgd_alpha = 0.1;
  double sgd_tau = 1.0;
  std::int64_t sgd_iterations = 10000;
  int sgd_batch = 16;
  double fy_alpha = 0.1;
  double fy_epsilon = 1.0;
  double approval_threshold = 0.5;
  int threads = 2;
};

struct TournamentCell {
  std::string method;
  Matching matching = Matching::kUniform;
  int contests = 0;
  double mean_ktd = 0.0;
  double ktd_halfwidth = 0.0;
  double mean_mtrd = 0.0;
  double mtrd_halfwidth = 0.0;
  double mean_missing = 0.0;  // missing-pair proportion of the instances
};

struct TournamentOutcome {
  ExperimentReport report;
  std::vector<TournamentCell> cells;

  const TournamentCell* find(const std::string& method, Matching matching,
                             int contests) const;
};

TournamentOutcome run_sparse_tournament(const TournamentSweepConfig& config);

// ---------------------------------------------------------------------------
// Large sparse train/test evaluation (KTD_test curves).

struct LargeEvalConfig {
  int splits = 10;
  std::int64_t test_count = 600;
  double sgd_alpha = 1.0;
  double sgd_tau = 1.0;
  std::int64_t sgd_iterations = 20000;
  int sgd_batch = 32;
  double fy_alpha = 1.0;
  double fy_epsilon = 1.0;
  std::int64_t checkpoint_every = 1000;
  bool run_fy = true;
  bool run_online_elo = true;
  std::uint64_t seed = 1;
  int threads = 2;
};

struct KtdCurve {
  std::string method;
  int split = 0;
  std::vector<std::int64_t> iterations;
  std::vector<double> ktd_test;
  double final_ktd = 0.0;
};

struct LargeEvalOutcome {
  ExperimentReport report;
  std::vector<KtdCurve> curves;  // per (method, split)
  // Checkpoint medians across splits, keyed by method.
  std::map<std::string, std::vector<double>> median_curves;
  std::map<std::string, double> final_mean;  // per method
};

// Average subset Kendall-tau of the test votes against a full ranking.
double ktd_test(const PreferenceProfile& test, const Ranking& ranking);

LargeEvalOutcome run_large_sparse_eval(const PreferenceProfile& dataset,
                                       const LargeEvalConfig& config);

// ---------------------------------------------------------------------------
// Online single-pass evaluation.

struct OnlineEvalConfig {
  std::vector<double> alphas = {0.5, 0.2, 0.1, 0.02, 0.01};
  std::vector<double> taus = {0.5, 1.0, 2.0};
  int shuffles = 50;
  std::int64_t test_count = 600;
  int checkpoints = 10;  // KTD_test measurements per single pass
  double elo_k = 32.0;
  std::uint64_t seed = 1;
  int threads = 2;
};

struct OnlineEvalOutcome {
  ExperimentReport report;
  // Mean final KTD_test per "sco a=<alpha> t=<tau>" cell and for "elo".
  std::map<std::string, double> final_mean;
  // Mean KTD_test per cell at each checkpoint (last entry = final).
  std::map<std::string, std::vector<double>> mean_curves;
};

OnlineEvalOutcome run_online_eval(const PreferenceProfile& dataset,
                                  const OnlineEvalConfig& config);

}  // namespace sco
