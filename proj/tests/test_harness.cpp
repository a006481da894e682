#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sco/harness.hpp"
#include "sco/metrics.hpp"
#include "test_util.hpp"

using namespace sco;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("config map parsing") {
  const ConfigMap cfg = ConfigMap::parse(
      "alpha = 0.5\n# a comment\nseeds=3\nname = tournament # trailing\n");
  CHECK(cfg.get("alpha", 0.0) == 0.5);
  CHECK(cfg.get("seeds", (std::int64_t)0) == 3);
  CHECK(cfg.get("name", std::string()) == "tournament");
  CHECK(cfg.get("missing", std::string("fallback")) == "fallback");
  CHECK(!cfg.has("comment"));
}

TEST_CASE("parallel_for covers every index once") {
  std::vector<std::atomic<int>> hits(257);
  parallel_for(257, 4, [&](std::int64_t i) { hits[i].fetch_add(1); });
  for (const auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("parallel_for propagates exceptions") {
  CHECK_THROWS_AS(
      parallel_for(8, 2,
                   [&](std::int64_t i) {
                     if (i == 5) throw std::runtime_error("boom");
                   }),
      std::runtime_error);
}

TEST_CASE("ktd_test ranges and sanity") {
  SparseDatasetConfig cfg;
  cfg.num_agents = 50;
  cfg.num_votes = 200;
  cfg.seed = 3;
  const auto [dataset, truth] = generate_sparse_dataset(cfg);
  const double at_truth = ktd_test(dataset, truth.true_ranking);
  CHECK(at_truth >= 0.0);
  CHECK(at_truth <= 21.0);
  Ranking reversed = truth.true_ranking;
  std::reverse(reversed.begin(), reversed.end());
  CHECK(ktd_test(dataset, reversed) >= at_truth);
  CHECK(ktd_test(dataset, reversed) + at_truth ==
        doctest::Approx(21.0).epsilon(1e-9));
}

TEST_CASE("report emission is byte-identical and json mirrors csv") {
  ExperimentReport report;
  report.experiment = "demo";
  report.config = {{"alpha", "0.5"}};
  report.columns = {"method", "value"};
  report.add_row({"a", "1.25"});
  report.add_row({"b", "2.5"});

  const std::string p1 = "/tmp/sco_report_1.csv";
  const std::string p2 = "/tmp/sco_report_2.csv";
  emit_report(report, ReportFormat::kCsv, p1);
  emit_report(report, ReportFormat::kCsv, p2);
  CHECK(slurp(p1) == slurp(p2));
  std::remove(p1.c_str());
  std::remove(p2.c_str());

  const std::string json_text = format_report(report, ReportFormat::kJson);
  const auto parsed = nlohmann::json::parse(json_text);
  CHECK(parsed["experiment"] == "demo");
  CHECK(parsed["rows"].size() == 2);
  CHECK(parsed["rows"][0]["method"] == "a");
  CHECK(parsed["rows"][1]["value"] == "2.5");

  const std::string csv_text = format_report(report, ReportFormat::kCsv);
  // Header comments + column row + one line per row.
  CHECK(std::count(csv_text.begin(), csv_text.end(), '\n') == 2 + 1 + 2);
}

TEST_CASE("confidence halfwidths shrink with more samples") {
  Rng rng(17);
  std::vector<double> small, large;
  for (int i = 0; i < 10; ++i) small.push_back(rng.gaussian());
  large = small;
  for (int i = 0; i < 40; ++i) large.push_back(rng.gaussian());
  CHECK(confidence_halfwidth(large) < confidence_halfwidth(small));
}

TEST_CASE("warmup reproduces the qualitative contrasts") {
  const WarmupOutcome warmup = run_warmup(6000, 2);
  // Every sigmoid cell settles on C > A > B.
  for (const WarmupCell& cell : warmup.cells) {
    CHECK(cell.final_ranking == Ranking{2, 0, 1});
    if (cell.method == "gd" && cell.alpha == 0.1) {
      CHECK(cell.convergence_iteration >= 0);
    }
  }
  // Elo rates A strictly above C; FY top-ranks A.
  CHECK(warmup.elo_ratings[0] > warmup.elo_ratings[2]);
  CHECK(warmup.fy_ranking.front() == 0);
  CHECK(warmup.report.rows.size() ==
        6 * (1 + 2) + 2);  // per cell: gd + 2 sgd seeds; plus elo and fy
}

TEST_CASE("kemeny eval on a small suite") {
  KemenySuiteConfig suite;
  suite.num_profiles = 8;
  suite.max_alternatives = 5;
  const std::vector<PreferenceProfile> instances =
      generate_kemeny_suite(suite);
  REQUIRE(instances.size() == 8);
  KemenyEvalConfig cfg;
  cfg.sgd.iterations = 2000;
  cfg.sgd.checkpoint_every = 2000;
  cfg.seeds_per_instance = 2;
  const KemenyEvalOutcome out = run_kemeny_eval(instances, cfg);
  CHECK(out.mean_normalized_kt >= 0.0);
  CHECK(out.mean_normalized_kt <= 1.0);
  CHECK(out.report.rows.size() == 8 * 2 + out.groups.size());
  int grouped = 0;
  for (const KemenyGroupSummary& g : out.groups) {
    grouped += g.instances;
    CHECK(g.condorcet_match_proportion >= 0.0);
    CHECK(g.condorcet_match_proportion <= 1.0);
  }
  CHECK(grouped == 8);
}

TEST_CASE("single-vote profiles are recovered exactly by the sgd path") {
  const PreferenceProfile p = build_profile({{{3, 0, 2, 1, 4}, 1}});
  SgdConfig sgd;
  sgd.learning_rate = 0.5;
  sgd.batch_size = 0;
  sgd.iterations = 2000;
  sgd.checkpoint_every = 2000;
  const auto [ratings, trace] = fit_sgd(p, sgd);
  CHECK(induced_ranking(ratings) == Ranking{3, 0, 2, 1, 4});
  CHECK(profile_distance(p, induced_ranking(ratings)) == 0);
}

TEST_CASE("tournament sweep summary shape") {
  TournamentSweepConfig cfg;
  cfg.contest_counts = {5, 20};
  cfg.seeds = 3;
  cfg.sgd_iterations = 500;
  const TournamentOutcome out = run_sparse_tournament(cfg);
  // 2 matchings x 2 contest counts x 8 methods; per cell, one row per seed
  // plus the mean and ci95 summary rows.
  CHECK(out.cells.size() == 2 * 2 * 8);
  CHECK(out.report.rows.size() == 2 * 2 * 8 * (3 + 2));
  const TournamentCell* cell =
      out.find("borda", Matching::kUniform, 20);
  REQUIRE(cell != nullptr);
  CHECK(cell->mean_ktd >= 0.0);
  CHECK(cell->mean_missing > 0.0);
  CHECK(out.find("nope", Matching::kUniform, 20) == nullptr);
}

TEST_CASE("large eval curves are well-formed") {
  SparseDatasetConfig data;
  data.num_agents = 120;
  data.num_votes = 400;
  data.seed = 21;
  const auto [dataset, truth] = generate_sparse_dataset(data);
  LargeEvalConfig cfg;
  cfg.splits = 2;
  cfg.test_count = 50;
  cfg.sgd_iterations = 1000;
  cfg.checkpoint_every = 250;
  const LargeEvalOutcome out = run_large_sparse_eval(dataset, cfg);
  CHECK(out.median_curves.at("sigmoid_sco").size() == 4);
  CHECK(out.final_mean.count("online_elo") == 1);
  for (const KtdCurve& curve : out.curves) {
    for (double v : curve.ktd_test) {
      CHECK(v >= 0.0);
      CHECK(v <= 21.0);
    }
  }
  // Deterministic rerun.
  const LargeEvalOutcome again = run_large_sparse_eval(dataset, cfg);
  CHECK(again.final_mean == out.final_mean);
}

TEST_CASE("online eval runs one pass per shuffle") {
  SparseDatasetConfig data;
  data.num_agents = 2000;
  data.num_votes = 1200;
  data.seed = 22;
  const auto [dataset, truth] = generate_sparse_dataset(data);
  OnlineEvalConfig cfg;  // full alpha x tau grid
  cfg.shuffles = 10;
  cfg.test_count = 150;
  cfg.checkpoints = 5;
  const OnlineEvalOutcome out = run_online_eval(dataset, cfg);
  CHECK(out.final_mean.size() == 5 * 3 + 1);
  CHECK(out.final_mean.count("elo") == 1);
  for (const auto& [name, curve] : out.mean_curves) {
    CHECK(curve.size() >= 5);
    CHECK(curve.back() == doctest::Approx(out.final_mean.at(name)));
  }
  // One row per (cell, shuffle, checkpoint).
  const std::size_t checkpoints = out.mean_curves.begin()->second.size();
  CHECK(out.report.rows.size() == 16 * 10 * checkpoints);
  // At least one online learning-rate cell keeps up with online Elo.
  double best_sco = 1e18;
  for (const auto& [name, final_value] : out.final_mean) {
    if (name != "elo") best_sco = std::min(best_sco, final_value);
  }
  CHECK(best_sco <= out.final_mean.at("elo") + 1e-9);
}
