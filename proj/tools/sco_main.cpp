#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sco/baselines.hpp"
#include "sco/data.hpp"
#include "sco/fenchel_young.hpp"
#include "sco/harness.hpp"
#include "sco/metrics.hpp"
#include "sco/posterior.hpp"
#include "sco/report.hpp"
#include "sco/sigmoidal_program.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "key=value config file");
  cmd->add_option("--out", args.out_path, "output path (default stdout)");
  cmd->add_option("--format", args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", args.seed, "base random seed");
}

sco::ConfigMap load_config(const CommonArgs& args) {
  if (args.config_path.empty()) return sco::ConfigMap::parse("");
  return sco::ConfigMap::load(args.config_path);
}

void write_report(const sco::ExperimentReport& report,
                  const CommonArgs& args) {
  const sco::ReportFormat format = args.format == "json"
                                       ? sco::ReportFormat::kJson
                                       : sco::ReportFormat::kCsv;
  if (args.out_path.empty()) {
    std::cout << sco::format_report(report, format);
  } else {
    sco::emit_report(report, format, args.out_path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open data file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// PrefLib .soc/.soi or the 0-based synthetic dataset format (marked by a
// "# DATASET" header line).
std::pair<sco::PreferenceProfile, std::optional<sco::GroundTruth>>
load_dataset(const std::string& path) {
  const std::string text = read_file(path);
  if (text.starts_with("# DATASET") ||
      text.find("\n# DATASET") != std::string::npos) {
    return sco::parse_dataset(text);
  }
  return {sco::parse_preflib(text), std::nullopt};
}

sco::PreferenceProfile dataset_or_preset(const std::string& data_path,
                                         const std::string& preset,
                                         const sco::ConfigMap& cfg,
                                         std::uint64_t seed) {
  if (!data_path.empty()) return load_dataset(data_path).first;
  if (preset == "diplomacy-like") {
    sco::SparseDatasetConfig sparse;
    sparse.num_agents = (int)cfg.get("num_agents", (std::int64_t)2000);
    sparse.vote_length = (int)cfg.get("vote_length", (std::int64_t)7);
    sparse.num_votes = (int)cfg.get("num_votes", (std::int64_t)6000);
    sparse.participation_exponent = cfg.get("participation_exponent", 1.2);
    sparse.seed = seed;
    return sco::generate_sparse_dataset(sparse).first;
  }
  throw std::runtime_error("need --data <file> or --preset diplomacy-like");
}

int run(int argc, char** argv) {
  CLI::App app{"Soft Condorcet Optimization rating toolkit"};
  app.require_subcommand(1);

  CommonArgs args;

  auto* warmup = app.add_subcommand(
      "warmup", "Convergence table and Elo/FY contrast on the worked example");
  add_common(warmup, args);

  auto* kemeny = app.add_subcommand(
      "kemeny-eval", "Kemeny-Young approximation sweep on small profiles");
  add_common(kemeny, args);
  std::vector<std::string> kemeny_files;
  kemeny->add_option("--data", kemeny_files,
                     "PrefLib files to evaluate (default: generated suite)");

  auto* tournament = app.add_subcommand(
      "tournament", "Sparse synthetic tournament sweep (uniform and "
                    "skill-matched)");
  add_common(tournament, args);

  auto* large = app.add_subcommand(
      "large-eval", "Train/test KTD curves on a large sparse dataset");
  add_common(large, args);
  std::string large_data, large_preset;
  large->add_option("--data", large_data, "dataset file (PrefLib or dataset "
                                          "format)");
  large->add_option("--preset", large_preset,
                    "synthetic preset (diplomacy-like)");

  auto* online = app.add_subcommand(
      "online-eval", "Single-pass online evaluation against online Elo");
  add_common(online, args);
  std::string online_data, online_preset;
  online->add_option("--data", online_data, "dataset file");
  online->add_option("--preset", online_preset, "synthetic preset");

  auto* posterior = app.add_subcommand(
      "posterior", "Posterior over rankings via constant-step SGD sampling");
  add_common(posterior, args);
  std::string posterior_data;
  posterior->add_option("--data", posterior_data, "dataset file");

  auto* rate = app.add_subcommand("rate",
                                  "One-shot: dataset in, ratings out");
  add_common(rate, args);
  std::string rate_data, rate_method = "sigmoid";
  rate->add_option("--data", rate_data, "dataset file")->required();
  rate->add_option("--method", rate_method,
                   "sigmoid | fy | elo-mm | sigmoidal-program | copeland | "
                   "borda | plurality | approval | ranked-pairs")
      ->check(CLI::IsMember({"sigmoid", "fy", "elo-mm", "sigmoidal-program",
                             "copeland", "borda", "plurality", "approval",
                             "ranked-pairs"}));

  auto* export_sp = app.add_subcommand(
      "export-program", "Write the sigmoidal program listing for a dataset");
  add_common(export_sp, args);
  std::string export_data;
  export_sp->add_option("--data", export_data, "dataset file")->required();

  CLI11_PARSE(app, argc, argv);
  const sco::ConfigMap cfg = load_config(args);

  if (warmup->parsed()) {
    sco::WarmupOutcome outcome = sco::run_warmup(
        cfg.get("gd_iterations", (std::int64_t)20000),
        (int)cfg.get("sgd_seeds", (std::int64_t)3));
    write_report(outcome.report, args);
    return 0;
  }

  if (kemeny->parsed()) {
    std::vector<sco::PreferenceProfile> instances;
    if (!kemeny_files.empty()) {
      for (const std::string& path : kemeny_files) {
        instances.push_back(sco::parse_preflib(read_file(path)));
      }
    } else {
      sco::KemenySuiteConfig suite;
      suite.num_profiles = (int)cfg.get("num_profiles", (std::int64_t)200);
      suite.seed = args.seed == 0 ? suite.seed : args.seed;
      instances = sco::generate_kemeny_suite(suite);
    }
    sco::KemenyEvalConfig eval;
    eval.sgd.learning_rate = cfg.get("sgd_alpha", 0.01);
    eval.sgd.temperature = cfg.get("sgd_tau", 1.0);
    eval.sgd.batch_size = (int)cfg.get("sgd_batch", (std::int64_t)32);
    eval.sgd.iterations = cfg.get("sgd_iterations", (std::int64_t)10000);
    eval.sgd.checkpoint_every = eval.sgd.iterations;
    eval.seeds_per_instance = (int)cfg.get("seeds", (std::int64_t)3);
    eval.threads = (int)cfg.get("threads", (std::int64_t)2);
    sco::KemenyEvalOutcome outcome = sco::run_kemeny_eval(instances, eval);
    outcome.report.config.emplace_back(
        "mean_normalized_kt", sco::to_cell(outcome.mean_normalized_kt));
    outcome.report.config.emplace_back(
        "condorcet_match_proportion",
        sco::to_cell(outcome.condorcet_match_proportion));
    write_report(outcome.report, args);
    return 0;
  }

  if (tournament->parsed()) {
    sco::TournamentSweepConfig sweep;
    sweep.seeds = (int)cfg.get("seeds", (std::int64_t)50);
    sweep.sgd_alpha = cfg.get("sgd_alpha", sweep.sgd_alpha);
    sweep.sgd_tau = cfg.get("sgd_tau", sweep.sgd_tau);
    sweep.sgd_iterations =
        cfg.get("sgd_iterations", sweep.sgd_iterations);
    sweep.sgd_batch = (int)cfg.get("sgd_batch", (std::int64_t)16);
    sweep.threads = (int)cfg.get("threads", (std::int64_t)2);
    sco::TournamentOutcome outcome = sco::run_sparse_tournament(sweep);
    write_report(outcome.report, args);
    return 0;
  }

  if (large->parsed()) {
    const sco::PreferenceProfile dataset =
        dataset_or_preset(large_data, large_preset, cfg, args.seed + 1);
    sco::LargeEvalConfig eval;
    eval.splits = (int)cfg.get("splits", (std::int64_t)10);
    eval.test_count = cfg.get("test_count", (std::int64_t)600);
    eval.sgd_alpha = cfg.get("sgd_alpha", eval.sgd_alpha);
    eval.sgd_tau = cfg.get("sgd_tau", eval.sgd_tau);
    eval.sgd_iterations = cfg.get("sgd_iterations", eval.sgd_iterations);
    eval.sgd_batch = (int)cfg.get("sgd_batch", (std::int64_t)32);
    eval.checkpoint_every =
        cfg.get("checkpoint_every", eval.checkpoint_every);
    eval.seed = args.seed + 1;
    eval.threads = (int)cfg.get("threads", (std::int64_t)2);
    sco::LargeEvalOutcome outcome = sco::run_large_sparse_eval(dataset, eval);
    write_report(outcome.report, args);
    return 0;
  }

  if (online->parsed()) {
    const sco::PreferenceProfile dataset =
        dataset_or_preset(online_data, online_preset, cfg, args.seed + 1);
    sco::OnlineEvalConfig eval;
    eval.shuffles = (int)cfg.get("shuffles", (std::int64_t)50);
    eval.test_count = cfg.get("test_count", (std::int64_t)600);
    eval.seed = args.seed + 1;
    eval.threads = (int)cfg.get("threads", (std::int64_t)2);
    sco::OnlineEvalOutcome outcome = sco::run_online_eval(dataset, eval);
    write_report(outcome.report, args);
    return 0;
  }

  if (posterior->parsed()) {
    sco::PreferenceProfile profile;
    if (!posterior_data.empty()) {
      profile = load_dataset(posterior_data).first;
    } else {
      sco::TournamentConfig t;
      t.num_agents = (int)cfg.get("num_agents", (std::int64_t)10);
      t.contest_size = (int)cfg.get("contest_size", (std::int64_t)4);
      t.num_contests = (int)cfg.get("num_contests", (std::int64_t)500);
      t.matching = sco::Matching::kSkillMatched;
      t.seed = args.seed;
      profile = sco::generate_tournament(t).first;
    }
    sco::SgdConfig sgd;
    sgd.learning_rate = cfg.get("sgd_alpha", 0.1);
    sgd.temperature = cfg.get("sgd_tau", 1.0);
    sgd.batch_size = (int)cfg.get("sgd_batch", (std::int64_t)16);
    sco::PosteriorConfig pc;
    pc.burn_in_iterations = cfg.get("burn_in", (std::int64_t)10000);
    pc.sampling_iterations = cfg.get("sampling", (std::int64_t)10000);
    pc.thinning = cfg.get("thinning", (std::int64_t)10);
    pc.sampling_step_size = cfg.get("step_size", 0.0);
    pc.seed = args.seed;
    const sco::RankingDistribution dist =
        sco::sample_posterior(profile, sgd, pc);
    const std::string csv = sco::distribution_to_csv(dist);
    if (args.out_path.empty()) {
      std::cout << csv;
    } else {
      std::ofstream out(args.out_path, std::ios::binary);
      out << csv;
    }
    return 0;
  }

  if (rate->parsed()) {
    const sco::PreferenceProfile profile = load_dataset(rate_data).first;
    sco::ExperimentReport report;
    report.experiment = "rate";
    report.config = {{"method", rate_method}, {"data", rate_data}};
    report.columns = {"alternative", "name", "rating", "rank"};
    std::vector<double> ratings;
    sco::Ranking ranking;
    if (rate_method == "sigmoid" || rate_method == "fy") {
      if (rate_method == "sigmoid") {
        sco::SgdConfig sgd;
        sgd.learning_rate = cfg.get("sgd_alpha", 0.01);
        sgd.temperature = cfg.get("sgd_tau", 1.0);
        sgd.batch_size = (int)cfg.get("sgd_batch", (std::int64_t)32);
        sgd.iterations = cfg.get("sgd_iterations", (std::int64_t)10000);
        sgd.checkpoint_every = sgd.iterations;
        sgd.seed = args.seed;
        ratings = sco::fit_sgd(profile, sgd).first.theta;
      } else {
        sco::FyConfig fy;
        fy.learning_rate = cfg.get("fy_alpha", 0.01);
        fy.epsilon = cfg.get("fy_epsilon", 1.0);
        fy.batch_size = (int)cfg.get("fy_batch", (std::int64_t)32);
        fy.iterations = cfg.get("fy_iterations", (std::int64_t)10000);
        fy.checkpoint_every = fy.iterations;
        fy.seed = args.seed;
        ratings = sco::fit_fy(profile, fy).first.theta;
      }
      ranking = sco::induced_ranking(std::span<const double>(ratings));
    } else if (rate_method == "elo-mm") {
      ratings = sco::elo_fit_mm(profile);
      ranking = sco::induced_ranking(std::span<const double>(ratings));
    } else if (rate_method == "sigmoidal-program") {
      const sco::SigmoidalProgram program =
          sco::build_program(profile, cfg.get("sgd_tau", 1.0));
      sco::BnbConfig bnb;
      bnb.tolerance = cfg.get("tolerance", 1e-4);
      const sco::BnbResult solved = sco::solve_branch_and_bound(program, bnb);
      ratings = sco::recover_ratings(program, solved.x, bnb.tolerance).theta;
      ranking = solved.induced;
    } else {
      if (rate_method == "copeland") ranking = sco::copeland(profile);
      else if (rate_method == "borda") ranking = sco::borda(profile);
      else if (rate_method == "plurality") ranking = sco::plurality(profile);
      else if (rate_method == "approval")
        ranking = sco::approval(profile, cfg.get("approval_threshold", 0.5));
      else ranking = sco::ranked_pairs(profile);
      // Rules produce a ranking only; emit positional scores for uniformity.
      ratings.assign(profile.num_alternatives(), 0.0);
      for (std::size_t pos = 0; pos < ranking.size(); ++pos) {
        ratings[ranking[pos]] =
            static_cast<double>(ranking.size() - 1 - pos);
      }
    }
    std::vector<int> rank_of(profile.num_alternatives(), 0);
    for (std::size_t pos = 0; pos < ranking.size(); ++pos) {
      rank_of[ranking[pos]] = static_cast<int>(pos);
    }
    for (int a = 0; a < profile.num_alternatives(); ++a) {
      report.add_row({std::to_string(a),
                      profile.has_names() ? profile.names()[a] : "",
                      sco::to_cell(ratings[a]), std::to_string(rank_of[a])});
    }
    write_report(report, args);
    return 0;
  }

  if (export_sp->parsed()) {
    const sco::PreferenceProfile profile = load_dataset(export_data).first;
    const sco::SigmoidalProgram program =
        sco::build_program(profile, cfg.get("sgd_tau", 1.0));
    const std::string listing = sco::export_program(program);
    if (args.out_path.empty()) {
      std::cout << listing;
    } else {
      std::ofstream out(args.out_path, std::ios::binary);
      out << listing;
    }
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
