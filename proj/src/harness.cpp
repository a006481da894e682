#include "sco/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <mutex>
#include <thread>

#include "sco/baselines.hpp"
#include "sco/metrics.hpp"
#include "sco/random.hpp"

namespace sco {

PreferenceProfile example_profile_table1() {
  // 1: A>B>C, 1: A>C>B, 2: C>A>B, 1: B>C>A over A=0, B=1, C=2.
  return build_profile({{{0, 1, 2}, 1}, {{0, 2, 1}, 1}, {{2, 0, 1}, 2},
                        {{1, 2, 0}, 1}},
                       3, {"A", "B", "C"});
}

PreferenceProfile example_profile_eq10() {
  // 2: A>B>C, 3: C>A>B.
  return build_profile({{{0, 1, 2}, 2}, {{2, 0, 1}, 3}}, 3, {"A", "B", "C"});
}

ConfigMap ConfigMap::parse(std::string_view text) {
  ConfigMap cfg;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) continue;
    auto strip = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                            s.front() == '\r')) {
        s.remove_prefix(1);
      }
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                            s.back() == '\r')) {
        s.remove_suffix(1);
      }
      return s;
    };
    const std::string key{strip(line.substr(0, eq))};
    const std::string value{strip(line.substr(eq + 1))};
    if (!key.empty()) cfg.entries_[key] = value;
  }
  return cfg;
}

ConfigMap ConfigMap::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

bool ConfigMap::has(const std::string& key) const {
  return entries_.count(key) > 0;
}

std::string ConfigMap::get(const std::string& key,
                           const std::string& fallback) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double ConfigMap::get(const std::string& key, double fallback) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? fallback : std::stod(it->second);
}

std::int64_t ConfigMap::get(const std::string& key,
                            std::int64_t fallback) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? fallback : std::stoll(it->second);
}

void parallel_for(std::int64_t count, int threads,
                  const std::function<void(std::int64_t)>& fn) {
  threads = std::max<int>(
      1, static_cast<int>(std::min<std::int64_t>(threads, count)));
  if (threads == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::int64_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------

WarmupOutcome run_warmup(std::int64_t gd_iterations, int sgd_seeds) {
  const auto start = std::chrono::steady_clock::now();
  const PreferenceProfile profile = example_profile_eq10();
  const Ranking target = {2, 0, 1};  // C > A > B

  WarmupOutcome out;
  out.report.experiment = "warmup";
  out.report.config = {{"profile", "2: A>B>C, 3: C>A>B"},
                       {"gd_iterations", std::to_string(gd_iterations)},
                       {"sgd_seeds", std::to_string(sgd_seeds)}};
  out.report.columns = {"method", "alpha", "tau", "seed",
                        "converged_at", "final_ranking"};

  auto ranking_string = [](const Ranking& r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i > 0) s += ">";
      s += std::to_string(r[i]);
    }
    return s;
  };

  for (const double alpha : {0.01, 0.1}) {
    for (const double tau : {0.5, 1.0, 2.0}) {
      // Full gradient descent: deterministic, single run.
      SgdConfig gd;
      gd.learning_rate = alpha;
      gd.temperature = tau;
      gd.batch_size = 0;
      gd.iterations = gd_iterations;
      gd.convergence_target = target;
      const auto [ratings, trace] = fit_sgd(profile, gd);
      WarmupCell gd_cell;
      gd_cell.method = "gd";
      gd_cell.alpha = alpha;
      gd_cell.tau = tau;
      gd_cell.convergence_iteration =
          trace.converged_at ? static_cast<double>(*trace.converged_at) : -1;
      gd_cell.final_ranking = induced_ranking(ratings);
      out.report.add_row({"gd", to_cell(alpha), to_cell(tau), "-",
                          to_cell(gd_cell.convergence_iteration),
                          ranking_string(gd_cell.final_ranking)});
      out.cells.push_back(std::move(gd_cell));

      // SGD with batch size 2, averaged over seeds.
      double sum = 0.0;
      int converged = 0;
      Ranking last;
      for (int seed = 0; seed < sgd_seeds; ++seed) {
        SgdConfig sgd = gd;
        sgd.batch_size = 2;
        sgd.seed = static_cast<std::uint64_t>(seed);
        const auto [r2, t2] = fit_sgd(profile, sgd);
        if (t2.converged_at) {
          sum += static_cast<double>(*t2.converged_at);
          ++converged;
        }
        last = induced_ranking(r2);
        out.report.add_row(
            {"sgd2", to_cell(alpha), to_cell(tau), std::to_string(seed),
             t2.converged_at ? to_cell(double(*t2.converged_at)) : "-1",
             ranking_string(induced_ranking(r2))});
      }
      WarmupCell scell;
      scell.method = "sgd2";
      scell.alpha = alpha;
      scell.tau = tau;
      scell.convergence_iteration =
          converged == sgd_seeds ? sum / sgd_seeds : -1;
      scell.final_ranking = last;
      out.cells.push_back(std::move(scell));
    }
  }

  out.elo_ratings = elo_fit_mm(profile);
  out.elo_ranking = induced_ranking(std::span<const double>(out.elo_ratings));
  FyConfig fy;
  fy.learning_rate = 0.1;
  fy.iterations = 4000;
  fy.batch_size = 0;
  fy.mc_samples = 8;
  const auto [fy_ratings, fy_trace] = fit_fy(profile, fy);
  out.fy_ranking = induced_ranking(fy_ratings);
  out.report.add_row({"elo_mm", "-", "-", "-", "-",
                      ranking_string(out.elo_ranking)});
  out.report.add_row({"fy", "-", "-", "-", "-",
                      ranking_string(out.fy_ranking)});
  out.report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

// ---------------------------------------------------------------------------

std::vector<PreferenceProfile> generate_kemeny_suite(
    const KemenySuiteConfig& config) {
  std::vector<PreferenceProfile> suite;
  Rng rng(config.seed);
  for (int k = 0; k < config.num_profiles; ++k) {
    const int m = config.min_alternatives +
                  rng.index(config.max_alternatives -
                            config.min_alternatives + 1);
    const int n = config.min_votes +
                  rng.index(config.max_votes - config.min_votes + 1);
    TournamentConfig t;
    t.num_agents = m;
    t.contest_size = m;  // complete votes
    t.num_contests = n;
    t.skill_mean = 100.0;
    t.skill_stddev = 10.0;
    // Noise from well-separated to nearly uniform profiles.
    t.performance_noise_stddev = 5.0 + 30.0 * rng.uniform();
    t.matching = Matching::kUniform;
    t.seed = rng.next_u64();
    suite.push_back(generate_tournament(t).first);
  }
  return suite;
}

KemenyEvalOutcome run_kemeny_eval(
    const std::vector<PreferenceProfile>& instances,
    const KemenyEvalConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  KemenyEvalOutcome out;
  out.report.experiment = "kemeny-eval";
  out.report.columns = {"instance", "m",       "n",
                        "seed",     "kn_to_kemeny", "condorcet_match"};
  out.report.config = {
      {"instances", std::to_string(instances.size())},
      {"sgd_alpha", to_cell(config.sgd.learning_rate)},
      {"sgd_tau", to_cell(config.sgd.temperature)},
      {"sgd_batch", std::to_string(config.sgd.batch_size)},
      {"sgd_iterations", std::to_string(config.sgd.iterations)},
      {"seeds_per_instance", std::to_string(config.seeds_per_instance)}};

  struct InstanceResult {
    std::vector<double> kn;
    std::vector<int> match;  // -1 no winner, else 0/1
    int m = 0;
    std::int64_t n = 0;
  };
  std::vector<InstanceResult> results(instances.size());

  parallel_for(
      static_cast<std::int64_t>(instances.size()), config.threads,
      [&](std::int64_t idx) {
        const PreferenceProfile& profile = instances[idx];
        InstanceResult& res = results[idx];
        res.m = profile.num_alternatives();
        res.n = profile.total_weight();
        const KemenyResult kem =
            kemeny_optimal(profile, config.kemeny_max_m);
        const auto winner =
            condorcet_winner(margin_matrix(preference_matrix(profile)))
                .strong;
        for (int seed = 0; seed < config.seeds_per_instance; ++seed) {
          SgdConfig sgd = config.sgd;
          sgd.seed = static_cast<std::uint64_t>(idx * 1000 + seed);
          const auto [ratings, trace] = fit_sgd(profile, sgd);
          const Ranking r = induced_ranking(ratings);
          res.kn.push_back(normalized_kendall_tau(r, kem.ranking));
          if (winner.has_value()) {
            res.match.push_back(r.front() == *winner ? 1 : 0);
          } else {
            res.match.push_back(-1);
          }
        }
      });

  double kn_sum = 0.0;
  std::int64_t match_hits = 0, match_total = 0;
  std::map<int, KemenyGroupSummary> groups;
  std::map<int, std::pair<std::int64_t, std::int64_t>> group_matches;
  for (std::size_t idx = 0; idx < results.size(); ++idx) {
    const InstanceResult& res = results[idx];
    double inst_kn = 0.0;
    for (std::size_t s = 0; s < res.kn.size(); ++s) {
      inst_kn += res.kn[s];
      out.report.add_row({std::to_string(idx), std::to_string(res.m),
                          std::to_string(res.n), std::to_string(s),
                          to_cell(res.kn[s]),
                          std::to_string(res.match[s])});
      if (res.match[s] >= 0) {
        ++match_total;
        match_hits += res.match[s];
        ++group_matches[res.m].second;
        group_matches[res.m].first += res.match[s];
      }
    }
    inst_kn /= static_cast<double>(res.kn.size());
    kn_sum += inst_kn;
    KemenyGroupSummary& g = groups[res.m];
    g.m = res.m;
    ++g.instances;
    g.mean_normalized_kt += inst_kn;
    if (res.match.front() >= 0) ++out.instances_with_winner;
  }
  out.mean_normalized_kt =
      instances.empty() ? 0.0 : kn_sum / static_cast<double>(instances.size());
  out.condorcet_match_proportion =
      match_total == 0
          ? 1.0
          : static_cast<double>(match_hits) / static_cast<double>(match_total);
  for (auto& [m, g] : groups) {
    g.mean_normalized_kt /= static_cast<double>(g.instances);
    const auto [hits, total] = group_matches[m];
    g.condorcet_match_proportion =
        total == 0 ? 1.0
                   : static_cast<double>(hits) / static_cast<double>(total);
    out.report.add_row({"group", std::to_string(m),
                        std::to_string(g.instances), "-",
                        to_cell(g.mean_normalized_kt),
                        to_cell(g.condorcet_match_proportion)});
    out.groups.push_back(g);
  }
  out.report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct MethodRun {
  std::string name;
  Ranking ranking;
};

}  // namespace

const TournamentCell* TournamentOutcome::find(const std::string& method,
                                              Matching matching,
                                              int contests) const {
  for (const TournamentCell& c : cells) {
    if (c.method == method && c.matching == matching &&
        c.contests == contests) {
      return &c;
    }
  }
  return nullptr;
}

TournamentOutcome run_sparse_tournament(const TournamentSweepConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  TournamentOutcome out;
  out.report.experiment = "tournament";
  out.report.columns = {"matching",   "contests", "method", "seed",
                        "ktd",        "mtrd",     "missing"};
  out.report.config = {
      {"seeds", std::to_string(config.seeds)},
      {"num_agents", std::to_string(config.num_agents)},
      {"contest_size", std::to_string(config.contest_size)},
      {"sgd_alpha", to_cell(config.sgd_alpha)},
      {"sgd_tau", to_cell(config.sgd_tau)},
      {"sgd_iterations", std::to_string(config.sgd_iterations)},
      {"sgd_batch", std::to_string(config.sgd_batch)}};

  struct Cell {
    Matching matching;
    int contests;
  };
  std::vector<Cell> grid;
  for (Matching matching : config.matchings) {
    for (int n : config.contest_counts) grid.push_back({matching, n});
  }
  const std::vector<std::string> methods = {
      "sigmoid_sco", "fy_sco",   "elo_mm",   "copeland",
      "borda",       "plurality", "approval", "ranked_pairs"};

  struct SeedResult {
    std::vector<double> ktd;  // per method
    std::vector<double> mtrd;
    double missing = 0.0;
  };
  // results[cell][seed]
  std::vector<std::vector<SeedResult>> results(
      grid.size(), std::vector<SeedResult>(config.seeds));

  parallel_for(
      static_cast<std::int64_t>(grid.size()) * config.seeds, config.threads,
      [&](std::int64_t job) {
        const std::size_t cell_idx = job / config.seeds;
        const int seed = static_cast<int>(job % config.seeds);
        const Cell& cell = grid[cell_idx];
        TournamentConfig t;
        t.num_agents = config.num_agents;
        t.contest_size = config.contest_size;
        t.num_contests = cell.contests;
        t.matching = cell.matching;
        t.seed = static_cast<std::uint64_t>(
            (cell.matching == Matching::kSkillMatched ? 1000000 : 0) +
            cell.contests * 1000 + seed);
        const auto [profile, truth] = generate_tournament(t);

        SeedResult& res = results[cell_idx][seed];
        res.missing = missing_pair_proportion(profile);

        std::vector<MethodRun> runs;
        SgdConfig sgd;
        sgd.learning_rate = config.sgd_alpha;
        sgd.temperature = config.sgd_tau;
        sgd.batch_size = config.sgd_batch;
        sgd.iterations = config.sgd_iterations;
        sgd.seed = static_cast<std::uint64_t>(job);
        sgd.checkpoint_every = config.sgd_iterations;  // final only
        runs.push_back({"sigmoid_sco",
                        induced_ranking(fit_sgd(profile, sgd).first)});
        FyConfig fy;
        fy.learning_rate = config.fy_alpha;
        fy.epsilon = config.fy_epsilon;
        fy.batch_size = config.sgd_batch;
        fy.iterations = config.sgd_iterations;
        fy.seed = static_cast<std::uint64_t>(job);
        fy.checkpoint_every = config.sgd_iterations;
        runs.push_back({"fy_sco", induced_ranking(fit_fy(profile, fy).first)});
        const std::vector<double> elo = elo_fit_mm(profile);
        runs.push_back({"elo_mm",
                        induced_ranking(std::span<const double>(elo))});
        runs.push_back({"copeland", copeland(profile)});
        runs.push_back({"borda", borda(profile)});
        runs.push_back({"plurality", plurality(profile)});
        runs.push_back({"approval",
                        approval(profile, config.approval_threshold)});
        runs.push_back({"ranked_pairs", ranked_pairs(profile)});

        for (const MethodRun& run : runs) {
          res.ktd.push_back(static_cast<double>(
              kendall_tau(run.ranking, truth.true_ranking)));
          res.mtrd.push_back(mtrd(run.ranking, truth));
        }
      });

  for (std::size_t cell_idx = 0; cell_idx < grid.size(); ++cell_idx) {
    const Cell& cell = grid[cell_idx];
    const std::string matching_name =
        cell.matching == Matching::kUniform ? "uniform" : "skill_matched";
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      std::vector<double> ktds, mtrds;
      double missing = 0.0;
      for (int seed = 0; seed < config.seeds; ++seed) {
        const SeedResult& res = results[cell_idx][seed];
        ktds.push_back(res.ktd[mi]);
        mtrds.push_back(res.mtrd[mi]);
        missing += res.missing;
        out.report.add_row({matching_name, std::to_string(cell.contests),
                            methods[mi], std::to_string(seed),
                            to_cell(res.ktd[mi]),
                            to_cell(res.mtrd[mi]),
                            to_cell(res.missing)});
      }
      TournamentCell summary;
      summary.method = methods[mi];
      summary.matching = cell.matching;
      summary.contests = cell.contests;
      summary.mean_ktd = mean_of(ktds);
      summary.ktd_halfwidth = confidence_halfwidth(ktds);
      summary.mean_mtrd = mean_of(mtrds);
      summary.mtrd_halfwidth = confidence_halfwidth(mtrds);
      summary.mean_missing = missing / config.seeds;
      out.report.add_row({matching_name, std::to_string(cell.contests),
                          methods[mi], "mean", to_cell(summary.mean_ktd),
                          to_cell(summary.mean_mtrd),
                          to_cell(summary.mean_missing)});
      out.report.add_row({matching_name, std::to_string(cell.contests),
                          methods[mi], "ci95", to_cell(summary.ktd_halfwidth),
                          to_cell(summary.mtrd_halfwidth), "0"});
      out.cells.push_back(std::move(summary));
    }
  }
  out.report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

// ---------------------------------------------------------------------------

double ktd_test(const PreferenceProfile& test, const Ranking& ranking) {
  if (test.total_weight() == 0) return 0.0;
  double sum = 0.0;
  for (const Vote& v : test.votes()) {
    sum += static_cast<double>(v.multiplicity) *
           static_cast<double>(kendall_tau(v.order, ranking));
  }
  return sum / static_cast<double>(test.total_weight());
}

LargeEvalOutcome run_large_sparse_eval(const PreferenceProfile& dataset,
                                       const LargeEvalConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  LargeEvalOutcome out;
  out.report.experiment = "large-eval";
  out.report.columns = {"method", "split", "iteration", "ktd_test"};
  out.report.config = {
      {"splits", std::to_string(config.splits)},
      {"test_count", std::to_string(config.test_count)},
      {"sgd_alpha", to_cell(config.sgd_alpha)},
      {"sgd_tau", to_cell(config.sgd_tau)},
      {"sgd_iterations", std::to_string(config.sgd_iterations)},
      {"sgd_batch", std::to_string(config.sgd_batch)},
      {"checkpoint_every", std::to_string(config.checkpoint_every)}};

  std::vector<std::vector<KtdCurve>> per_split(config.splits);
  parallel_for(config.splits, config.threads, [&](std::int64_t split) {
    const auto [train, test] = train_test_split(
        dataset, config.test_count, config.seed + 7919 * split);

    auto curve_from_trace = [&](const std::string& name,
                                const TrainingTrace& trace) {
      KtdCurve curve;
      curve.method = name;
      curve.split = static_cast<int>(split);
      for (const Checkpoint& cp : trace.checkpoints) {
        curve.iterations.push_back(cp.iteration);
        curve.ktd_test.push_back(ktd_test(test, cp.ranking));
      }
      curve.final_ktd = curve.ktd_test.back();
      return curve;
    };

    SgdConfig sgd;
    sgd.learning_rate = config.sgd_alpha;
    sgd.temperature = config.sgd_tau;
    sgd.batch_size = config.sgd_batch;
    sgd.iterations = config.sgd_iterations;
    sgd.checkpoint_every = config.checkpoint_every;
    sgd.seed = config.seed + 104729 * split;
    sgd.record_checkpoint_loss = false;
    const auto [sr, st] = fit_sgd(train, sgd);
    per_split[split].push_back(curve_from_trace("sigmoid_sco", st));

    if (config.run_fy) {
      FyConfig fy;
      fy.learning_rate = config.fy_alpha;
      fy.epsilon = config.fy_epsilon;
      fy.batch_size = config.sgd_batch;
      fy.iterations = config.sgd_iterations;
      fy.checkpoint_every = config.checkpoint_every;
      fy.seed = config.seed + 104729 * split;
      fy.record_checkpoint_loss = false;
      const auto [fr, ft] = fit_fy(train, fy);
      per_split[split].push_back(curve_from_trace("fy_sco", ft));
    }
    if (config.run_online_elo) {
      const std::vector<double> elo = elo_play_profile(train);
      KtdCurve curve;
      curve.method = "online_elo";
      curve.split = static_cast<int>(split);
      curve.iterations.push_back(
          static_cast<std::int64_t>(train.total_weight()) - 1);
      curve.final_ktd =
          ktd_test(test, induced_ranking(std::span<const double>(elo)));
      curve.ktd_test.push_back(curve.final_ktd);
      per_split[split].push_back(std::move(curve));
    }
  });

  std::map<std::string, std::vector<std::vector<double>>> by_method;
  for (auto& split_curves : per_split) {
    for (KtdCurve& curve : split_curves) {
      for (std::size_t k = 0; k < curve.iterations.size(); ++k) {
        out.report.add_row({curve.method, std::to_string(curve.split),
                            std::to_string(curve.iterations[k]),
                            to_cell(curve.ktd_test[k])});
      }
      by_method[curve.method].push_back(curve.ktd_test);
      out.curves.push_back(std::move(curve));
    }
  }
  for (auto& [method, rows] : by_method) {
    std::vector<double> medians;
    std::vector<double> finals;
    const std::size_t len = rows.front().size();
    for (std::size_t k = 0; k < len; ++k) {
      std::vector<double> column;
      for (const auto& row : rows) {
        if (k < row.size()) column.push_back(row[k]);
      }
      std::sort(column.begin(), column.end());
      medians.push_back(column[column.size() / 2]);
    }
    for (const auto& row : rows) finals.push_back(row.back());
    out.median_curves[method] = std::move(medians);
    out.final_mean[method] = mean_of(finals);
  }
  out.report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

// ---------------------------------------------------------------------------

OnlineEvalOutcome run_online_eval(const PreferenceProfile& dataset,
                                  const OnlineEvalConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  OnlineEvalOutcome out;
  out.report.experiment = "online-eval";
  out.report.columns = {"method", "shuffle", "iteration", "ktd_test"};
  out.report.config = {{"shuffles", std::to_string(config.shuffles)},
                       {"test_count", std::to_string(config.test_count)},
                       {"checkpoints", std::to_string(config.checkpoints)}};

  struct CellKey {
    std::string name;
    double alpha = 0.0, tau = 0.0;
    bool elo = false;
  };
  std::vector<CellKey> cells;
  for (double alpha : config.alphas) {
    for (double tau : config.taus) {
      std::ostringstream name;
      name << "sco a=" << alpha << " t=" << tau;
      cells.push_back({name.str(), alpha, tau, false});
    }
  }
  cells.push_back({"elo", 0, 0, true});

  // curves[cell][shuffle][checkpoint]; checkpoint iterations are shared.
  std::vector<std::vector<std::vector<double>>> curves(
      cells.size(), std::vector<std::vector<double>>(config.shuffles));
  std::vector<std::vector<std::int64_t>> iterations(config.shuffles);

  parallel_for(
      static_cast<std::int64_t>(config.shuffles), config.threads,
      [&](std::int64_t shuffle) {
        const auto [train, test] = train_test_split(
            dataset, config.test_count, config.seed + 7919 * shuffle);
        // One pass order shared by every method in this shuffle; a vote is
        // one update, so T equals the training-set size.
        std::vector<int> order(train.votes().size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
        Rng rng(config.seed + 31337 * shuffle);
        rng.shuffle(order);
        const std::int64_t total = (std::int64_t)order.size();
        const std::int64_t cadence = std::max<std::int64_t>(
            1, total / std::max(1, config.checkpoints));

        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
          const CellKey& cellk = cells[ci];
          EloConfig elo_cfg;
          elo_cfg.k_factor = config.elo_k;
          std::vector<double> elo_ratings(train.num_alternatives(),
                                          elo_cfg.initial_rating);
          Ratings sco_ratings;
          sco_ratings.theta.assign(train.num_alternatives(), 50.0);
          for (std::int64_t t = 0; t < total; ++t) {
            const Vote& v = train.votes()[order[t]];
            if (cellk.elo) {
              for (std::size_t i = 0; i < v.order.size(); ++i) {
                for (std::size_t j = i + 1; j < v.order.size(); ++j) {
                  const auto [wi, lo] = elo_update_online(
                      elo_ratings[v.order[i]], elo_ratings[v.order[j]], 1,
                      elo_cfg.k_factor);
                  elo_ratings[v.order[i]] = wi;
                  elo_ratings[v.order[j]] = lo;
                }
              }
            } else {
              sco_ratings = update_online(std::move(sco_ratings), v,
                                          cellk.alpha, cellk.tau);
            }
            if ((t + 1) % cadence == 0 || t + 1 == total) {
              const Ranking r =
                  cellk.elo
                      ? induced_ranking(std::span<const double>(elo_ratings))
                      : induced_ranking(sco_ratings);
              curves[ci][shuffle].push_back(ktd_test(test, r));
              if (ci == 0) iterations[shuffle].push_back(t);
            }
          }
        }
      });

  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    std::vector<double> finals;
    std::vector<double> means;
    const std::size_t len = curves[ci].front().size();
    for (std::size_t k = 0; k < len; ++k) {
      double sum = 0.0;
      for (int shuffle = 0; shuffle < config.shuffles; ++shuffle) {
        sum += curves[ci][shuffle][k];
      }
      means.push_back(sum / config.shuffles);
    }
    for (int shuffle = 0; shuffle < config.shuffles; ++shuffle) {
      for (std::size_t k = 0; k < curves[ci][shuffle].size(); ++k) {
        out.report.add_row({cells[ci].name, std::to_string(shuffle),
                            std::to_string(iterations[shuffle][k]),
                            to_cell(curves[ci][shuffle][k])});
      }
      finals.push_back(curves[ci][shuffle].back());
    }
    out.final_mean[cells[ci].name] = mean_of(finals);
    out.mean_curves[cells[ci].name] = std::move(means);
  }
  out.report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

}  // namespace sco
