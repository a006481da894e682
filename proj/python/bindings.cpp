#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sco/baselines.hpp"
#include "sco/data.hpp"
#include "sco/fenchel_young.hpp"
#include "sco/harness.hpp"
#include "sco/metrics.hpp"
#include "sco/posterior.hpp"
#include "sco/sigmoidal_program.hpp"

namespace py = pybind11;
using namespace sco;

namespace {

PreferenceProfile profile_from_pairs(
    const std::vector<std::pair<std::vector<int>, std::int64_t>>& votes,
    int num_alternatives) {
  std::vector<Vote> converted;
  converted.reserve(votes.size());
  for (const auto& [order, mult] : votes) converted.push_back({order, mult});
  return build_profile(std::move(converted), num_alternatives);
}

}  // namespace

PYBIND11_MODULE(_sco, m) {
  m.doc() = "Soft Condorcet Optimization rating toolkit";

  py::class_<Vote>(m, "Vote")
      .def(py::init([](std::vector<int> order, std::int64_t multiplicity) {
             return Vote{std::move(order), multiplicity};
           }),
           py::arg("order"), py::arg("multiplicity") = 1)
      .def_readonly("order", &Vote::order)
      .def_readonly("multiplicity", &Vote::multiplicity);

  py::class_<PreferenceProfile>(m, "PreferenceProfile")
      .def_property_readonly("num_alternatives",
                             &PreferenceProfile::num_alternatives)
      .def_property_readonly("total_weight", &PreferenceProfile::total_weight)
      .def_property_readonly("votes",
                             [](const PreferenceProfile& p) {
                               std::vector<std::pair<std::vector<int>,
                                                     std::int64_t>> out;
                               for (const Vote& v : p.votes()) {
                                 out.emplace_back(v.order, v.multiplicity);
                               }
                               return out;
                             })
      .def_property_readonly("names", &PreferenceProfile::names)
      .def("__eq__", [](const PreferenceProfile& a,
                        const PreferenceProfile& b) { return a == b; });

  m.def("build_profile", &profile_from_pairs, py::arg("votes"),
        py::arg("num_alternatives") = 0,
        "Build a profile from (order, multiplicity) pairs");

  py::class_<PairwiseCounts>(m, "PairwiseCounts")
      .def_property_readonly("size", &PairwiseCounts::size)
      .def("count", &PairwiseCounts::count)
      .def("to_list", [](const PairwiseCounts& c) {
        std::vector<std::vector<std::int64_t>> out(
            c.size(), std::vector<std::int64_t>(c.size(), 0));
        c.for_each_nonzero([&](int a, int b, std::int64_t w) {
          out[a][b] = w;
        });
        return out;
      });

  py::class_<MarginMatrix>(m, "MarginMatrix")
      .def_property_readonly("size", &MarginMatrix::size)
      .def("margin", &MarginMatrix::margin);

  m.def("preference_matrix",
        py::overload_cast<const PreferenceProfile&>(&preference_matrix));
  m.def("margin_matrix", &margin_matrix);
  m.def("condorcet_winner", [](const MarginMatrix& margins) {
    const CondorcetResult r = condorcet_winner(margins);
    return py::make_tuple(r.strong, r.weak);
  });

  m.def("kendall_tau", [](const std::vector<int>& v,
                          const std::vector<int>& r) {
    return kendall_tau(v, r);
  });
  m.def("normalized_kendall_tau",
        [](const std::vector<int>& v, const std::vector<int>& r) {
          return normalized_kendall_tau(v, r);
        });
  m.def("profile_distance", &profile_distance);
  m.def("kemeny_score", &kemeny_score);
  m.def("kemeny_optimal",
        [](const PreferenceProfile& p, int max_m) {
          const KemenyResult r = kemeny_optimal(p, max_m);
          return py::make_tuple(r.ranking, r.distance);
        },
        py::arg("profile"), py::arg("max_m") = 10);
  m.def("kemeny_optimal_all", &kemeny_optimal_all, py::arg("profile"),
        py::arg("max_m") = 10);
  m.def("condorcet_match", &condorcet_match);

  py::class_<Ratings>(m, "Ratings")
      .def(py::init([](std::vector<double> theta, double lo, double hi) {
             return Ratings{std::move(theta), lo, hi};
           }),
           py::arg("theta"), py::arg("theta_min") = 0.0,
           py::arg("theta_max") = 100.0)
      .def_readwrite("theta", &Ratings::theta)
      .def_readwrite("theta_min", &Ratings::theta_min)
      .def_readwrite("theta_max", &Ratings::theta_max);

  py::class_<SgdConfig>(m, "SgdConfig")
      .def(py::init<>())
      .def_readwrite("learning_rate", &SgdConfig::learning_rate)
      .def_readwrite("temperature", &SgdConfig::temperature)
      .def_readwrite("batch_size", &SgdConfig::batch_size)
      .def_readwrite("iterations", &SgdConfig::iterations)
      .def_readwrite("seed", &SgdConfig::seed)
      .def_readwrite("theta_min", &SgdConfig::theta_min)
      .def_readwrite("theta_max", &SgdConfig::theta_max)
      .def_readwrite("checkpoint_every", &SgdConfig::checkpoint_every)
      .def_readwrite("convergence_target", &SgdConfig::convergence_target);

  py::class_<Checkpoint>(m, "Checkpoint")
      .def_readonly("iteration", &Checkpoint::iteration)
      .def_readonly("loss", &Checkpoint::loss)
      .def_readonly("ranking", &Checkpoint::ranking);

  py::class_<TrainingTrace>(m, "TrainingTrace")
      .def_readonly("checkpoints", &TrainingTrace::checkpoints)
      .def_readonly("converged_at", &TrainingTrace::converged_at);

  m.def("soft_discrepancy", &soft_discrepancy);
  m.def("sigmoid_loss",
        [](const PreferenceProfile& p, const Ratings& r, double tau) {
          return sigmoid_loss(p, r, tau);
        });
  m.def("sigmoid_loss_gradient",
        [](const PreferenceProfile& p, const Ratings& r, double tau) {
          return sigmoid_loss_gradient(p.votes(), r, tau);
        });
  m.def("project", &project);
  m.def("induced_ranking",
        [](const std::vector<double>& theta) {
          return induced_ranking(std::span<const double>(theta));
        });
  m.def("fit_sgd", &fit_sgd);
  m.def("update_online", &update_online);

  py::class_<FyConfig>(m, "FyConfig")
      .def(py::init<>())
      .def_readwrite("epsilon", &FyConfig::epsilon)
      .def_readwrite("mc_samples", &FyConfig::mc_samples)
      .def_readwrite("learning_rate", &FyConfig::learning_rate)
      .def_readwrite("iterations", &FyConfig::iterations)
      .def_readwrite("batch_size", &FyConfig::batch_size)
      .def_readwrite("seed", &FyConfig::seed);

  m.def("hard_ranks", [](const std::vector<double>& values) {
    return hard_ranks(values);
  });
  m.def("perturbed_ranks",
        [](const std::vector<double>& values, double epsilon, int samples,
           std::uint64_t seed) {
          Rng rng(seed);
          return perturbed_ranks(values, epsilon, samples, rng);
        },
        py::arg("values"), py::arg("epsilon") = 1.0,
        py::arg("mc_samples") = 1000, py::arg("seed") = 0);
  m.def("fit_fy", &fit_fy);

  py::class_<EloConfig>(m, "EloConfig")
      .def(py::init<>())
      .def_readwrite("k_factor", &EloConfig::k_factor)
      .def_readwrite("initial_rating", &EloConfig::initial_rating)
      .def_readwrite("scale", &EloConfig::scale);

  m.def("elo_predict", &elo_predict, py::arg("rating_i"), py::arg("rating_j"),
        py::arg("scale") = 400.0);
  m.def("elo_update_online", &elo_update_online, py::arg("rating_i"),
        py::arg("rating_j"), py::arg("outcome"), py::arg("k_factor") = 32.0);
  m.def("elo_fit_mm", &elo_fit_mm, py::arg("profile"),
        py::arg("iterations") = 1000, py::arg("prior_pseudocount") = 0.1,
        py::arg("config") = EloConfig{});

  m.def("copeland", &copeland);
  m.def("borda", &borda);
  m.def("plurality", &plurality);
  m.def("approval", &approval, py::arg("profile"),
        py::arg("threshold_fraction") = 0.5);
  m.def("ranked_pairs", &ranked_pairs);

  m.def("parse_preflib",
        [](const std::string& text) { return parse_preflib(text); });
  m.def("serialize_preflib", &serialize_preflib);

  py::enum_<Matching>(m, "Matching")
      .value("UNIFORM", Matching::kUniform)
      .value("SKILL_MATCHED", Matching::kSkillMatched);

  py::class_<TournamentConfig>(m, "TournamentConfig")
      .def(py::init<>())
      .def_readwrite("num_agents", &TournamentConfig::num_agents)
      .def_readwrite("contest_size", &TournamentConfig::contest_size)
      .def_readwrite("num_contests", &TournamentConfig::num_contests)
      .def_readwrite("skill_mean", &TournamentConfig::skill_mean)
      .def_readwrite("skill_stddev", &TournamentConfig::skill_stddev)
      .def_readwrite("performance_noise_stddev",
                     &TournamentConfig::performance_noise_stddev)
      .def_readwrite("matching", &TournamentConfig::matching)
      .def_readwrite("seed", &TournamentConfig::seed);

  py::class_<GroundTruth>(m, "GroundTruth")
      .def_readonly("true_ratings", &GroundTruth::true_ratings)
      .def_readonly("true_ranking", &GroundTruth::true_ranking);

  m.def("generate_tournament", &generate_tournament);
  m.def("missing_pair_proportion", &missing_pair_proportion);
  m.def("train_test_split", &train_test_split, py::arg("profile"),
        py::arg("test_count"), py::arg("seed"), py::arg("max_retries") = 1000);
  m.def("mtrd", &mtrd);

  py::class_<SigmoidalProgram>(m, "SigmoidalProgram")
      .def_readonly("num_alternatives", &SigmoidalProgram::num_alternatives)
      .def_readonly("tau", &SigmoidalProgram::tau)
      .def_readonly("variables", &SigmoidalProgram::variables)
      .def_readonly("weights", &SigmoidalProgram::weights);

  py::class_<BnbConfig>(m, "BnbConfig")
      .def(py::init<>())
      .def_readwrite("tolerance", &BnbConfig::tolerance)
      .def_readwrite("max_iterations", &BnbConfig::max_iterations)
      .def_readwrite("max_alternatives", &BnbConfig::max_alternatives);

  py::class_<BnbResult>(m, "BnbResult")
      .def_readonly("x", &BnbResult::x)
      .def_readonly("objective", &BnbResult::objective)
      .def_readonly("gap", &BnbResult::gap)
      .def_readonly("certified", &BnbResult::certified)
      .def_readonly("nodes", &BnbResult::nodes)
      .def_readonly("induced", &BnbResult::induced);

  m.def("build_program", &build_program, py::arg("profile"),
        py::arg("tau") = 1.0, py::arg("theta_min") = 0.0,
        py::arg("theta_max") = 100.0);
  m.def("export_program", &export_program);
  m.def("solve_branch_and_bound", &solve_branch_and_bound,
        py::arg("program"), py::arg("config") = BnbConfig{});
  m.def("recover_ratings", &recover_ratings, py::arg("program"), py::arg("x"),
        py::arg("tolerance") = 1e-4);

  py::class_<PosteriorConfig>(m, "PosteriorConfig")
      .def(py::init<>())
      .def_readwrite("burn_in_iterations",
                     &PosteriorConfig::burn_in_iterations)
      .def_readwrite("sampling_iterations",
                     &PosteriorConfig::sampling_iterations)
      .def_readwrite("sampling_step_size",
                     &PosteriorConfig::sampling_step_size)
      .def_readwrite("thinning", &PosteriorConfig::thinning)
      .def_readwrite("seed", &PosteriorConfig::seed);

  py::class_<RankingDistribution>(m, "RankingDistribution")
      .def_readonly("support", &RankingDistribution::support)
      .def_readonly("total", &RankingDistribution::total)
      .def_readonly("step_size", &RankingDistribution::step_size)
      .def_readonly("boundary_contact", &RankingDistribution::boundary_contact)
      .def("mode", &RankingDistribution::mode)
      .def("probability", &RankingDistribution::probability);

  m.def("sample_posterior", &sample_posterior);
  m.def("pairwise_uncertainty", &pairwise_uncertainty);
  m.def("distribution_to_csv", &distribution_to_csv);

  m.def("example_profile_table1", &example_profile_table1);
  m.def("example_profile_eq10", &example_profile_eq10);
}
