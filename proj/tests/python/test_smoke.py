"""Smoke tests for the python bindings."""

import math
import unittest

import sco


class ProfileTest(unittest.TestCase):
    def test_build_and_matrices(self):
        profile = sco.build_profile(
            [([0, 1, 2], 1), ([0, 2, 1], 1), ([2, 0, 1], 2), ([1, 2, 0], 1)]
        )
        self.assertEqual(profile.num_alternatives, 3)
        self.assertEqual(profile.total_weight, 5)
        counts = sco.preference_matrix(profile)
        self.assertEqual(counts.count(0, 1), 4)
        self.assertEqual(counts.count(2, 0), 3)
        margins = sco.margin_matrix(counts)
        strong, weak = sco.condorcet_winner(margins)
        self.assertEqual(strong, 2)
        self.assertEqual(weak, [2])

    def test_duplicate_ids_rejected(self):
        with self.assertRaises(ValueError):
            sco.build_profile([([0, 0, 1], 1)])


class MetricsTest(unittest.TestCase):
    def test_kendall_tau(self):
        self.assertEqual(sco.kendall_tau([0, 1, 2], [2, 0, 1]), 2)
        self.assertAlmostEqual(
            sco.normalized_kendall_tau([0, 1, 2], [2, 0, 1]), 2.0 / 3.0
        )

    def test_kemeny(self):
        profile = sco.example_profile_table1()
        ranking, distance = sco.kemeny_optimal(profile)
        self.assertEqual(ranking, [2, 0, 1])
        self.assertEqual(distance, 5)


class TrainingTest(unittest.TestCase):
    def test_fit_sgd_converges_on_eq10(self):
        profile = sco.example_profile_eq10()
        cfg = sco.SgdConfig()
        cfg.learning_rate = 0.1
        cfg.temperature = 0.5
        cfg.batch_size = 0
        cfg.iterations = 200
        cfg.convergence_target = [2, 0, 1]
        ratings, trace = sco.fit_sgd(profile, cfg)
        self.assertEqual(sco.induced_ranking(ratings.theta), [2, 0, 1])
        self.assertIsNotNone(trace.converged_at)
        self.assertLessEqual(abs(trace.converged_at - 28), 2)

    def test_fy_top_ranks_a(self):
        profile = sco.example_profile_eq10()
        cfg = sco.FyConfig()
        cfg.learning_rate = 0.1
        cfg.iterations = 3000
        cfg.batch_size = 0
        cfg.mc_samples = 8
        ratings, _ = sco.fit_fy(profile, cfg)
        self.assertEqual(sco.induced_ranking(ratings.theta)[0], 0)

    def test_elo(self):
        self.assertAlmostEqual(sco.elo_predict(1900, 1500), 10.0 / 11.0)
        ratings = sco.elo_fit_mm(sco.example_profile_eq10())
        self.assertGreater(ratings[0], ratings[2])


class VotingTest(unittest.TestCase):
    def test_rules(self):
        profile = sco.example_profile_eq10()
        self.assertEqual(sco.borda(profile)[0], 0)
        self.assertEqual(sco.plurality(profile)[0], 2)
        self.assertEqual(sco.copeland(profile)[0], 2)
        self.assertEqual(sco.ranked_pairs(profile), [2, 0, 1])


class DataTest(unittest.TestCase):
    def test_preflib_round_trip(self):
        profile = sco.example_profile_table1()
        text = sco.serialize_preflib(profile)
        self.assertEqual(sco.parse_preflib(text), profile)

    def test_tournament(self):
        cfg = sco.TournamentConfig()
        cfg.num_contests = 25
        cfg.seed = 3
        profile, truth = sco.generate_tournament(cfg)
        self.assertEqual(profile.total_weight, 25)
        self.assertEqual(len(truth.true_ratings), 20)
        self.assertLessEqual(sco.missing_pair_proportion(profile), 1.0)


class SigmoidalProgramTest(unittest.TestCase):
    def test_solve_eq10(self):
        program = sco.build_program(sco.example_profile_eq10())
        result = sco.solve_branch_and_bound(program)
        self.assertTrue(result.certified)
        self.assertEqual(result.induced, [2, 0, 1])


if __name__ == "__main__":
    unittest.main()
