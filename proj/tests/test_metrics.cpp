#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sco/harness.hpp"
#include "sco/metrics.hpp"
#include "test_util.hpp"

using namespace sco;

TEST_CASE("kendall tau basics") {
  const std::vector<int> v{0, 1, 2};   // A > B > C
  const std::vector<int> r{2, 0, 1};   // C > A > B
  CHECK(kendall_tau(v, r) == 2);
  CHECK(kendall_tau(r, r) == 0);
  const std::vector<int> four{0, 1, 2, 3};
  const std::vector<int> rev{3, 2, 1, 0};
  CHECK(kendall_tau(four, rev) == 6);
}

TEST_CASE("kendall tau subset form") {
  const std::vector<int> vote{5, 1};
  const std::vector<int> ranking{0, 1, 2, 3, 4, 5};
  CHECK(kendall_tau(vote, ranking) == 1);
  CHECK(kendall_tau(std::vector<int>{1, 5}, ranking) == 0);
}

TEST_CASE("kendall tau missing element") {
  CHECK_THROWS_AS(
      kendall_tau(std::vector<int>{0, 7}, std::vector<int>{0, 1, 2}),
      std::invalid_argument);
}

TEST_CASE("normalized kendall tau") {
  const std::vector<int> v{0, 1, 2};
  const std::vector<int> r{2, 0, 1};
  CHECK(normalized_kendall_tau(v, r) == doctest::Approx(2.0 / 3.0));
  CHECK(normalized_kendall_tau(v, v) == 0.0);
  const std::vector<int> five{0, 1, 2, 3, 4};
  const std::vector<int> rev{4, 3, 2, 1, 0};
  CHECK(normalized_kendall_tau(five, rev) == 1.0);
  CHECK(normalized_kendall_tau(std::vector<int>{3},
                               std::vector<int>{3, 1}) == 0.0);
}

TEST_CASE("kendall tau is a metric on same-set permutations") {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 2 + rng.index(7);
    Ranking a = identity_ranking(m), b = identity_ranking(m),
            c = identity_ranking(m);
    rng.shuffle(a);
    rng.shuffle(b);
    rng.shuffle(c);
    const auto dab = kendall_tau(a, b);
    const auto dba = kendall_tau(b, a);
    const auto dac = kendall_tau(a, c);
    const auto dcb = kendall_tau(c, b);
    CHECK(dab == dba);
    CHECK((dab == 0) == (a == b));
    CHECK(dab <= dac + dcb);
  }
}

TEST_CASE("profile distance on table 1") {
  const PreferenceProfile p = example_profile_table1();
  CHECK(profile_distance(p, {2, 0, 1}) == 5);  // C > A > B
  // A > B > C: per-vote distances 0, 1, 2+2, 2 (also 15 - kemeny_score = 7).
  CHECK(profile_distance(p, {0, 1, 2}) == 7);
  CHECK(profile_distance(build_profile({}, 3), {0, 1, 2}) == 0);
}

TEST_CASE("kemeny score and the score-distance identity") {
  const PreferenceProfile p = example_profile_table1();
  CHECK(kemeny_score(p, {2, 0, 1}) == 10);
  CHECK(kemeny_score(build_profile({}, 3), {0, 1, 2}) == 0);
  Ranking perm = identity_ranking(3);
  do {
    CHECK(kemeny_score(p, perm) + profile_distance(p, perm) == 15);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("score maximization and distance minimization agree") {
  Rng rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 3 + rng.index(3);
    const PreferenceProfile p =
        testutil::random_profile(rng, m, 3 + rng.index(20), true);
    Ranking perm = identity_ranking(m);
    std::int64_t best_score = -1, best_dist = 0;
    std::int64_t min_dist = profile_distance(p, perm);
    do {
      const std::int64_t s = kemeny_score(p, perm);
      const std::int64_t d = profile_distance(p, perm);
      min_dist = std::min(min_dist, d);
      if (s > best_score) {
        best_score = s;
        best_dist = d;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(best_dist == min_dist);
  }
}

TEST_CASE("kemeny optimal on the worked examples") {
  const KemenyResult t1 = kemeny_optimal(example_profile_table1());
  CHECK(t1.ranking == Ranking{2, 0, 1});
  CHECK(t1.distance == 5);
  const KemenyResult e10 = kemeny_optimal(example_profile_eq10());
  CHECK(e10.ranking == Ranking{2, 0, 1});
  const PreferenceProfile single = build_profile({{{3, 1, 0, 2}, 1}});
  const KemenyResult s = kemeny_optimal(single);
  CHECK(s.ranking == Ranking{3, 1, 0, 2});
  CHECK(s.distance == 0);
}

TEST_CASE("kemeny optimal guards on m") {
  Rng rng(23);
  const PreferenceProfile p = testutil::random_profile(rng, 11, 5);
  CHECK_THROWS_AS(kemeny_optimal(p), std::invalid_argument);
  CHECK_NOTHROW(kemeny_optimal(p, 11));
}

TEST_CASE("kemeny optimal matches brute-force enumeration") {
  Rng rng(24);
  for (int trial = 0; trial < 25; ++trial) {
    const int m = 2 + rng.index(6);  // up to 7
    const PreferenceProfile p =
        testutil::random_profile(rng, m, 1 + rng.index(25), true);
    const auto [oracle_ranking, oracle_dist] =
        testutil::kemeny_brute_force(p);
    const KemenyResult got = kemeny_optimal(p);
    CHECK(got.distance == oracle_dist);
    CHECK(got.ranking == oracle_ranking);  // both lexicographically smallest
    CHECK(kemeny_optimal_all(p) == testutil::kemeny_brute_force_all(p));
  }
}

TEST_CASE("kemeny top-ranks strong Condorcet winners") {
  Rng rng(25);
  for (int trial = 0; trial < 25; ++trial) {
    const PreferenceProfile p = testutil::random_profile_with_winner(
        rng, 3 + rng.index(4), 5 + rng.index(20));
    const auto winner =
        condorcet_winner(margin_matrix(preference_matrix(p))).strong;
    CHECK(kemeny_optimal(p).ranking.front() == *winner);
  }
}

TEST_CASE("condorcet match") {
  const PreferenceProfile t1 = example_profile_table1();
  CHECK(condorcet_match({2, 0, 1}, t1) == std::optional<bool>(true));
  CHECK(condorcet_match({0, 2, 1}, t1) == std::optional<bool>(false));
  const PreferenceProfile cyclic =
      build_profile({{{0, 1, 2}, 1}, {{1, 2, 0}, 1}, {{2, 0, 1}, 1}});
  CHECK(!condorcet_match({0, 1, 2}, cyclic).has_value());
}
