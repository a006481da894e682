#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sco/profile.hpp"

namespace sco {

struct EloConfig {
  double k_factor = 32.0;
  double initial_rating = 1500.0;
  double scale = 400.0;  // base-10 logistic scale
};

// Predicted probability that i beats j: 1 / (1 + 10^((rj - ri)/scale)).
double elo_predict(double rating_i, double rating_j, double scale = 400.0);

// One online update after i vs j with outcome 1 (i won) or 0. Rating sum is
// conserved.
std::pair<double, double> elo_update_online(double rating_i, double rating_j,
                                            int outcome,
                                            double k_factor = 32.0);

// Plays through every vote in profile order, decomposing a length-L vote
// into its C(L,2) win/loss pairs in (i<j) position order.
std::vector<double> elo_play_profile(const PreferenceProfile& profile,
                                     const EloConfig& config = {});

// Bradley-Terry log-likelihood of strengths gamma given pairwise win counts,
// including the virtual prior games against a fixed reference opponent of
// strength 1.
double bt_log_likelihood(const PairwiseCounts& counts,
                         const std::vector<double>& gamma,
                         double prior_pseudocount);

// One minorization-maximization sweep: gamma_i <- W_i / sum_j n_ij /
// (gamma_i + gamma_j), all components updated from the old iterate.
std::vector<double> elo_mm_step(const PairwiseCounts& counts,
                                const std::vector<double>& gamma,
                                double prior_pseudocount);

// Batch Elo fit: MM iterations on the Bradley-Terry model until the maximum
// relative strength change drops below 1e-10 (or the budget runs out), then
// conversion r = scale * log10(gamma) centered at initial_rating.
std::vector<double> elo_fit_mm(const PreferenceProfile& profile,
                               int iterations = 1000,
                               double prior_pseudocount = 0.1,
                               const EloConfig& config = {});

// Voting rules. All return a full ranking, descending score with ascending
// index tie-break.
Ranking copeland(const PreferenceProfile& profile);
Ranking borda(const PreferenceProfile& profile);
Ranking plurality(const PreferenceProfile& profile);
// Each vote approves its top ceil(threshold_fraction * |v|) alternatives.
Ranking approval(const PreferenceProfile& profile,
                 double threshold_fraction = 0.5);
// Tideman's ranked pairs: lock pairs by descending margin (ties by
// descending N(a,b), then pair index) unless a cycle would form; output the
// topological order of the locked digraph.
Ranking ranked_pairs(const PreferenceProfile& profile);

}  // namespace sco
