#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sco/profile.hpp"
#include "sco/sgd.hpp"

namespace sco {

// The Appendix-B style program: one variable per ordered pair (a,b)
// representing theta_a - theta_b, box bounds +-(theta_max - theta_min),
// antisymmetry and transitivity equality constraints, and a per-variable
// objective weight N(a,b) applied to the tau-temperature logistic of the
// negated variable.
struct SigmoidalProgram {
  struct Constraint {
    std::vector<std::pair<int, double>> coefficients;  // (variable, coeff)
    double rhs = 0.0;
  };

  int num_alternatives = 0;
  double tau = 1.0;
  double theta_min = 0.0;
  double theta_max = 100.0;
  double lower = 0.0;  // per-variable bounds
  double upper = 0.0;
  std::vector<std::pair<int, int>> variables;  // ordered pairs (a, b)
  std::vector<double> weights;                 // N(a, b) per variable
  std::vector<Constraint> antisymmetry;        // x_ab + x_ba = 0
  std::vector<Constraint> transitivity;        // x_ab + x_bc - x_ac = 0

  int variable_index(int a, int b) const;
};

SigmoidalProgram build_program(const PreferenceProfile& profile,
                               double tau = 1.0, double theta_min = 0.0,
                               double theta_max = 100.0);

// Plain-text listing of variables, bounds, constraints and objective weights
// (debugging aid; format documented in the README).
std::string export_program(const SigmoidalProgram& program);

struct BnbConfig {
  double tolerance = 1e-4;
  std::int64_t max_iterations = 200000;  // node budget
  int max_alternatives = 8;              // scale guard
};

struct BnbResult {
  std::vector<double> x;  // assignment for every ordered-pair variable
  double objective = 0.0;
  double gap = 0.0;        // incumbent minus best outstanding bound
  bool certified = false;  // gap <= tolerance at termination
  std::int64_t nodes = 0;
  Ranking induced;  // ranking from the solution differences (pre-projection)
};

// Global minimization by branch-and-bound on the reduced free differences
// x_{a,m-1}. Sigmoidal terms are lower-bounded by their convex envelopes
// (tangent-line construction); nodes are explored best-bound-first and the
// branch variable is the one with the largest envelope gap at the node
// minimizer. Deterministic.
BnbResult solve_branch_and_bound(const SigmoidalProgram& program,
                                 const BnbConfig& config = {});

// theta_{m-1} at the box midpoint, theta_a = midpoint + x_{a,m-1}, clipped
// into [theta_min, theta_max]. Throws when the assignment violates the
// equality constraints by more than 10x tolerance.
Ratings recover_ratings(const SigmoidalProgram& program,
                        const std::vector<double>& x,
                        double tolerance = 1e-4);

}  // namespace sco
