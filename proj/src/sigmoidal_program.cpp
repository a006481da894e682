#include "sco/sigmoidal_program.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace sco {

int SigmoidalProgram::variable_index(int a, int b) const {
  // Ordered pairs enumerated a-major with the diagonal skipped.
  const int m = num_alternatives;
  return a * (m - 1) + (b < a ? b : b - 1);
}

SigmoidalProgram build_program(const PreferenceProfile& profile, double tau,
                               double theta_min, double theta_max) {
  const int m = profile.num_alternatives();
  if (m < 2) {
    throw std::invalid_argument("build_program: need at least 2 alternatives");
  }
  SigmoidalProgram p;
  p.num_alternatives = m;
  p.tau = tau;
  p.theta_min = theta_min;
  p.theta_max = theta_max;
  p.upper = theta_max - theta_min;
  p.lower = -p.upper;

  const PairwiseCounts counts = preference_matrix(profile, /*sparse=*/false);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (a == b) continue;
      p.variables.emplace_back(a, b);
      p.weights.push_back(static_cast<double>(counts.count(a, b)));
    }
  }
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      SigmoidalProgram::Constraint c;
      c.coefficients = {{p.variable_index(a, b), 1.0},
                        {p.variable_index(b, a), 1.0}};
      p.antisymmetry.push_back(std::move(c));
    }
  }
  // Index-ordered triples generate all orientations together with
  // antisymmetry.
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      for (int c = b + 1; c < m; ++c) {
        SigmoidalProgram::Constraint t;
        t.coefficients = {{p.variable_index(a, b), 1.0},
                          {p.variable_index(b, c), 1.0},
                          {p.variable_index(a, c), -1.0}};
        p.transitivity.push_back(std::move(t));
      }
    }
  }
  return p;
}

std::string export_program(const SigmoidalProgram& p) {
  std::ostringstream out;
  out << "sigmoidal-program m=" << p.num_alternatives << " tau=" << p.tau
      << " lower=" << p.lower << " upper=" << p.upper << "\n";
  auto var_name = [&](int idx) {
    const auto [a, b] = p.variables[idx];
    std::ostringstream s;
    s << "x(" << a << "," << b << ")";
    return s.str();
  };
  for (std::size_t i = 0; i < p.variables.size(); ++i) {
    out << "var " << var_name((int)i) << " weight " << p.weights[i] << "\n";
  }
  auto emit = [&](const char* kind, const SigmoidalProgram::Constraint& c) {
    out << kind << " ";
    for (std::size_t k = 0; k < c.coefficients.size(); ++k) {
      const auto [idx, coeff] = c.coefficients[k];
      if (k > 0) out << (coeff >= 0 ? " + " : " - ");
      else if (coeff < 0) out << "-";
      out << var_name(idx);
    }
    out << " = " << c.rhs << "\n";
  };
  for (const auto& c : p.antisymmetry) emit("antisymmetry", c);
  for (const auto& c : p.transitivity) emit("transitivity", c);
  return out.str();
}

namespace {

// Canonical monotone sigmoidal piece f(x) = offset - w * sigma(x / tau) on
// an interval, with w > 0 (decreasing) handled directly and the increasing
// case by reflection. The convex envelope is the tangent line from the left
// endpoint to the convex part, or the chord when no tangency exists.
struct Term {
  int i = -1;       // d = y_i - y_j; index m-1 stands for the constant 0
  int j = -1;
  double offset = 0.0;
  double w = 0.0;      // magnitude of the sigmoid coefficient
  bool reflected = false;  // true: f(d) = offset - w * sigma(-d / tau)
  double tau = 1.0;

  double canon(double d) const { return reflected ? -d : d; }

  double value(double d) const {
    return offset - w * soft_discrepancy(-canon(d), 0.0, tau);
  }

  // derivative with respect to d
  double deriv(double d) const {
    const double s = soft_discrepancy(-canon(d), 0.0, tau);
    const double g = -w * s * (1.0 - s) / tau;
    return reflected ? -g : g;
  }
};

struct Envelope {
  // On [lo, knee] the envelope is the line f(lo) + slope * (x - lo); on
  // [knee, hi] it is the function itself. All in canonical coordinates.
  double lo = 0.0, hi = 0.0;
  double knee = 0.0;
  double slope = 0.0;
  double value_lo = 0.0;
  const Term* term = nullptr;

  double value(double d) const {
    const double x = term->canon(d);
    if (x <= knee) return value_lo + slope * (x - lo);
    return term->offset -
           term->w * soft_discrepancy(-x, 0.0, term->tau);
  }

  double deriv(double d) const {
    const double x = term->canon(d);
    double g;
    if (x <= knee) {
      g = slope;
    } else {
      const double s = soft_discrepancy(-x, 0.0, term->tau);
      g = -term->w * s * (1.0 - s) / term->tau;
    }
    return term->reflected ? -g : g;
  }
};

double canonical_value(const Term& t, double x) {
  return t.offset - t.w * soft_discrepancy(-x, 0.0, t.tau);
}

double canonical_deriv(const Term& t, double x) {
  const double s = soft_discrepancy(-x, 0.0, t.tau);
  return -t.w * s * (1.0 - s) / t.tau;
}

Envelope make_envelope(const Term& t, double d_lo, double d_hi) {
  Envelope e;
  e.term = &t;
  // Canonical interval.
  e.lo = t.reflected ? -d_hi : d_lo;
  e.hi = t.reflected ? -d_lo : d_hi;
  e.value_lo = canonical_value(t, e.lo);
  if (t.w == 0.0 || e.hi <= e.lo) {
    e.knee = e.lo;
    e.slope = 0.0;
    return e;
  }
  if (e.lo >= 0.0) {
    // Entirely in the convex region: envelope is the function.
    e.knee = e.lo;
    e.slope = canonical_deriv(t, e.lo);
    return e;
  }
  const double chord_slope =
      (canonical_value(t, e.hi) - e.value_lo) / (e.hi - e.lo);
  if (e.hi <= 0.0) {
    // Entirely concave: envelope is the chord.
    e.knee = e.hi;
    e.slope = chord_slope;
    return e;
  }
  // Tangency test at the right endpoint: if the tangent at hi passes above
  // (lo, f(lo)) the chord is the envelope, otherwise bisect for the tangent
  // point in [0, hi].
  auto h = [&](double x) {
    return canonical_value(t, x) + canonical_deriv(t, x) * (e.lo - x) -
           e.value_lo;
  };
  if (h(e.hi) >= 0.0) {
    e.knee = e.hi;
    e.slope = chord_slope;
    return e;
  }
  double a = 0.0, b = e.hi;
  // h(0) >= 0 (concavity on [lo,0]) and h(hi) < 0.
  for (int it = 0; it < 200 && b - a > 1e-12 * (1.0 + b); ++it) {
    const double mid = 0.5 * (a + b);
    if (h(mid) >= 0.0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  // Keep the h >= 0 side so the line piece cannot poke above the function.
  e.knee = a;
  e.slope = canonical_deriv(t, e.knee);
  return e;
}

struct Node {
  std::vector<double> lo, hi;  // box over the m-1 free differences
  std::vector<double> start;   // warm start for the convex solve
  double bound = 0.0;
  std::int64_t id = 0;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
    return a.id < b.id;  // newest first on plateaus, keeps the frontier deep
  }
};

struct Reduced {
  int dim = 0;  // m-1 free variables; index dim is the fixed reference 0
  std::vector<Term> terms;
  double box_lo = 0.0, box_hi = 0.0;

  double diff(const std::vector<double>& y, int i, int j) const {
    const double yi = i == dim ? 0.0 : y[i];
    const double yj = j == dim ? 0.0 : y[j];
    return yi - yj;
  }

  double objective(const std::vector<double>& y) const {
    double f = 0.0;
    for (const Term& t : terms) f += t.value(diff(y, t.i, t.j));
    return f;
  }

  void gradient(const std::vector<double>& y, std::vector<double>& g) const {
    g.assign(dim, 0.0);
    for (const Term& t : terms) {
      const double d = t.deriv(diff(y, t.i, t.j));
      if (t.i != dim) g[t.i] += d;
      if (t.j != dim) g[t.j] -= d;
    }
  }
};

Reduced reduce(const SigmoidalProgram& p) {
  Reduced r;
  const int m = p.num_alternatives;
  r.dim = m - 1;
  r.box_lo = p.lower;
  r.box_hi = p.upper;
  const double tau = p.tau;
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      const double wp = p.weights[p.variable_index(a, b)];
      const double wn = p.weights[p.variable_index(b, a)];
      if (wp == 0.0 && wn == 0.0) continue;
      Term t;
      t.i = a;
      t.j = b;
      t.tau = tau;
      const double delta = wp - wn;
      // wp*sigma(-d/tau) + wn*sigma(d/tau) = wp - delta*sigma(d/tau).
      if (delta >= 0.0) {
        t.offset = wp;
        t.w = delta;
        t.reflected = false;
      } else {
        // = wn - (-delta) * sigma(-d/tau)
        t.offset = wn;
        t.w = -delta;
        t.reflected = true;
      }
      r.terms.push_back(t);
    }
  }
  return r;
}

// Minimizes the (convex) envelope sum over the node box by projected
// gradient descent with backtracking, then returns a rigorous lower bound
// via the first-order corner correction.
struct ConvexSolve {
  std::vector<double> y;
  double envelope_value = 0.0;
  double bound = 0.0;
};

ConvexSolve minimize_envelopes(const Reduced& r,
                               const std::vector<Envelope>& envs,
                               const Node& node) {
  const int dim = r.dim;
  auto env_value = [&](const std::vector<double>& y) {
    double f = 0.0;
    for (const Envelope& e : envs) f += e.value(r.diff(y, e.term->i, e.term->j));
    return f;
  };
  auto env_grad = [&](const std::vector<double>& y, std::vector<double>& g) {
    g.assign(dim, 0.0);
    for (const Envelope& e : envs) {
      const double d = e.deriv(r.diff(y, e.term->i, e.term->j));
      if (e.term->i != dim) g[e.term->i] += d;
      if (e.term->j != dim) g[e.term->j] -= d;
    }
  };

  std::vector<double> y = node.start;
  for (int i = 0; i < dim; ++i) {
    y[i] = std::clamp(y[i], node.lo[i], node.hi[i]);
  }
  double fy = env_value(y);
  std::vector<double> g(dim), trial(dim);
  double step = 1.0;
  for (int it = 0; it < 400; ++it) {
    env_grad(y, g);
    double moved = 0.0;
    bool improved = false;
    for (int ls = 0; ls < 40; ++ls) {
      for (int i = 0; i < dim; ++i) {
        trial[i] = std::clamp(y[i] - step * g[i], node.lo[i], node.hi[i]);
      }
      const double ft = env_value(trial);
      if (ft < fy - 1e-15 * (1.0 + std::abs(fy))) {
        moved = 0.0;
        for (int i = 0; i < dim; ++i) {
          moved = std::max(moved, std::abs(trial[i] - y[i]));
        }
        y = trial;
        fy = ft;
        improved = true;
        step *= 1.3;
        break;
      }
      step *= 0.5;
      if (step < 1e-14) break;
    }
    if (!improved || moved < 1e-12) break;
  }

  // E is convex, so E(z) >= E(y) + g.(z - y) >= E(y) + sum_i min over the
  // box edge. Early stopping of the descent therefore cannot over-prune.
  env_grad(y, g);
  double correction = 0.0;
  for (int i = 0; i < dim; ++i) {
    correction +=
        std::min(g[i] * (node.lo[i] - y[i]), g[i] * (node.hi[i] - y[i]));
  }
  ConvexSolve out;
  out.y = std::move(y);
  out.envelope_value = fy;
  out.bound = fy + correction;
  return out;
}

}  // namespace

BnbResult solve_branch_and_bound(const SigmoidalProgram& program,
                                 const BnbConfig& config) {
  const int m = program.num_alternatives;
  if (m > config.max_alternatives) {
    throw std::invalid_argument(
        "solve_branch_and_bound: profile exceeds the scale guard (m = " +
        std::to_string(m) + ", max " + std::to_string(config.max_alternatives) +
        ")");
  }
  const Reduced r = reduce(program);
  const int dim = r.dim;

  std::vector<double> best_y(dim, 0.0);
  double incumbent = r.objective(best_y);
  std::int64_t next_id = 0;

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  Node root;
  root.lo.assign(dim, r.box_lo);
  root.hi.assign(dim, r.box_hi);
  root.start.assign(dim, 0.0);
  root.bound = -std::numeric_limits<double>::infinity();
  root.id = next_id++;
  open.push(std::move(root));

  std::int64_t nodes = 0;
  // Minimum bound over nodes discarded along the way; together with the
  // heap minimum this floors the global optimum.
  double pruned_floor = std::numeric_limits<double>::infinity();
  double stop_bound = std::numeric_limits<double>::quiet_NaN();
  std::vector<Envelope> envs(r.terms.size());

  while (!open.empty() && nodes < config.max_iterations) {
    Node node = open.top();
    open.pop();
    if (incumbent - node.bound <= config.tolerance) {
      // Best-first order: every other open node has an equal or higher
      // bound, so the incumbent is certified.
      stop_bound = node.bound;
      break;
    }
    ++nodes;

    // Interval propagation for each pairwise difference, then envelopes.
    for (std::size_t k = 0; k < r.terms.size(); ++k) {
      const Term& t = r.terms[k];
      const double lo_i = t.i == dim ? 0.0 : node.lo[t.i];
      const double hi_i = t.i == dim ? 0.0 : node.hi[t.i];
      const double lo_j = t.j == dim ? 0.0 : node.lo[t.j];
      const double hi_j = t.j == dim ? 0.0 : node.hi[t.j];
      envs[k] = make_envelope(t, lo_i - hi_j, hi_i - lo_j);
    }
    ConvexSolve solved = minimize_envelopes(r, envs, node);

    // Incumbent candidates: the relaxation minimizer and a short local
    // polish of the true objective from it.
    double true_value = r.objective(solved.y);
    if (true_value < incumbent) {
      incumbent = true_value;
      best_y = solved.y;
    }
    {
      std::vector<double> y = solved.y;
      std::vector<double> g(dim), trial(dim);
      double fy = true_value;
      double step = 1.0;
      for (int it = 0; it < 120; ++it) {
        r.gradient(y, g);
        bool improved = false;
        for (int ls = 0; ls < 30; ++ls) {
          for (int i = 0; i < dim; ++i) {
            trial[i] = std::clamp(y[i] - step * g[i], node.lo[i], node.hi[i]);
          }
          const double ft = r.objective(trial);
          if (ft < fy - 1e-15 * (1.0 + std::abs(fy))) {
            y = trial;
            fy = ft;
            improved = true;
            step *= 1.3;
            break;
          }
          step *= 0.5;
          if (step < 1e-13) break;
        }
        if (!improved) break;
      }
      if (fy < incumbent) {
        incumbent = fy;
        best_y = y;
      }
    }
    if (solved.bound >= incumbent - config.tolerance) {
      pruned_floor = std::min(pruned_floor, solved.bound);
      continue;  // nothing better in this box
    }

    // Branch on the variable with the largest envelope gap at the node
    // minimizer.
    std::vector<double> gap(dim, 0.0);
    for (std::size_t k = 0; k < r.terms.size(); ++k) {
      const Term& t = r.terms[k];
      const double d = r.diff(solved.y, t.i, t.j);
      const double g = t.value(d) - envs[k].value(d);
      if (t.i != dim) gap[t.i] += g;
      if (t.j != dim) gap[t.j] += g;
    }
    int branch = 0;
    for (int i = 1; i < dim; ++i) {
      if (gap[i] > gap[branch] + 1e-15 ||
          (gap[i] > gap[branch] - 1e-15 &&
           node.hi[i] - node.lo[i] > node.hi[branch] - node.lo[branch])) {
        branch = i;
      }
    }
    const double width = node.hi[branch] - node.lo[branch];
    if (width < 1e-12) {  // box fully resolved
      pruned_floor = std::min(pruned_floor, solved.bound);
      continue;
    }
    const double split =
        std::clamp(solved.y[branch], node.lo[branch] + 0.4 * width,
                   node.hi[branch] - 0.4 * width);

    Node left = node;
    left.hi[branch] = split;
    left.start = solved.y;
    left.bound = solved.bound;
    left.id = next_id++;
    Node right = std::move(node);
    right.lo[branch] = split;
    right.start = solved.y;
    right.bound = solved.bound;
    right.id = next_id++;
    open.push(std::move(left));
    open.push(std::move(right));
  }

  double floor = pruned_floor;
  if (!std::isnan(stop_bound)) floor = std::min(floor, stop_bound);
  if (!open.empty()) floor = std::min(floor, open.top().bound);
  if (std::isinf(floor)) floor = incumbent;  // nothing was ever outstanding

  BnbResult result;
  result.objective = incumbent;
  result.gap = std::max(0.0, incumbent - floor);
  result.certified = result.gap <= config.tolerance;
  result.nodes = nodes;
  // Expand the reduced solution into every ordered-pair variable.
  result.x.assign(program.variables.size(), 0.0);
  auto y_of = [&](int a) { return a == dim ? 0.0 : best_y[a]; };
  for (std::size_t k = 0; k < program.variables.size(); ++k) {
    const auto [a, b] = program.variables[k];
    result.x[k] = y_of(a) - y_of(b);
  }
  std::vector<double> full(m, 0.0);
  for (int a = 0; a < m; ++a) full[a] = y_of(a);
  result.induced = induced_ranking(std::span<const double>(full));
  return result;
}

Ratings recover_ratings(const SigmoidalProgram& program,
                        const std::vector<double>& x, double tolerance) {
  if (x.size() != program.variables.size()) {
    throw std::invalid_argument("recover_ratings: assignment size mismatch");
  }
  auto residual = [&](const SigmoidalProgram::Constraint& c) {
    double r = -c.rhs;
    for (const auto& [idx, coeff] : c.coefficients) r += coeff * x[idx];
    return std::abs(r);
  };
  double worst = 0.0;
  for (const auto& c : program.antisymmetry) worst = std::max(worst, residual(c));
  for (const auto& c : program.transitivity) worst = std::max(worst, residual(c));
  if (worst > 10.0 * tolerance) {
    throw std::invalid_argument(
        "recover_ratings: constraint residual " + std::to_string(worst) +
        " exceeds 10x tolerance");
  }
  const int m = program.num_alternatives;
  const double mid = 0.5 * (program.theta_min + program.theta_max);
  Ratings ratings;
  ratings.theta_min = program.theta_min;
  ratings.theta_max = program.theta_max;
  ratings.theta.assign(m, mid);
  for (int a = 0; a + 1 < m; ++a) {
    ratings.theta[a] = mid + x[program.variable_index(a, m - 1)];
  }
  return project(std::move(ratings));
}

}  // namespace sco
