#ifndef COCONVEX_SOLVER_HPP
#define COCONVEX_SOLVER_HPP

#include <optional>
#include <vector>

#include "coconvex/coconvex_set.hpp"
#include "coconvex/report.hpp"

namespace coconvex {

// Which representative the solver reports.
enum class OutputForm {
  // Scaled solution when p != n, normalized pair at p = n.
  Auto,
  // Scaled solution; throws PEqualsN at p = n.
  Scaled,
  // Normalized pair (A_0 with V_n = 1, constant c) for any p.
  Normalized,
};

struct SolverOptions {
  int max_iterations = 10000;
  double gradient_tolerance = 1e-8;
  // Relative stall threshold on the objective; stationarity is declared
  // after eight consecutive accepted steps below it.
  double objective_tolerance = 1e-15;
  // Initial support vector; all ones when empty. A second canned
  // initializer (all tens) is used by the uniqueness tests.
  std::vector<double> initial_support;
  double line_search_shrink = 0.5;
  double sufficient_decrease = 1e-4;
  // converged additionally requires residual <= this bound.
  double residual_tolerance = 1e-6;
  OutputForm output_form = OutputForm::Auto;
};

struct SolveResult {
  CCoconvexSet solution;
  // Normalization constant of the stationarity relation
  // mu = c * S_{n-1,p}(A_0, .) taken at the V_n = 1 representative.
  double c = 0.0;
  // Objective value per accepted iterate; monotone up to line-search
  // tolerance (nondecreasing for p > 0 and log, nonincreasing for p < 0).
  std::vector<double> objective_trace;
  // Max relative atom mismatch of the audited measure relation.
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  // True when `solution` is the normalized representative (V_n = 1 for the
  // L_p problem) and the audited relation is mu = c * measure(solution).
  bool normalized = false;
  double p = 0.0;
  bool is_log = false;
};

// Objective V_n(A_s)^{-p/n} * sum_i mu_i * s_i^p evaluated at the attained
// support vector of the Wulff shape of s. Maximized for p > 0, minimized
// for p < 0. Throws ZeroP, EmptyMeasure, ZeroVolume.
double lp_objective(const Cone& cone, const DirectionSet& omega, const std::vector<double>& s,
                    const DiscreteMeasure& mu, double p);

// Solves the discrete L_p Minkowski problem S_{n-1,p}(A, .) = mu for p != 0
// by projected ascent in log-support coordinates, with snap-to-attained
// support after every iterate. Budget exhaustion returns the best iterate
// with converged = false.
SolveResult solve_lp_minkowski(const Cone& cone, const DiscreteMeasure& mu, double p,
                               const SolverOptions& options = {});

// Solves the log Minkowski problem: cone volume measure of A equals mu.
// The stationary point is rescaled in closed form so that the total cone
// volume matches |mu|.
SolveResult solve_log_minkowski(const Cone& cone, const DiscreteMeasure& mu,
                                const SolverOptions& options = {});

// Recomputes the achieved measure of the reported solution from scratch
// geometry and compares it with the target, atom by atom. left = max
// relative atom mismatch, right = tolerance.
CheckReport verify_solution(const SolveResult& result, const DiscreteMeasure& mu,
                            double tolerance = 1e-5);

}  // namespace coconvex

#endif
