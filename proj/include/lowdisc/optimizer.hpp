#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lowdisc/pointset.hpp"

namespace lowdisc {

/// Minimax placement problem for a fixed permutation (2D) or permutation pair
/// (3D): minimize the largest open/closed box violation over sorted coordinate
/// families with pairwise gaps >= epsilon.
struct OptimizationProblem {
  int n = 0;
  int dim = 2;
  Permutation perm;      // dim == 2
  Permutation3D perm3;   // dim == 3
  CountTable counts;     // dim == 2
  CountTable3D counts3;  // dim == 3
  double epsilon = 1e-6;
  std::vector<double> init_x;  // optional; empty selects midpoint start
  std::vector<double> init_y;
  std::vector<double> init_z;

  void validate() const;
};

struct SolverConfig {
  double time_limit = 60.0;
  int max_outer_iterations = 10000;
  double improvement_tolerance = 1e-12;
  int restarts = 4;
  double perturbation_scale = 0.25;
  std::uint64_t seed = 1;

  void validate() const;
};

enum class SolveStatus { converged, time_limit, iteration_limit };

const char* to_string(SolveStatus s);

struct OptimizationResult {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> z;  // empty in 2D
  double f = 0.0;
  double exact = 0.0;
  int iterations = 0;
  int restarts_used = 0;
  SolveStatus status = SolveStatus::converged;
  std::vector<double> trace;  // best objective after each outer iteration
  double wall_time_seconds = 0.0;
};

/// Largest constraint value of the placement model: closed terms
/// C(i,j)/n - x_i*y_j over i,j = 1..n and open terms x_i*y_j - C(i-1,j-1)/n
/// over i,j = 1..n+1 with the dummy value 1, clamped below at zero.
double evaluate_model_f(const std::vector<double>& x, const std::vector<double>& y,
                        const CountTable& counts);

/// 3D variant with triple products x_i*y_j*z_k.
double evaluate_model_f(const std::vector<double>& x, const std::vector<double>& y,
                        const std::vector<double>& z, const CountTable3D& counts);

/// Exact single-block solve: minimizes the model objective over one coordinate
/// family while the others stay fixed. Every constraint row bounds a single
/// free value, so for a trial objective the feasible set is an interval chain;
/// the optimum is located by monotone bisection and is exact to double
/// precision. `axis` is 0, 1, or 2; pass the current free family as warm start.
struct BlockSolve {
  std::vector<double> values;
  double f = 0.0;
};
BlockSolve solve_block_lp(int axis, const std::vector<double>& free_warm,
                          const std::vector<double>& fixed1,
                          const std::vector<double>& fixed2,
                          const OptimizationProblem& prob);

/// Block-coordinate descent with seeded perturbation restarts. The trace is
/// the best objective seen so far after each outer iteration, so it is
/// non-increasing across restarts as well.
OptimizationResult optimize(const OptimizationProblem& prob, const SolverConfig& cfg);

/// Extracts permutation(s) and counts from a generating set; when
/// use_coords_as_init is set the sorted coordinates, projected to epsilon
/// feasibility, seed the first descent.
OptimizationProblem build_problem(const PointSet& ps, double epsilon,
                                  bool use_coords_as_init);

/// Problem over an explicit 2D permutation with midpoint initialization.
OptimizationProblem build_problem(const Permutation& p, double epsilon);

/// Problem over an explicit permutation pair with midpoint initialization.
OptimizationProblem build_problem(const Permutation3D& p, double epsilon);

}  // namespace lowdisc
