#pragma once

// A small primal-dual interior-point solver for block-diagonal SDPs over
// complex Hermitian cones (HKM direction, Mehrotra predictor-corrector).
// Only the two program shapes of the sweep are ever built on top of it.

#include <string>
#include <vector>

#include "gsa/common.hpp"

namespace gsa::ipm {

/// min sum_l <C_l, X_l>  s.t.  sum_l <A_{i,l}, X_l> = b_i,  X_l >= 0,
/// with <A, B> = Re tr(A B) on Hermitian matrices. Size-one blocks act as
/// nonnegative scalars.
struct Problem {
  std::vector<Eigen::Index> block_sizes;
  std::vector<MatC> objective;  // one per block; zero matrices allowed

  struct Constraint {
    std::vector<std::pair<int, MatC>> terms;  // (block index, coefficient)
    double rhs = 0.0;
  };
  std::vector<Constraint> constraints;
};

struct Options {
  double tol_gap = 1e-10;
  double tol_feas = 1e-10;
  int max_iterations = 200;
  double step_fraction = 0.95;
};

struct Solution {
  std::vector<MatC> x;
  std::vector<double> y;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;               // |pobj - dobj| / (1 + |pobj| + |dobj|)
  double primal_residual = 0.0;   // ||b - A(X)|| / (1 + ||b||)
  double dual_residual = 0.0;
  int iterations = 0;
  std::string status;             // optimal | stalled | max_iterations
};

Solution solve(const Problem& problem, const Options& options = {});

}  // namespace gsa::ipm
