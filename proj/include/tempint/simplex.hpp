#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace tempint::lp {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// minimize c^T y  subject to  G y <= h,  y free.
///
/// Intended for tall problems (many rows, few variables), such as discrete
/// Chebyshev fits. The solver works on the dual standard form
///
///   minimize h^T l  subject to  G^T l = -c,  l >= 0
///
/// whose basis has only as many columns as y has entries, so each iteration
/// refactorizes a small dense matrix and prices every row of G once.
struct InequalityLp {
  RowMatrix G;
  Eigen::VectorXd h;
  Eigen::VectorXd c;
};

enum class LpStatus {
  optimal,
  infeasible,               // G y <= h has no solution
  unbounded_or_infeasible,  // dual infeasible: objective unbounded below, or no solution
  iteration_limit,
};

struct LpOptions {
  int max_iterations{20000};
  /// A row of G y <= h counts as satisfied when violated by at most this.
  double optimality_tol{1e-12};
  double pivot_tol{1e-10};
  /// Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_limit{40};
  /// Relative lift applied to the basic variables before phase 2; 0 disables.
  double perturbation{1e-8};
};

struct LpSolution {
  LpStatus status{LpStatus::iteration_limit};
  Eigen::VectorXd y;
  double objective{0.0};
  int iterations{0};
  /// Rows of G forming the final basis (the active constraints at y).
  std::vector<Eigen::Index> basis;
};

/// Solves the problem. A start basis names up to y.size() distinct rows; it
/// is padded with phase-1 artificials and used if the resulting dual point is
/// feasible. `warm_basis` is tried first, then `crash_basis`, then the
/// all-artificial start. Deterministic: identical inputs give identical outputs.
LpSolution solve(const InequalityLp& problem, const LpOptions& options = {},
                 std::span<const Eigen::Index> warm_basis = {}, std::span<const Eigen::Index> crash_basis = {});

}  // namespace tempint::lp
