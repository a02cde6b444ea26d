#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "tempint/grid.hpp"
#include "tempint/oracle.hpp"
#include "tempint/rational.hpp"
#include "tempint/simplex.hpp"

namespace tempint {

enum class Weighting {
  absolute,  // |h - p/q| <= u
  relative,  // |h - p/q| <= u h, i.e. |g_n/g - 1| <= u
};

std::string_view to_string(Weighting w);
/// Throws DomainError for anything but "absolute" or "relative".
Weighting parse_weighting(std::string_view text);

/// Grid points with their oracle targets h(m, x).
struct FitGrid {
  GridSpec spec;
  std::vector<EvalPoint> points;
  std::vector<double> targets;

  /// Evaluates the oracle at every point of `spec`.
  static FitGrid build(const GridSpec& spec, const OracleConfig& oracle = {});
  /// Uses caller-supplied targets; they must be finite and positive.
  static FitGrid from_targets(const GridSpec& spec, std::vector<EvalPoint> points, std::vector<double> targets);
};

struct FitProblem {
  int degree{1};
  FitGrid grid;
  Weighting weighting{Weighting::absolute};
  double denom_floor{1.0};
  /// Stop once u_plus - u_minus <= max(bisection_abs_tol, bisection_rel_tol * u_plus).
  double bisection_rel_tol{1e-4};
  double bisection_abs_tol{1e-12};
  int max_bisections{60};
  /// Largest normalized row violation, as a fraction of u, still counted as feasible.
  double feasibility_tol{1e-9};
  OracleConfig oracle{};

  void validate() const;
};

/// Linear inequalities rows * z <= rhs in the coefficient vector
/// z = (a_00, a_10, a_01, ..., b_00, b_10, b_01, ...) of p and q written in
/// the local variables of `frame`. For grid point k the rows 3k, 3k+1, 3k+2 are
///   p - h q - u w q <= 0,   -p + h q - u w q <= 0,   -q <= -delta.
struct FeasibilitySystem {
  int degree{0};
  double level{0.0};
  AffineFrame frame{};
  lp::RowMatrix rows;
  Eigen::VectorXd rhs;

  Eigen::Index variable_count() const { return rows.cols(); }
};

/// With the identity frame p = a_00 + a_10 x + a_01 m + ...; bisect_fit uses
/// the frame spanning the grid, which keeps the LP well conditioned.
FeasibilitySystem build_feasibility(const FitProblem& problem, double u, const AffineFrame& frame = {});

struct FeasibilityVerdict {
  bool feasible{false};
  /// Coefficients (a then b) of the minimizer; meaningful when feasible.
  std::vector<double> coefficients;
  /// Largest row violation of `coefficients`; negative when strictly feasible.
  double max_violation{0.0};
  int lp_iterations{0};
  std::vector<Eigen::Index> basis;
};

/// Thrown when the LP hits its iteration cap; distinct from infeasibility.
class LpIterationLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Max-margin LP: minimize t, in units of u, subject to every equilibrated row
/// being violated by at most t and the mean floor row q/delta being at most 1.
/// The verdict comes from the violation the returned coefficients actually
/// achieve on the unscaled rows: feasible iff it is <= feasibility_tol * u.
FeasibilityVerdict check_feasible(const FeasibilitySystem& system, double feasibility_tol = 1e-9,
                                  std::span<const Eigen::Index> warm_basis = {});

struct BisectionStep {
  double u_minus{0.0};
  double u_plus{0.0};
  double u{0.0};
  bool feasible{false};
  int lp_iterations{0};
};

struct VerificationReport {
  int fine_factor{1};
  std::size_t points{0};
  /// max |g_n/g - 1| over the verification grid.
  double max_rel_dev{0.0};
  /// max deviation in the fit's own weighting metric.
  double max_mode_dev{0.0};
  double denom_min{0.0};
  EvalPoint argmax{};
  /// Points whose mode deviation lies within 1% of the maximum.
  std::size_t near_extremal{0};
};

struct FitResult {
  RationalApproximant approximant;
  int degree{0};
  Weighting weighting{Weighting::absolute};
  GridSpec grid;
  OracleConfig oracle{};
  double u_minus{0.0};
  double u_plus{0.0};
  int iterations{0};
  bool converged{false};
  /// Verification on the fit grid and on the 4x finer grid.
  VerificationReport fit_check;
  VerificationReport fine_check;
  bool pole_warning{false};
  std::vector<BisectionStep> trace;

  /// max |eps| on the fit grid.
  double achieved_dev() const { return fit_check.max_rel_dev; }
  double denom_min() const { return fine_check.denom_min; }
};

/// Bisection on the deviation level u with an LP feasibility test per level.
FitResult bisect_fit(const FitProblem& problem);

/// Re-evaluates the fitted approximant against the oracle on the fit grid
/// refined `fine_factor` times in each axis.
VerificationReport verify_fit(const FitResult& result, int fine_factor);

/// Maps a raw coefficient vector in `frame` variables to an approximant in
/// plain x and m, dividing by |b_00| when |b_00| >= 1e-3 and otherwise by the
/// largest-magnitude b coefficient.
RationalApproximant normalized_approximant(int degree, std::span<const double> coefficients,
                                           const AffineFrame& frame = {});

/// Sidecar report, one "key value" per line.
std::string fit_report_text(const FitResult& result);

}  // namespace tempint
