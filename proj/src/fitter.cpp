#include "tempint/fitter.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "tempint/errors.hpp"
#include "tempint/parallel.hpp"

namespace tempint {

namespace {

// Ratio between the mean denominator and its floor in the scaled LP.
constexpr double kFloorScale = 1e4;
// Lower bound on t, in units of the level.
constexpr double kMarginCap = 1e3;

}  // namespace

std::string_view to_string(Weighting w) { return w == Weighting::absolute ? "absolute" : "relative"; }

Weighting parse_weighting(std::string_view text) {
  if (text == "absolute") return Weighting::absolute;
  if (text == "relative") return Weighting::relative;
  throw DomainError(fmt::format("unknown weighting mode '{}' (expected absolute or relative)", text));
}

FitGrid FitGrid::build(const GridSpec& spec, const OracleConfig& oracle) {
  spec.validate();
  oracle.validate();
  auto points = spec.points();
  std::vector<double> targets(points.size());
  parallel_for(points.size(), [&](std::size_t k) { targets[k] = h(points[k], oracle); });
  return from_targets(spec, std::move(points), std::move(targets));
}

FitGrid FitGrid::from_targets(const GridSpec& spec, std::vector<EvalPoint> points, std::vector<double> targets) {
  if (points.empty()) throw DomainError("fit grid has no points");
  if (points.size() != targets.size()) throw DomainError("fit grid targets do not match its points");
  for (std::size_t k = 0; k < targets.size(); ++k) {
    if (!std::isfinite(targets[k]) || !(targets[k] > 0.0)) {
      throw DomainError(fmt::format("target h at (m={}, x={}) is not finite and positive: {}", points[k].m,
                                    points[k].x, targets[k]));
    }
  }
  return FitGrid{spec, std::move(points), std::move(targets)};
}

void FitProblem::validate() const {
  if (degree < 0) throw DomainError(fmt::format("degree must be >= 0, got {}", degree));
  if (grid.points.empty()) throw DomainError("fit grid has no points");
  if (!(denom_floor > 0.0)) throw DomainError("denominator floor must be positive");
  if (!(bisection_rel_tol > 0.0) || !(bisection_abs_tol > 0.0)) throw DomainError("bisection tolerance must be positive");
  if (max_bisections < 1) throw DomainError("max_bisections must be >= 1");
  if (!(feasibility_tol > 0.0)) throw DomainError("feasibility tolerance must be positive");
  oracle.validate();
}

FeasibilitySystem build_feasibility(const FitProblem& problem, double u, const AffineFrame& frame) {
  if (!(u >= 0.0)) throw DomainError(fmt::format("deviation level must be >= 0, got {}", u));
  const auto terms = static_cast<Eigen::Index>(BivariatePoly::term_count(problem.degree));
  const auto n_points = static_cast<Eigen::Index>(problem.grid.points.size());

  FeasibilitySystem sys;
  sys.degree = problem.degree;
  sys.level = u;
  sys.frame = frame;
  sys.rows = lp::RowMatrix::Zero(3 * n_points, 2 * terms);
  sys.rhs = Eigen::VectorXd::Zero(3 * n_points);

  std::vector<double> mono(static_cast<std::size_t>(terms));
  for (Eigen::Index k = 0; k < n_points; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    BivariatePoly::monomials(problem.degree, frame.to_local(problem.grid.points[idx]), mono);
    const double target = problem.grid.targets[idx];
    const double weight = problem.weighting == Weighting::absolute ? 1.0 : target;
    const double upper = target + u * weight;
    const double lower = target - u * weight;
    for (Eigen::Index t = 0; t < terms; ++t) {
      const double v = mono[static_cast<std::size_t>(t)];
      sys.rows(3 * k, t) = v;
      sys.rows(3 * k, terms + t) = -upper * v;
      sys.rows(3 * k + 1, t) = -v;
      sys.rows(3 * k + 1, terms + t) = lower * v;
      sys.rows(3 * k + 2, terms + t) = -v;
    }
    sys.rhs(3 * k + 2) = -problem.denom_floor;
  }
  return sys;
}

FeasibilityVerdict check_feasible(const FeasibilitySystem& system, double feasibility_tol,
                                  std::span<const Eigen::Index> warm_basis) {
  const Eigen::Index rows = system.rows.rows();
  const Eigen::Index vars = system.rows.cols();

  // Column equilibration turns the x^i m^j columns into O(1) scale; row
  // equilibration makes t a violation measured in units of each row's size.
  Eigen::VectorXd col_scale(vars);
  for (Eigen::Index c = 0; c < vars; ++c) {
    const double norm = system.rows.col(c).lpNorm<Eigen::Infinity>();
    col_scale(c) = norm > 0.0 ? 1.0 / norm : 1.0;
  }

  // The system is homogeneous apart from the right-hand sides, so any
  // feasible point can be scaled up. Shrinking the right-hand sides by
  // kFloorScale and capping the mean of q over the grid keeps the LP bounded
  // with t free: a strictly feasible level then has t* < 0 at a vertex
  // instead of a whole face of optima at t* = 0.
  // t is measured in units of the level, so the tolerance is relative to u.
  const double unit = system.level > 0.0 ? system.level : 1.0;
  lp::InequalityLp lp;
  lp.G = lp::RowMatrix::Zero(rows + 2, vars + 1);
  lp.h = Eigen::VectorXd::Zero(rows + 2);
  Eigen::RowVectorXd q_mean = Eigen::RowVectorXd::Zero(vars);
  Eigen::Index floors = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    auto row = lp.G.row(r).head(vars);
    row = system.rows.row(r).cwiseProduct(col_scale.transpose());
    const double norm = row.lpNorm<Eigen::Infinity>();
    const double s = norm > 0.0 ? 1.0 / norm : 1.0;
    if (system.rhs(r) != 0.0) {
      q_mean -= row / std::abs(system.rhs(r));
      ++floors;
    }
    row *= s;
    lp.G(r, vars) = -unit;
    lp.h(r) = s * system.rhs(r) / kFloorScale;
  }
  lp.G.row(rows).head(vars) = q_mean / static_cast<double>(std::max<Eigen::Index>(floors, 1));
  lp.h(rows) = 1.0;
  // t >= -kMarginCap. Never binding in practice (fit-row margins are below
  // u times the row scale), but on its own it is a feasible dual basis, so
  // the solver needs no phase 1. If it does bind, the level is still
  // strictly feasible.
  lp.G(rows + 1, vars) = -1.0;
  lp.h(rows + 1) = kMarginCap;
  const std::array<Eigen::Index, 1> crash{rows + 1};
  lp.c = Eigen::VectorXd::Unit(vars + 1, vars);

  const auto solution = lp::solve(lp, {}, warm_basis, crash);
  if (solution.status == lp::LpStatus::iteration_limit) {
    throw LpIterationLimit(fmt::format("feasibility LP at u={} exceeded {} simplex iterations", system.level,
                                       solution.iterations));
  }
  if (solution.status != lp::LpStatus::optimal) {
    throw std::runtime_error(fmt::format("feasibility LP at u={} reported no optimum", system.level));
  }

  // The verdict rests on the coefficients actually returned, not on the
  // solver's t: for high degrees the basis solve can leave y slightly off
  // its active rows.
  const Eigen::VectorXd z = solution.y.head(vars);
  const double achieved = (lp.G.topRows(rows).leftCols(vars) * z - lp.h.head(rows)).maxCoeff() / unit;
  FeasibilityVerdict verdict;
  verdict.max_violation = unit * achieved;
  verdict.feasible = achieved <= feasibility_tol;
  verdict.lp_iterations = solution.iterations;
  verdict.basis = solution.basis;
  verdict.coefficients.resize(static_cast<std::size_t>(vars));
  for (Eigen::Index c = 0; c < vars; ++c) {
    verdict.coefficients[static_cast<std::size_t>(c)] = kFloorScale * col_scale(c) * solution.y(c);
  }
  return verdict;
}

RationalApproximant normalized_approximant(int degree, std::span<const double> coefficients,
                                           const AffineFrame& frame) {
  const std::size_t terms = BivariatePoly::term_count(degree);
  if (coefficients.size() != 2 * terms) throw std::invalid_argument("coefficient vector has wrong length");
  const auto head = coefficients.begin();
  const auto p = to_global(BivariatePoly(degree, std::vector<double>(head, head + static_cast<std::ptrdiff_t>(terms))), frame);
  const auto q = to_global(BivariatePoly(degree, std::vector<double>(head + static_cast<std::ptrdiff_t>(terms), coefficients.end())), frame);
  const auto b = q.coeffs();
  double scale = std::abs(b[0]);
  if (scale < 1e-3) {
    scale = 0.0;
    for (double v : b) scale = std::max(scale, std::abs(v));
  }
  if (scale == 0.0) throw std::invalid_argument("denominator coefficients are all zero");
  return RationalApproximant(p.scaled(1.0 / scale), q.scaled(1.0 / scale));
}

namespace {

VerificationReport verify_on(const RationalApproximant& r, Weighting weighting, const GridSpec& spec,
                             const OracleConfig& oracle, int factor) {
  const auto points = spec.points();
  std::vector<double> targets(points.size());
  parallel_for(points.size(), [&](std::size_t k) { targets[k] = h(points[k], oracle); });

  VerificationReport report;
  report.fine_factor = factor;
  report.points = points.size();
  report.denom_min = std::numeric_limits<double>::infinity();
  std::vector<double> mode_dev(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double q = r.denom()(points[k]);
    const double ratio = r.numer()(points[k]) / q;
    const double rel = std::abs(ratio / targets[k] - 1.0);
    mode_dev[k] = weighting == Weighting::absolute ? std::abs(targets[k] - ratio) : rel;
    report.denom_min = std::min(report.denom_min, q);
    if (rel > report.max_rel_dev || std::isnan(rel)) {
      report.max_rel_dev = std::isnan(rel) ? std::numeric_limits<double>::infinity() : rel;
      report.argmax = points[k];
    }
    report.max_mode_dev = std::max(report.max_mode_dev, mode_dev[k]);
  }
  report.near_extremal = static_cast<std::size_t>(std::count_if(
      mode_dev.begin(), mode_dev.end(), [&](double d) { return d >= 0.99 * report.max_mode_dev; }));
  return report;
}

}  // namespace

VerificationReport verify_fit(const FitResult& result, int fine_factor) {
  if (fine_factor < 1) throw DomainError(fmt::format("fine_factor must be >= 1, got {}", fine_factor));
  return verify_on(result.approximant, result.weighting, result.grid.refined(fine_factor), result.oracle,
                   fine_factor);
}

FitResult bisect_fit(const FitProblem& problem) {
  problem.validate();
  const std::size_t terms = BivariatePoly::term_count(problem.degree);

  double u_minus = 0.0;
  double u_plus = 1.0;
  if (problem.weighting == Weighting::absolute) {
    u_plus = *std::max_element(problem.grid.targets.begin(), problem.grid.targets.end());
  }
  // p = 0, q = delta satisfies every row at the initial u_plus.
  std::vector<double> best(2 * terms, 0.0);
  best[terms] = problem.denom_floor;

  const auto& spec = problem.grid.spec;
  const auto frame = AffineFrame::spanning(spec.x.lo, spec.x.hi, spec.m.lo, spec.m.hi);
  std::vector<BisectionStep> trace;
  std::vector<Eigen::Index> warm;
  bool converged = false;
  int iterations = 0;
  auto width_ok = [&] {
    return u_plus - u_minus <= std::max(problem.bisection_abs_tol, problem.bisection_rel_tol * u_plus);
  };
  while (!(converged = width_ok()) && iterations < problem.max_bisections) {
    const double u = 0.5 * (u_minus + u_plus);
    const auto verdict = check_feasible(build_feasibility(problem, u, frame), problem.feasibility_tol, warm);
    warm = verdict.basis;
    ++iterations;
    if (verdict.feasible) {
      u_plus = u;
      best = verdict.coefficients;
    } else {
      u_minus = u;
    }
    trace.push_back({u_minus, u_plus, u, verdict.feasible, verdict.lp_iterations});
  }

  FitResult result{.approximant = normalized_approximant(problem.degree, best, frame),
                   .degree = problem.degree,
                   .weighting = problem.weighting,
                   .grid = problem.grid.spec,
                   .oracle = problem.oracle,
                   .u_minus = u_minus,
                   .u_plus = u_plus,
                   .iterations = iterations,
                   .converged = converged,
                   .fit_check = {},
                   .fine_check = {},
                   .pole_warning = false,
                   .trace = std::move(trace)};
  result.fit_check = verify_fit(result, 1);
  result.fine_check = verify_fit(result, 4);
  result.pole_warning = !(result.fine_check.denom_min > 0.0);
  return result;
}

std::string fit_report_text(const FitResult& r) {
  return fmt::format(
      "u_minus {:.17g}\n"
      "u_plus {:.17g}\n"
      "iterations {}\n"
      "converged {}\n"
      "achieved_dev {:.17g}\n"
      "mode_dev {:.17g}\n"
      "fine_dev {:.17g}\n"
      "fine_mode_dev {:.17g}\n"
      "denom_min {:.17g}\n"
      "near_extremal {}\n"
      "pole_warning {}\n"
      "mode {}\n"
      "degree {}\n"
      "grid {}\n",
      r.u_minus, r.u_plus, r.iterations, r.converged, r.fit_check.max_rel_dev, r.fit_check.max_mode_dev,
      r.fine_check.max_rel_dev, r.fine_check.max_mode_dev, r.fine_check.denom_min, r.fit_check.near_extremal,
      r.pole_warning, to_string(r.weighting), r.degree, r.grid.to_string());
}

}  // namespace tempint
