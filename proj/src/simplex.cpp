#include "tempint/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tempint::lp {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Revised simplex over the dual standard form. Columns 0..M-1 are the dual
// variables l_j (column sign-adjusted row j of G); columns M..M+n-1 are
// phase-1 artificials.
class DualSimplex {
 public:
  DualSimplex(const InequalityLp& p, const LpOptions& opt) : p_(p), opt_(opt), M_(p.G.rows()), n_(p.G.cols()) {
    sign_ = VectorXd::Ones(n_);
    for (Index i = 0; i < n_; ++i) {
      if (-p.c(i) < 0.0) sign_(i) = -1.0;
    }
    rhs_ = sign_.cwiseProduct(-p.c);
  }

  LpSolution run(std::span<const Index> warm, std::span<const Index> crash) {
    LpSolution out;
    const bool started = try_start(warm) || try_start(crash);
    if (!started) {
      basis_.resize(static_cast<std::size_t>(n_));
      for (Index i = 0; i < n_; ++i) basis_[static_cast<std::size_t>(i)] = M_ + i;
      factor();
    }
    if (artificial_sum() > 0.0) {
      phase_one_ = true;
      const auto status = iterate(out.iterations);
      if (status == LpStatus::iteration_limit) return finish(out, status);
      if (artificial_sum() > 1e-9 * std::max(1.0, rhs_.lpNorm<Eigen::Infinity>())) {
        return finish(out, LpStatus::unbounded_or_infeasible);
      }
      phase_one_ = false;
    }
    drive_out_artificials();
    perturb();
    const auto status = iterate(out.iterations);
    return finish(out, status);
  }

 private:
  double artificial_sum() const {
    double sum = 0.0;
    for (Index i = 0; i < n_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] >= M_) sum += std::max(0.0, xb_(i));
    }
    return sum;
  }

  // Takes up to n distinct rows, pads them with artificials to a nonsingular
  // basis and accepts it if the resulting point is feasible.
  bool try_start(std::span<const Index> rows) {
    if (rows.empty() || static_cast<Index>(rows.size()) > n_) return false;
    std::vector<Index> chosen(rows.begin(), rows.end());
    std::vector<Index> sorted(chosen);
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < 0 || sorted.back() >= M_ || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      return false;
    }
    MatrixXd cols(n_, n_);
    Index k = 0;
    for (Index j : chosen) cols.col(k++) = column(j);
    if (Eigen::FullPivLU<MatrixXd>(cols.leftCols(k)).rank() < k) return false;
    for (Index i = 0; i < n_ && k < n_; ++i) {
      cols.col(k) = VectorXd::Unit(n_, i);
      if (Eigen::FullPivLU<MatrixXd>(cols.leftCols(k + 1)).rank() == k + 1) {
        chosen.push_back(M_ + i);
        ++k;
      }
    }
    basis_ = std::move(chosen);
    return k == n_ && factor() && primal_feasible();
  }

  // Lifts every basic variable by a small distinct amount. Shifting the
  // right-hand side along the current basis keeps it in the range of the
  // constraint matrix and removes the ties that make degenerate bases stall.
  // Reduced costs do not depend on the right-hand side, so the final y is
  // still feasible for G y <= h.
  void perturb() {
    if (opt_.perturbation <= 0.0) return;
    const double scale = opt_.perturbation * std::max(1.0, rhs_.lpNorm<Eigen::Infinity>());
    VectorXd lift(n_);
    for (Index i = 0; i < n_; ++i) lift(i) = scale * (1.0 + static_cast<double>((i * 7919) % 101) / 101.0);
    MatrixXd B(n_, n_);
    for (Index i = 0; i < n_; ++i) B.col(i) = column(basis_[static_cast<std::size_t>(i)]);
    rhs_ += B * lift;
    factor();
  }

  VectorXd column(Index j) const {
    if (j >= M_) return VectorXd::Unit(n_, j - M_);
    return sign_.cwiseProduct(p_.G.row(j).transpose());
  }

  double cost(Index j) const {
    if (j >= M_) return phase_one_ ? 1.0 : 0.0;
    return phase_one_ ? 0.0 : p_.h(j);
  }

  bool factor() {
    MatrixXd B(n_, n_);
    for (Index i = 0; i < n_; ++i) B.col(i) = column(basis_[static_cast<std::size_t>(i)]);
    lu_.compute(B);
    if (!lu_.isInvertible()) return false;
    lu_t_.compute(B.transpose());
    xb_ = lu_.solve(rhs_);
    return true;
  }

  bool primal_feasible() const { return xb_.minCoeff() >= -1e-12 * std::max(1.0, rhs_.lpNorm<Eigen::Infinity>()); }

  VectorXd multipliers() const {
    VectorXd cb(n_);
    for (Index i = 0; i < n_; ++i) cb(i) = cost(basis_[static_cast<std::size_t>(i)]);
    return lu_t_.solve(cb);
  }

  LpStatus iterate(int& iterations) {
    int degenerate_run = 0;
    bool bland = false;
    std::vector<char> in_basis(static_cast<std::size_t>(M_), 0);
    // Columns whose pivot left a singular basis; skipped until the next
    // successful pivot.
    std::vector<char> rejected(static_cast<std::size_t>(M_), 0);
    const double feas_tol = 1e-11 * std::max(1.0, rhs_.lpNorm<Eigen::Infinity>());
    for (;;) {
      std::fill(in_basis.begin(), in_basis.end(), 0);
      for (Index j : basis_) {
        if (j < M_) in_basis[static_cast<std::size_t>(j)] = 1;
      }
      const VectorXd y = sign_.cwiseProduct(multipliers());
      // Reduced cost of l_j is cost_j - (G y)_j; negative means row j is violated.
      const VectorXd gy = p_.G * y;

      Index entering = -1;
      double best = -opt_.optimality_tol;
      for (Index j = 0; j < M_; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        if (in_basis[uj] || rejected[uj]) continue;
        const double d = cost(j) - gy(j);
        if (d < best) {
          entering = j;
          if (bland) break;
          best = d;
        }
      }
      if (entering < 0) return LpStatus::optimal;
      if (iterations >= opt_.max_iterations) return LpStatus::iteration_limit;
      ++iterations;

      const VectorXd w = lu_.solve(column(entering));
      const Index leave = bland ? ratio_test_bland(w) : ratio_test_harris(w, feas_tol);
      if (leave < 0) {
        // Phase 1 is bounded below by zero, so this only happens in phase 2.
        return LpStatus::infeasible;
      }
      const double theta = std::max(0.0, xb_(leave)) / w(leave);

      const Index previous = basis_[static_cast<std::size_t>(leave)];
      basis_[static_cast<std::size_t>(leave)] = entering;
      if (!factor()) {
        basis_[static_cast<std::size_t>(leave)] = previous;
        if (!factor()) throw std::runtime_error("simplex basis became numerically singular");
        rejected[static_cast<std::size_t>(entering)] = 1;
        continue;
      }
      std::fill(rejected.begin(), rejected.end(), 0);
      // Harris steps may leave basics slightly negative; clip them.
      xb_ = xb_.cwiseMax(0.0);

      if (theta <= 1e-12) {
        if (++degenerate_run > opt_.degenerate_limit) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
    }
  }

  // A basic artificial still in the basis after phase 1 sits at zero and must
  // leave as soon as the entering column touches it.
  bool pinned(Index i, const VectorXd& w) const {
    return !phase_one_ && basis_[static_cast<std::size_t>(i)] >= M_ && std::abs(w(i)) > opt_.pivot_tol;
  }

  // Two passes: the largest step that keeps every basic above -feas_tol, then
  // the largest pivot among rows that block within that step.
  Index ratio_test_harris(const VectorXd& w, double feas_tol) const {
    double bound = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n_; ++i) {
      if (pinned(i, w)) return i;
      if (w(i) > opt_.pivot_tol) bound = std::min(bound, (std::max(0.0, xb_(i)) + feas_tol) / w(i));
    }
    Index leave = -1;
    double pivot = 0.0;
    for (Index i = 0; i < n_; ++i) {
      if (w(i) > opt_.pivot_tol && std::max(0.0, xb_(i)) / w(i) <= bound && w(i) > pivot) {
        pivot = w(i);
        leave = i;
      }
    }
    return leave;
  }

  // Textbook minimum ratio with ties broken by the smallest basic index.
  Index ratio_test_bland(const VectorXd& w) const {
    Index leave = -1;
    double theta = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n_; ++i) {
      if (pinned(i, w)) return i;
      if (!(w(i) > opt_.pivot_tol)) continue;
      const double ratio = std::max(0.0, xb_(i)) / w(i);
      if (leave < 0 || ratio < theta ||
          (ratio == theta && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
        theta = ratio;
        leave = i;
      }
    }
    return leave;
  }

  void drive_out_artificials() {
    for (Index r = 0; r < n_; ++r) {
      if (basis_[static_cast<std::size_t>(r)] < M_) continue;
      const VectorXd rho = lu_t_.solve(VectorXd::Unit(n_, r));
      const VectorXd alpha = p_.G * sign_.cwiseProduct(rho);
      Index pick = -1;
      double best = opt_.pivot_tol;
      for (Index j = 0; j < M_; ++j) {
        if (std::find(basis_.begin(), basis_.end(), j) != basis_.end()) continue;
        if (std::abs(alpha(j)) > best) {
          best = std::abs(alpha(j));
          pick = j;
        }
      }
      if (pick < 0) continue;  // redundant equation; the artificial stays at zero
      const Index previous = basis_[static_cast<std::size_t>(r)];
      basis_[static_cast<std::size_t>(r)] = pick;
      if (!factor()) {
        basis_[static_cast<std::size_t>(r)] = previous;
        factor();
      }
    }
  }

  LpSolution& finish(LpSolution& out, LpStatus status) {
    out.status = status;
    const bool saved = phase_one_;
    phase_one_ = false;
    out.y = sign_.cwiseProduct(multipliers());
    phase_one_ = saved;
    out.objective = p_.c.dot(out.y);
    out.basis.clear();
    for (Index j : basis_) {
      if (j < M_) out.basis.push_back(j);
    }
    return out;
  }

  const InequalityLp& p_;
  const LpOptions& opt_;
  Index M_;
  Index n_;
  VectorXd sign_;
  VectorXd rhs_;
  std::vector<Index> basis_;
  Eigen::FullPivLU<MatrixXd> lu_;
  Eigen::FullPivLU<MatrixXd> lu_t_;
  VectorXd xb_;
  bool phase_one_{false};
};

}  // namespace

LpSolution solve(const InequalityLp& problem, const LpOptions& options, std::span<const Index> warm_basis,
                 std::span<const Index> crash_basis) {
  if (problem.h.size() != problem.G.rows() || problem.c.size() != problem.G.cols()) {
    throw std::invalid_argument("inconsistent LP dimensions");
  }
  DualSimplex solver(problem, options);
  return solver.run(warm_basis, crash_basis);
}

}  // namespace tempint::lp
