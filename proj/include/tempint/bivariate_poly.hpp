#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "tempint/eval_point.hpp"

namespace tempint {

/// Total-degree polynomial sum_{i+j<=n} c_ij x^i m^j.
///
/// Coefficients are stored densely in graded order: total degree ascending,
/// and within a degree by descending power of x, i.e.
/// (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...
class BivariatePoly {
 public:
  /// The zero polynomial of the given degree.
  explicit BivariatePoly(int degree = 0);

  /// Takes ownership of a dense coefficient vector in graded order; its size
  /// must equal term_count(degree).
  BivariatePoly(int degree, std::vector<double> coeffs);

  int degree() const noexcept { return degree_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

  /// c_ij; zero for i + j > degree.
  double coeff(int i, int j) const;

  bool is_zero() const;

  /// Nested evaluation: powers of m innermost, powers of x outermost.
  double operator()(EvalPoint point) const;

  BivariatePoly scaled(double factor) const;

  static std::size_t term_count(int degree);
  static std::size_t index_of(int i, int j);
  /// (i, j) exponents of the k-th term in graded order.
  static std::pair<int, int> term(std::size_t k);

  /// x^i m^j for every term of the given degree, in graded order.
  static void monomials(int degree, EvalPoint point, std::span<double> out);

 private:
  int degree_;
  std::vector<double> coeffs_;
};

/// Affine change of variables x' = (x - x_center) / x_scale and likewise for m.
/// The default is the identity.
struct AffineFrame {
  double x_center{0.0};
  double x_scale{1.0};
  double m_center{0.0};
  double m_scale{1.0};

  EvalPoint to_local(EvalPoint point) const {
    return {(point.m - m_center) / m_scale, (point.x - x_center) / x_scale};
  }

  /// Maps [x_lo, x_hi] x [m_lo, m_hi] onto [-1, 1]^2; a degenerate side keeps
  /// unit scale.
  static AffineFrame spanning(double x_lo, double x_hi, double m_lo, double m_hi);
};

/// Re-expands a polynomial written in the local variables of `frame` as a
/// polynomial in plain x and m of the same degree.
BivariatePoly to_global(const BivariatePoly& local, const AffineFrame& frame);

}  // namespace tempint
