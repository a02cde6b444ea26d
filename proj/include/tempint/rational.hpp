#pragma once

#include "tempint/bivariate_poly.hpp"
#include "tempint/eval_point.hpp"

namespace tempint {

/// g_n(m, x) = e^-x / x^(m+2) * p(m, x) / q(m, x) with deg p = deg q = n.
class RationalApproximant {
 public:
  /// Throws std::invalid_argument on a degree mismatch or an identically zero
  /// denominator.
  RationalApproximant(BivariatePoly numer, BivariatePoly denom);

  int degree() const noexcept { return numer_.degree(); }
  const BivariatePoly& numer() const noexcept { return numer_; }
  const BivariatePoly& denom() const noexcept { return denom_; }

  /// p/q, the approximation to h(m, x). Throws PoleError if q is zero at the
  /// point or has the opposite sign to q at the domain centre (m=0, x=52).
  double eval_h(EvalPoint point) const;

  /// Full approximation to g(m, x); the prefactor is formed in log space so it
  /// underflows to zero instead of overflowing.
  double eval_g(EvalPoint point) const;

  /// Sign of q at the reference point used for pole detection.
  int reference_sign() const noexcept { return reference_sign_; }

 private:
  BivariatePoly numer_;
  BivariatePoly denom_;
  int reference_sign_;
};

}  // namespace tempint
