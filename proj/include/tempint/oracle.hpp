#pragma once

#include "tempint/eval_point.hpp"

namespace tempint {

struct OracleConfig {
  double rel_tol{1e-13};
  int max_iterations{10000};

  /// Throws DomainError unless 0 < rel_tol < 1e-6 and max_iterations > 0.
  void validate() const;
};

/// g(m, x) = Gamma(-(m+1), x) by a modified Lentz continued fraction.
/// Throws ConvergenceError if the fraction has not settled after
/// cfg.max_iterations terms; DomainError for x <= 0 or non-finite input.
double g_cf(EvalPoint point, const OracleConfig& cfg = {});

/// g(m, x) by adaptive Gauss-Kronrod quadrature of the integrand on a
/// truncated interval. Shares no code with g_cf.
double g_quad(EvalPoint point, const OracleConfig& cfg = {});

/// Scaled target h(m, x) = e^x x^(m+2) g(m, x). Uses the continued fraction
/// and falls back to quadrature if it fails to converge.
double h(EvalPoint point, const OracleConfig& cfg = {});

/// Scaled quadrature value, e^x x^(m+2) g_quad(m, x), computed without forming
/// the exponential prefactor.
double h_quad(EvalPoint point, const OracleConfig& cfg = {});

/// Partial sum 1 - (m+2)/x + (m+2)(m+3)/x^2 - ... with `terms` terms.
/// Throws DomainError for terms < 1 or an invalid point.
double h_series(EvalPoint point, int terms);

/// e^(-x) / x^(m+2), evaluated in log space.
double prefactor(EvalPoint point);

/// Throws DomainError unless x > 0 and both coordinates are finite.
void require_valid_point(EvalPoint point);

}  // namespace tempint
