#include "tempint/oracle.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "tempint/errors.hpp"

namespace tempint {

namespace {

constexpr double kTiny = 1e-300;

// Lentz evaluation of the continued fraction for Gamma(a, x):
//   Gamma(a, x) = e^-x x^a * 1/(x+1-a- 1(1-a)/(x+3-a- 2(2-a)/(x+5-a- ...)))
// Returns the fraction value F, so that h(m, x) = x * F with a = -(m+1).
double gamma_fraction(double a, double x, const OracleConfig& cfg) {
  const double stop = std::max(0.1 * cfg.rel_tol, 4.0 * std::numeric_limits<double>::epsilon());
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double value = d;
  double previous = value;
  for (int i = 1; i <= cfg.max_iterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    previous = value;
    value *= delta;
    if (std::abs(delta - 1.0) < stop) return value;
  }
  throw ConvergenceError(fmt::format("continued fraction for Gamma({}, {}) did not converge in {} terms",
                                     a, x, cfg.max_iterations),
                         previous, value);
}

// Bound on the integral of e^-s (1 + s/x)^p over [S, inf).
double tail_bound(double p, double x, double s_max) {
  const double base = std::exp(-s_max);
  if (p <= 0.0) return base;
  const double t = x + s_max;
  if (p >= t) return std::numeric_limits<double>::infinity();
  return base * std::pow(t / x, p) * t / (t - p);
}

}  // namespace

void OracleConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1e-6)) {
    throw DomainError(fmt::format("oracle rel_tol must lie in (0, 1e-6), got {}", rel_tol));
  }
  if (max_iterations <= 0) {
    throw DomainError(fmt::format("oracle max_iterations must be positive, got {}", max_iterations));
  }
}

void require_valid_point(EvalPoint point) {
  if (!std::isfinite(point.m) || !std::isfinite(point.x)) {
    throw DomainError(fmt::format("non-finite point (m={}, x={})", point.m, point.x));
  }
  if (!(point.x > 0.0)) {
    throw DomainError(fmt::format("x must be positive, got x={} (m={})", point.x, point.m));
  }
}

double prefactor(EvalPoint point) { return std::exp(-point.x - (point.m + 2.0) * std::log(point.x)); }

double g_cf(EvalPoint point, const OracleConfig& cfg) {
  require_valid_point(point);
  cfg.validate();
  const double a = -(point.m + 1.0);
  const double fraction = gamma_fraction(a, point.x, cfg);
  return std::exp(-point.x + a * std::log(point.x)) * fraction;
}

double h_quad(EvalPoint point, const OracleConfig& cfg) {
  require_valid_point(point);
  cfg.validate();
  // Substituting t = x + s:  h = integral_0^inf e^-s (1 + s/x)^-(m+2) ds.
  const double x = point.x;
  const double p = -(point.m + 2.0);
  auto integrand = [x, p](double s) { return std::exp(-s) * std::pow(1.0 + s / x, p); };

  double s_max = 60.0 + 5.0 * std::abs(point.m + 2.0) * std::log(x);
  constexpr double kMaxSpan = 2000.0;
  constexpr unsigned kMaxDepth = 60;
  using Integrator = boost::math::quadrature::gauss_kronrod<double, 15>;
  for (;;) {
    double error = 0.0;
    const double value = Integrator::integrate(integrand, 0.0, s_max, kMaxDepth, 0.1 * cfg.rel_tol, &error);
    if (!(error <= cfg.rel_tol * std::abs(value))) {
      throw ConvergenceError(
          fmt::format("quadrature for h(m={}, x={}) reached error estimate {} above tolerance", point.m, x, error),
          value - error, value);
    }
    if (tail_bound(p, x, s_max) <= 0.1 * cfg.rel_tol * value) return value;
    if (s_max >= kMaxSpan) {
      throw ConvergenceError(
          fmt::format("quadrature truncation for h(m={}, x={}) cannot bound the tail", point.m, x), value,
          value + tail_bound(p, x, s_max));
    }
    s_max = std::min(2.0 * s_max, kMaxSpan);
  }
}

double g_quad(EvalPoint point, const OracleConfig& cfg) { return prefactor(point) * h_quad(point, cfg); }

double h(EvalPoint point, const OracleConfig& cfg) {
  require_valid_point(point);
  cfg.validate();
  try {
    return point.x * gamma_fraction(-(point.m + 1.0), point.x, cfg);
  } catch (const ConvergenceError&) {
    return h_quad(point, cfg);
  }
}

double h_series(EvalPoint point, int terms) {
  require_valid_point(point);
  if (terms < 1) throw DomainError(fmt::format("series needs at least one term, got {}", terms));
  double sum = 0.0;
  double term = 1.0;
  for (int k = 0; k < terms; ++k) {
    sum += term;
    term *= -(point.m + 2.0 + k) / point.x;
  }
  return sum;
}

}  // namespace tempint
