#include "tempint/rational.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "tempint/errors.hpp"
#include "tempint/oracle.hpp"

namespace tempint {

namespace {
constexpr EvalPoint kReferencePoint{0.0, 52.0};
}

RationalApproximant::RationalApproximant(BivariatePoly numer, BivariatePoly denom)
    : numer_(std::move(numer)), denom_(std::move(denom)), reference_sign_(0) {
  if (numer_.degree() != denom_.degree()) {
    throw std::invalid_argument(
        fmt::format("numerator degree {} differs from denominator degree {}", numer_.degree(), denom_.degree()));
  }
  if (denom_.is_zero()) throw std::invalid_argument("denominator polynomial is identically zero");
  const double q = denom_(kReferencePoint);
  reference_sign_ = q > 0.0 ? 1 : (q < 0.0 ? -1 : 0);
}

double RationalApproximant::eval_h(EvalPoint point) const {
  const double q = denom_(point);
  const bool flipped = reference_sign_ != 0 && (q > 0.0 ? 1 : -1) != reference_sign_;
  if (q == 0.0 || flipped) {
    throw PoleError(fmt::format("denominator {} at (m={}, x={})", q == 0.0 ? "vanishes" : "changes sign", point.m,
                                point.x),
                    point);
  }
  return numer_(point) / q;
}

double RationalApproximant::eval_g(EvalPoint point) const {
  require_valid_point(point);
  return prefactor(point) * eval_h(point);
}

}  // namespace tempint
