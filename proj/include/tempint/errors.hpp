#pragma once

#include <stdexcept>
#include <string>

#include "tempint/eval_point.hpp"

namespace tempint {

/// A point or parameter lies outside the domain an operation accepts.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative evaluation did not converge. Carries the last two iterates so
/// the caller can judge how far off it was.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double previous, double last)
      : std::runtime_error(what), previous_(previous), last_(last) {}

  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

/// A rational approximant's denominator vanished or changed sign at a point.
class PoleError : public DomainError {
 public:
  PoleError(const std::string& what, EvalPoint point) : DomainError(what), point_(point) {}
  EvalPoint point() const noexcept { return point_; }

 private:
  EvalPoint point_;
};

/// Malformed coefficient file or grid specification.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& detail);

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace tempint
