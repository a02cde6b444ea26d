#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tempint/eval_point.hpp"

namespace tempint {

/// Inclusive arithmetic progression lo, lo + step, ..., hi.
struct Axis {
  double lo{0.0};
  double hi{0.0};
  double step{1.0};

  std::size_t count() const;
  double at(std::size_t k) const;
  std::vector<double> values() const;
  Axis refined(int factor) const;
};

/// Rectangular (m, x) grid with inclusive endpoints. Points are ordered with
/// m outermost and x innermost.
struct GridSpec {
  Axis m;
  Axis x;

  /// Throws DomainError on lo > hi, non-positive steps or x_lo <= 0.
  void validate() const;
  std::size_t size() const { return m.count() * x.count(); }
  std::vector<EvalPoint> points() const;
  GridSpec refined(int factor) const;
  /// "m=lo:hi:step,x=lo:hi:step"
  std::string to_string() const;
};

/// A grid with a display name; the presets carry their preset name.
struct EvalGrid {
  std::string name;
  GridSpec spec;
};

/// -4 <= m <= 4 step 0.1, 4 <= x <= 100 step 1 (81 x 97 points).
EvalGrid paper_eval_grid();
/// -1.5 <= m <= 2.5 step 0.1, same x (41 x 97 points).
EvalGrid paper_narrow_grid();
/// m = 0 only, 4 <= x <= 100 step 1 (97 points).
EvalGrid arrhenius_grid();
/// m step 0.5, x step 4 over the default ranges; for smoke tests.
EvalGrid coarse_grid();

/// Accepts a preset name or "m=lo:hi:step,x=lo:hi:step". Throws ParseError.
EvalGrid parse_grid(std::string_view text);

}  // namespace tempint
