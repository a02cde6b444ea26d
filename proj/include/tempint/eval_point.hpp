#pragma once

namespace tempint {

/// A coordinate (m, x) of the general temperature integral: m is the exponent
/// of the power-law frequency factor, x = E/RT the reduced activation energy.
struct EvalPoint {
  double m{0.0};
  double x{0.0};

  friend bool operator==(const EvalPoint&, const EvalPoint&) = default;
};

}  // namespace tempint
