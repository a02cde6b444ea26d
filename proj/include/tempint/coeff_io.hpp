#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "tempint/rational.hpp"

namespace tempint {

// Coefficient file layout:
//
//   degree <n>
//   a <i> <j> <value>     one line per numerator coefficient
//   b <i> <j> <value>     one line per denominator coefficient
//
// Blank lines and lines starting with '#' are ignored. Every (i, j) with
// i + j <= n must appear exactly once for both a and b.

std::string to_coeff_text(const RationalApproximant& r);
void save_coeffs(const RationalApproximant& r, const std::filesystem::path& path);

/// Throws ParseError naming `source` and the offending line.
RationalApproximant parse_coeffs(std::string_view text, const std::string& source = "<text>");
RationalApproximant load_coeffs(const std::filesystem::path& path);

/// Directory holding the bundled g1.coeff ... g4.coeff.
std::filesystem::path default_coeff_dir();

/// Loads g<n>.coeff from `dir`.
RationalApproximant bundled_approximant(int n, const std::filesystem::path& dir = default_coeff_dir());

}  // namespace tempint
