#include "tempint/coeff_io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "tempint/errors.hpp"

namespace tempint {

ParseError::ParseError(const std::string& source, int line, const std::string& detail)
    : std::runtime_error(line > 0 ? fmt::format("{}:{}: {}", source, line, detail)
                                  : fmt::format("{}: {}", source, detail)),
      line_(line) {}

namespace {

// Shortest representation that parses back to the same double.
std::string round_trip(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

bool parse_int(std::string_view s, int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_double(std::string_view s, double& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
    fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

}  // namespace

std::string to_coeff_text(const RationalApproximant& r) {
  std::string out = fmt::format("degree {}\n", r.degree());
  for (const auto& [tag, poly] : {std::pair{'a', &r.numer()}, std::pair{'b', &r.denom()}}) {
    for (std::size_t k = 0; k < poly->coeffs().size(); ++k) {
      const auto [i, j] = BivariatePoly::term(k);
      out += fmt::format("{} {} {} {}\n", tag, i, j, round_trip(poly->coeffs()[k]));
    }
  }
  return out;
}

void save_coeffs(const RationalApproximant& r, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot open {} for writing", path.string()));
  out << to_coeff_text(r);
  if (!out) throw std::runtime_error(fmt::format("failed writing {}", path.string()));
}

RationalApproximant parse_coeffs(std::string_view text, const std::string& source) {
  int degree = -1;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<bool> seen_a;
  std::vector<bool> seen_b;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    const auto fields = split_ws(line);
    if (fields.empty() || fields[0].front() == '#') continue;

    if (degree < 0) {
      if (fields.size() != 2 || fields[0] != "degree" || !parse_int(fields[1], degree) || degree < 0) {
        throw ParseError(source, line_no, "expected header 'degree <n>' with n >= 0");
      }
      const auto count = BivariatePoly::term_count(degree);
      a.assign(count, 0.0);
      b.assign(count, 0.0);
      seen_a.assign(count, false);
      seen_b.assign(count, false);
      continue;
    }

    if (fields.size() != 4) throw ParseError(source, line_no, "expected '<a|b> <i> <j> <value>'");
    const bool is_a = fields[0] == "a";
    if (!is_a && fields[0] != "b") {
      throw ParseError(source, line_no, fmt::format("unknown coefficient tag '{}'", fields[0]));
    }
    int i = 0;
    int j = 0;
    double value = 0.0;
    if (!parse_int(fields[1], i) || !parse_int(fields[2], j)) {
      throw ParseError(source, line_no, "exponents i and j must be integers");
    }
    if (i < 0 || j < 0 || i + j > degree) {
      throw ParseError(source, line_no, fmt::format("term ({}, {}) violates 0 <= i, j and i + j <= {}", i, j, degree));
    }
    if (!parse_double(fields[3], value)) {
      throw ParseError(source, line_no, fmt::format("invalid coefficient value '{}'", fields[3]));
    }
    const auto k = BivariatePoly::index_of(i, j);
    auto& seen = is_a ? seen_a : seen_b;
    if (seen[k]) throw ParseError(source, line_no, fmt::format("duplicate entry {} {} {}", fields[0], i, j));
    seen[k] = true;
    (is_a ? a : b)[k] = value;
  }

  if (degree < 0) throw ParseError(source, 0, "missing 'degree' header");
  for (std::size_t k = 0; k < seen_a.size(); ++k) {
    const auto [i, j] = BivariatePoly::term(k);
    if (!seen_a[k]) throw ParseError(source, 0, fmt::format("missing coefficient a {} {}", i, j));
    if (!seen_b[k]) throw ParseError(source, 0, fmt::format("missing coefficient b {} {}", i, j));
  }
  try {
    return RationalApproximant(BivariatePoly(degree, std::move(a)), BivariatePoly(degree, std::move(b)));
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, 0, e.what());
  }
}

RationalApproximant load_coeffs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_coeffs(buf.str(), path.string());
}

std::filesystem::path default_coeff_dir() {
  if (const char* env = std::getenv("TEMPINT_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return TEMPINT_DATA_DIR;
}

RationalApproximant bundled_approximant(int n, const std::filesystem::path& dir) {
  return load_coeffs(dir / fmt::format("g{}.coeff", n));
}

}  // namespace tempint
