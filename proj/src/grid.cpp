#include "tempint/grid.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "tempint/errors.hpp"

namespace tempint {

namespace {

// Snaps lo + k*step onto the nearest multiple of 1e-9 so decimal grids hit the
// same doubles as their literal spelling (e.g. -4 + 43*0.1 == 0.3).
double snap(double v) {
  const double snapped = std::round(v * 1e9) / 1e9;
  return std::abs(snapped - v) < 1e-7 * std::max(1.0, std::abs(v)) ? snapped : v;
}

bool parse_double(std::string_view s, double& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

Axis parse_axis(std::string_view text, std::string_view source) {
  Axis axis;
  double* slots[] = {&axis.lo, &axis.hi, &axis.step};
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    const std::size_t end = k < 2 ? text.find(':', pos) : text.size();
    if (end == std::string_view::npos) {
      throw ParseError(std::string(source), 0, fmt::format("axis '{}' must be lo:hi:step", text));
    }
    if (!parse_double(text.substr(pos, end - pos), *slots[k])) {
      throw ParseError(std::string(source), 0, fmt::format("bad number in axis '{}'", text));
    }
    pos = end + 1;
  }
  return axis;
}

}  // namespace

std::size_t Axis::count() const {
  if (hi == lo) return 1;
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

double Axis::at(std::size_t k) const { return snap(lo + static_cast<double>(k) * step); }

std::vector<double> Axis::values() const {
  std::vector<double> out(count());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = at(k);
  return out;
}

Axis Axis::refined(int factor) const { return Axis{lo, hi, step / factor}; }

void GridSpec::validate() const {
  for (const auto& [name, axis] : {std::pair{"m", &m}, std::pair{"x", &x}}) {
    if (!std::isfinite(axis->lo) || !std::isfinite(axis->hi) || !std::isfinite(axis->step)) {
      throw DomainError(fmt::format("{} axis has non-finite bounds", name));
    }
    if (axis->lo > axis->hi) throw DomainError(fmt::format("{} axis has lo > hi", name));
    if (!(axis->step > 0.0)) throw DomainError(fmt::format("{} axis step must be positive", name));
  }
  if (!(x.lo > 0.0)) throw DomainError("x axis must be strictly positive");
}

std::vector<EvalPoint> GridSpec::points() const {
  const auto ms = m.values();
  const auto xs = x.values();
  std::vector<EvalPoint> out;
  out.reserve(ms.size() * xs.size());
  for (double mv : ms) {
    for (double xv : xs) out.push_back({mv, xv});
  }
  return out;
}

GridSpec GridSpec::refined(int factor) const {
  if (factor < 1) throw DomainError(fmt::format("refinement factor must be >= 1, got {}", factor));
  return GridSpec{m.refined(factor), x.refined(factor)};
}

std::string GridSpec::to_string() const {
  return fmt::format("m={}:{}:{},x={}:{}:{}", m.lo, m.hi, m.step, x.lo, x.hi, x.step);
}

EvalGrid paper_eval_grid() { return {"paper-eval", {{-4.0, 4.0, 0.1}, {4.0, 100.0, 1.0}}}; }
EvalGrid paper_narrow_grid() { return {"paper-narrow", {{-1.5, 2.5, 0.1}, {4.0, 100.0, 1.0}}}; }
EvalGrid arrhenius_grid() { return {"arrhenius", {{0.0, 0.0, 1.0}, {4.0, 100.0, 1.0}}}; }
EvalGrid coarse_grid() { return {"coarse", {{-4.0, 4.0, 0.5}, {4.0, 100.0, 4.0}}}; }

EvalGrid parse_grid(std::string_view text) {
  if (text == "paper-eval") return paper_eval_grid();
  if (text == "paper-narrow") return paper_narrow_grid();
  if (text == "arrhenius") return arrhenius_grid();
  if (text == "coarse") return coarse_grid();

  const std::string source = fmt::format("grid '{}'", text);
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw ParseError(source, 0, "expected a preset (paper-eval, paper-narrow, arrhenius, coarse) or m=..,x=..");
  }
  GridSpec spec;
  bool have_m = false;
  bool have_x = false;
  for (std::string_view part : {text.substr(0, comma), text.substr(comma + 1)}) {
    if (part.size() < 2 || part[1] != '=') throw ParseError(source, 0, fmt::format("bad axis '{}'", part));
    if (part[0] == 'm' && !have_m) {
      spec.m = parse_axis(part.substr(2), source);
      have_m = true;
    } else if (part[0] == 'x' && !have_x) {
      spec.x = parse_axis(part.substr(2), source);
      have_x = true;
    } else {
      throw ParseError(source, 0, fmt::format("unexpected axis '{}'", part));
    }
  }
  try {
    spec.validate();
  } catch (const DomainError& e) {
    throw ParseError(source, 0, e.what());
  }
  return {std::string(text), spec};
}

}  // namespace tempint
