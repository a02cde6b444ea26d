#include "tempint/models.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "tempint/coeff_io.hpp"
#include "tempint/errors.hpp"
#include "tempint/oracle.hpp"

namespace tempint {

namespace {

constexpr std::array kModels = {
    ModelInfo{ModelId::J, "J", "Ji", "m = 0", true, true},
    ModelInfo{ModelId::O, "O", "Orfao (4th degree)", "m = 0", true, true},
    ModelInfo{ModelId::SY, "SY", "Senum & Yang (4th degree, x^2 coefficient 86)", "m = 0", true, true},
    ModelInfo{ModelId::G, "G", "Gorbachev", "any m", false, true},
    ModelInfo{ModelId::W1, "W1", "Wanjun (2005)", "any m", false, true},
    ModelInfo{ModelId::W2, "W2", "Wanjun (2009)", "any m", false, true},
    ModelInfo{ModelId::C1, "C1", "Cai (2007a)", "any m", false, true},
    ModelInfo{ModelId::C2, "C2", "Cai (2007b)", "any m", false, true},
    ModelInfo{ModelId::C3, "C3", "Cai (2008)", "any m", false, true},
    ModelInfo{ModelId::Ch1, "Ch1", "Chen (2007), 4th degree", "any m", false, true},
    ModelInfo{ModelId::Ch2, "Ch2", "Chen (2009a)", "any m", false, true},
    ModelInfo{ModelId::Ch3, "Ch3", "Chen (2009b)", "any m", false, true},
    ModelInfo{ModelId::Ch4, "Ch4", "Chen (2009b)", "any m", false, true},
    ModelInfo{ModelId::Cp, "Cp", "Capela", "any m", false, true},
    ModelInfo{ModelId::X, "X", "Xia, 4th degree", "m in {-1, -0.5, 0, 0.5, 1, 2}", false, true},
    ModelInfo{ModelId::Cs, "Cs", "Casal & Marban", "any m", false, true},
    ModelInfo{ModelId::L, "L", "Lei", "any m", false, true},
    ModelInfo{ModelId::G1, "G1", "bundled minimax approximant, n = 1", "any m", false, true},
    ModelInfo{ModelId::G2, "G2", "bundled minimax approximant, n = 2", "any m", false, true},
    ModelInfo{ModelId::G3, "G3", "bundled minimax approximant, n = 3", "any m", false, true},
    ModelInfo{ModelId::G4, "G4", "bundled minimax approximant, n = 4", "any m", false, true},
    ModelInfo{ModelId::SY88, "SY88", "Senum & Yang as misquoted (x^2 coefficient 88)", "m = 0", true, false},
};

struct XRow {
  double m, a3, a2, a1;
};

constexpr std::array kXRows = {
    XRow{-1.0, 15.0, 58.0, 50.0},   XRow{-0.5, 14.5, 51.75, 34.875}, XRow{0.0, 14.0, 46.0, 24.0},
    XRow{0.5, 13.5, 40.75, 16.625}, XRow{1.0, 13.0, 36.0, 12.0},     XRow{2.0, 12.0, 28.0, 8.0},
};
constexpr std::array kXm = {-1.0, -0.5, 0.0, 0.5, 1.0, 2.0};

constexpr double kMatchTol = 1e-9;

const XRow* x_row(double m) {
  for (const auto& row : kXRows) {
    if (std::abs(row.m - m) <= kMatchTol) return &row;
  }
  return nullptr;
}

double checked_ratio(double num, double den, EvalPoint p, std::string_view tag) {
  if (den == 0.0 || !std::isfinite(den)) {
    throw PoleError(fmt::format("model {} denominator vanishes at (m={}, x={})", tag, p.m, p.x), p);
  }
  return num / den;
}

const RationalApproximant& bundled(int n) {
  // Function-local statics: loaded once, thread-safe initialization.
  static const RationalApproximant g1 = bundled_approximant(1);
  static const RationalApproximant g2 = bundled_approximant(2);
  static const RationalApproximant g3 = bundled_approximant(3);
  static const RationalApproximant g4 = bundled_approximant(4);
  switch (n) {
    case 1: return g1;
    case 2: return g2;
    case 3: return g3;
    default: return g4;
  }
}

}  // namespace

const ModelInfo& model_info(ModelId id) {
  for (const auto& info : kModels) {
    if (info.id == id) return info;
  }
  throw std::invalid_argument("unknown model id");
}

std::string_view tag_of(ModelId id) { return model_info(id).tag; }

std::optional<ModelId> parse_model_id(std::string_view tag) {
  for (const auto& info : kModels) {
    if (info.tag == tag) return info.id;
  }
  return std::nullopt;
}

std::span<const double> x_model_m_values() { return kXm; }

bool model_admits(ModelId id, double m) {
  if (!std::isfinite(m)) return false;
  switch (id) {
    case ModelId::J:
    case ModelId::O:
    case ModelId::SY:
    case ModelId::SY88:
      return std::abs(m) <= kMatchTol;
    case ModelId::X:
      return x_row(m) != nullptr;
    default:
      return true;
  }
}

std::vector<ModelInfo> list_models(std::optional<double> m) {
  std::vector<ModelInfo> out;
  for (const auto& info : kModels) {
    if (!info.listed) continue;
    if (m && !model_admits(info.id, *m)) continue;
    out.push_back(info);
  }
  return out;
}

double eval_model(ModelId id, EvalPoint point) {
  require_valid_point(point);
  const auto tag = tag_of(id);
  if (!model_admits(id, point.m)) {
    throw DomainError(fmt::format("model {} is not defined at m={} (allowed: {})", tag, point.m,
                                  model_info(id).m_domain));
  }
  const double m = point.m;
  const double x = point.x;
  const double lx = std::log(x);
  const double pre = prefactor(point);
  auto ratio = [&](double num, double den) { return checked_ratio(num, den, point, tag); };

  switch (id) {
    case ModelId::J:
      return pre * ratio(x * x + 16.99864 * x + 3.65517 * lx + 5.41337, x * x + 18.99977 * x + 3.43593 * lx + 38.49858);
    case ModelId::O:
      return pre * ratio(((0.9999936 * x + 7.5739391) * x + 12.4648922) * x * x + 3.6907232 * x,
                         (((x + 9.5733223) * x + 25.6329561) * x + 21.0996531) * x + 3.9584969);
    case ModelId::SY:
    case ModelId::SY88: {
      const double c2 = id == ModelId::SY ? 86.0 : 88.0;
      return pre * ratio((((x + 18.0) * x + c2) * x + 96.0) * x, (((x + 20.0) * x + 120.0) * x + 240.0) * x + 120.0);
    }
    case ModelId::G:
      return pre * ratio(1.0, 1.0 + (m + 2.0) / x);
    case ModelId::W1:
      return pre * ratio(1.0, 1.0 + (m + 2.0) * (0.00099441 + 0.93695599 / x));
    case ModelId::W2:
      return std::exp(-0.18887 * (m + 2.0) - (1.00145 + 0.00069 * m) * x - 0.94733 * (m + 2.0) * lx);
    case ModelId::C1:
      return pre * ratio(0.99954 * x - 0.044967 * m + 0.58058, x + 0.94057 * m + 2.5400);
    case ModelId::C2:
      return pre * ratio(1.0002486 * x + 0.2228027 * lx - 0.05241956 * m + 0.2975711,
                         x + 0.2333376 * lx + 0.9496628 * m + 2.2781591);
    case ModelId::C3:
      return pre * ratio(x - 0.054182 * m + 0.65061, x + 0.93544 * m + 2.62993);
    case ModelId::Ch1: {
      const double num = x * x * x * x + 3.0 * (m + 2.0) * x * x * x + (3.0 * m + 1.0) * (m + 2.0) * x * x +
                         m * (m - 1.0) * (m + 2.0) * x;
      const double den = x * x * x * x + 4.0 * (m + 2.0) * x * x * x + 6.0 * (m + 1.0) * (m + 2.0) * x * x +
                         4.0 * m * (m + 1.0) * (m + 2.0) * x + (m - 1.0) * m * (m + 1.0) * (m + 2.0);
      return pre * ratio(num, den);
    }
    case ModelId::Ch2:
      return std::exp(-(0.16656 * m + 0.39329) - (1.00147 + 0.00057 * m) * x - (1.89021 + 0.95479 * m) * lx);
    case ModelId::Ch3:
      return pre * ratio(x, (1.00141 + 0.0006 * m) * x + (1.89376 + 0.95276 * m));
    case ModelId::Ch4:
      return pre * ratio(x + (0.74981 - 0.06396 * m), (1.00017 + 0.00013 * m) * x + (2.73166 + 0.92246 * m));
    case ModelId::Cp: {
      constexpr double r2 = std::numbers::sqrt2;
      const double p = m + 2.0;
      return pre * ((2.0 - r2) / 4.0 * std::pow(x / (x + 2.0 + r2), p) +
                    (2.0 + r2) / 4.0 * std::pow(x / (x + 2.0 - r2), p));
    }
    case ModelId::X: {
      const XRow& row = *x_row(m);
      return pre * ratio((((x + row.a3) * x + row.a2) * x + row.a1) * x, (((x + 16.0) * x + 72.0) * x + 96.0) * x + 24.0);
    }
    case ModelId::Cs:
      return pre * ratio(x - 0.05924479 * m + 0.62385968, x + 0.92755595 * m + 2.59746116);
    case ModelId::L: {
      const double s = x + m + 1.0;
      return pre * (std::sqrt(s * s + 4.0 * x) - s) / 2.0;
    }
    case ModelId::G1: return bundled(1).eval_g(point);
    case ModelId::G2: return bundled(2).eval_g(point);
    case ModelId::G3: return bundled(3).eval_g(point);
    case ModelId::G4: return bundled(4).eval_g(point);
  }
  throw std::invalid_argument("unknown model id");
}

}  // namespace tempint
