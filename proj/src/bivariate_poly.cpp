#include "tempint/bivariate_poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace tempint {

BivariatePoly::BivariatePoly(int degree) : BivariatePoly(degree, std::vector<double>(term_count(degree), 0.0)) {}

BivariatePoly::BivariatePoly(int degree, std::vector<double> coeffs) : degree_(degree), coeffs_(std::move(coeffs)) {
  if (degree < 0) throw std::invalid_argument(fmt::format("polynomial degree must be >= 0, got {}", degree));
  if (coeffs_.size() != term_count(degree)) {
    throw std::invalid_argument(fmt::format("degree {} polynomial needs {} coefficients, got {}", degree,
                                            term_count(degree), coeffs_.size()));
  }
}

std::size_t BivariatePoly::term_count(int degree) {
  const auto n = static_cast<std::size_t>(degree);
  return (n + 1) * (n + 2) / 2;
}

std::size_t BivariatePoly::index_of(int i, int j) {
  const auto d = static_cast<std::size_t>(i + j);
  return d * (d + 1) / 2 + static_cast<std::size_t>(j);
}

std::pair<int, int> BivariatePoly::term(std::size_t k) {
  int d = 0;
  while ((static_cast<std::size_t>(d) + 1) * (d + 2) / 2 <= k) ++d;
  const int j = static_cast<int>(k - static_cast<std::size_t>(d) * (d + 1) / 2);
  return {d - j, j};
}

double BivariatePoly::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > degree_) return 0.0;
  return coeffs_[index_of(i, j)];
}

bool BivariatePoly::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

double BivariatePoly::operator()(EvalPoint point) const {
  double result = 0.0;
  for (int i = degree_; i >= 0; --i) {
    double inner = 0.0;
    for (int j = degree_ - i; j >= 0; --j) inner = inner * point.m + coeffs_[index_of(i, j)];
    result = result * point.x + inner;
  }
  return result;
}

BivariatePoly BivariatePoly::scaled(double factor) const {
  std::vector<double> c(coeffs_);
  for (double& v : c) v *= factor;
  return BivariatePoly(degree_, std::move(c));
}

void BivariatePoly::monomials(int degree, EvalPoint point, std::span<double> out) {
  if (out.size() != term_count(degree)) throw std::invalid_argument("monomial buffer has wrong size");
  std::vector<double> xp(static_cast<std::size_t>(degree) + 1, 1.0);
  std::vector<double> mp(xp.size(), 1.0);
  for (std::size_t k = 1; k < xp.size(); ++k) {
    xp[k] = xp[k - 1] * point.x;
    mp[k] = mp[k - 1] * point.m;
  }
  for (int d = 0; d <= degree; ++d) {
    for (int j = 0; j <= d; ++j) out[index_of(d - j, j)] = xp[static_cast<std::size_t>(d - j)] * mp[static_cast<std::size_t>(j)];
  }
}

AffineFrame AffineFrame::spanning(double x_lo, double x_hi, double m_lo, double m_hi) {
  const auto half = [](double lo, double hi) { return hi > lo ? 0.5 * (hi - lo) : 1.0; };
  return {0.5 * (x_lo + x_hi), half(x_lo, x_hi), 0.5 * (m_lo + m_hi), half(m_lo, m_hi)};
}

namespace {

// Coefficients of ((t - center) / scale)^k in powers of t.
std::vector<std::vector<double>> shifted_powers(int degree, double center, double scale) {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(degree) + 1);
  rows[0] = {1.0};
  for (std::size_t k = 1; k < rows.size(); ++k) {
    rows[k].assign(k + 1, 0.0);
    for (std::size_t a = 0; a < k; ++a) {
      rows[k][a + 1] += rows[k - 1][a] / scale;
      rows[k][a] -= rows[k - 1][a] * center / scale;
    }
  }
  return rows;
}

}  // namespace

BivariatePoly to_global(const BivariatePoly& local, const AffineFrame& frame) {
  const int n = local.degree();
  const auto xs = shifted_powers(n, frame.x_center, frame.x_scale);
  const auto ms = shifted_powers(n, frame.m_center, frame.m_scale);
  std::vector<double> out(BivariatePoly::term_count(n), 0.0);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto [i, j] = BivariatePoly::term(k);
    const double c = local.coeffs()[k];
    if (c == 0.0) continue;
    for (int a = 0; a <= i; ++a) {
      for (int b = 0; b <= j; ++b) {
        out[BivariatePoly::index_of(a, b)] +=
            c * xs[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] *
            ms[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)];
      }
    }
  }
  return BivariatePoly(n, std::move(out));
}

}  // namespace tempint
