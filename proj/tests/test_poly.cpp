#include <cmath>
#include <limits>
#include <stdexcept>

#include <doctest.h>

#include "support.hpp"
#include "tempint/bivariate_poly.hpp"
#include "tempint/coeff_io.hpp"
#include "tempint/errors.hpp"
#include "tempint/oracle.hpp"
#include "tempint/rational.hpp"

using namespace tempint;
using tempint::testing::Gen;
using tempint::testing::rel_diff;

namespace {

BivariatePoly random_poly(Gen& gen, int degree) {
  std::vector<double> c(BivariatePoly::term_count(degree));
  for (auto& v : c) v = gen.uniform(-2.0, 2.0);
  return BivariatePoly(degree, std::move(c));
}

}  // namespace

TEST_SUITE("poly") {

TEST_CASE("graded term order") {
  CHECK(BivariatePoly::term_count(0) == 1);
  CHECK(BivariatePoly::term_count(4) == 15);
  CHECK(BivariatePoly::index_of(0, 0) == 0);
  CHECK(BivariatePoly::index_of(1, 0) == 1);
  CHECK(BivariatePoly::index_of(0, 1) == 2);
  CHECK(BivariatePoly::index_of(2, 0) == 3);
  CHECK(BivariatePoly::index_of(1, 1) == 4);
  CHECK(BivariatePoly::index_of(0, 2) == 5);
  for (std::size_t k = 0; k < BivariatePoly::term_count(6); ++k) {
    const auto [i, j] = BivariatePoly::term(k);
    CHECK(BivariatePoly::index_of(i, j) == k);
  }
}

TEST_CASE("evaluation examples") {
  CHECK(BivariatePoly(3)({1.7, 42.0}) == 0.0);
  CHECK(BivariatePoly(3).is_zero());
  const BivariatePoly p(1, {1.0, 2.0, 0.0});
  CHECK(p({-3.3, 3.0}) == 7.0);
  CHECK(p({12.0, 3.0}) == 7.0);
  CHECK(p.coeff(1, 0) == 2.0);
  CHECK(p.coeff(2, 0) == 0.0);

  const auto g1 = bundled_approximant(1);
  CHECK(g1.numer()({0.0, 10.0}) == doctest::Approx(4.123186313329330).epsilon(1e-15));
}

TEST_CASE("evaluation matches the monomial sum") {
  Gen gen(201);
  for (int k = 0; k < 200; ++k) {
    const int degree = gen.integer(0, 6);
    const auto p = random_poly(gen, degree);
    const auto pt = gen.point(-4.0, 4.0, 0.5, 2.0);
    std::vector<double> mono(BivariatePoly::term_count(degree));
    BivariatePoly::monomials(degree, pt, mono);
    double direct = 0.0;
    for (std::size_t t = 0; t < mono.size(); ++t) direct += p.coeffs()[t] * mono[t];
    double scale = 0.0;
    for (std::size_t t = 0; t < mono.size(); ++t) scale += std::abs(p.coeffs()[t] * mono[t]);
    CHECK(std::abs(p(pt) - direct) <= 1e-13 * scale);
  }
}

TEST_CASE("coefficient count must match the degree") {
  CHECK_THROWS_AS(BivariatePoly(2, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("rational examples") {
  Gen gen(202);
  const auto p = random_poly(gen, 2);
  std::vector<double> qc(p.coeffs().begin(), p.coeffs().end());
  qc[0] = 50.0;
  const BivariatePoly q(2, qc);
  const RationalApproximant same(q, q);
  for (int k = 0; k < 50; ++k) CHECK(same.eval_h(gen.point()) == 1.0);
  CHECK(rel_diff(same.eval_g({-2.0, 5.0}), std::exp(-5.0)) < 1e-15);

  const auto g1 = bundled_approximant(1);
  CHECK(g1.eval_h({0.0, 10.0}) ==
        doctest::Approx((0.237276056849810 + 3.88591025647952) / (1 + 3.86946448530584)).epsilon(1e-15));
  CHECK(rel_diff(bundled_approximant(3).eval_h({0.0, 20.0}), h({0.0, 20.0})) < 1.72e-6);
  CHECK(rel_diff(bundled_approximant(4).eval_g({0.0, 50.0}), g_cf({0.0, 50.0})) < 6.18e-7);
  CHECK(rel_diff(bundled_approximant(2).eval_g({2.5, 4.0}), g_cf({2.5, 4.0})) < 6.26e-5);
}

TEST_CASE("invalid rational construction") {
  CHECK_THROWS_AS(RationalApproximant(BivariatePoly(1), BivariatePoly(2, std::vector<double>(6, 1.0))),
                  std::invalid_argument);
  CHECK_THROWS_AS(RationalApproximant(BivariatePoly(1, {1.0, 0.0, 0.0}), BivariatePoly(1)), std::invalid_argument);
}

TEST_CASE("poles raise errors carrying the point") {
  // q = x - 30: positive at the reference point, negative below x = 30.
  const RationalApproximant r(BivariatePoly(1, {1.0, 0.0, 0.0}), BivariatePoly(1, {-30.0, 1.0, 0.0}));
  CHECK(r.eval_h({0.0, 40.0}) == doctest::Approx(0.1));
  try {
    r.eval_h({0.5, 10.0});
    FAIL("expected PoleError");
  } catch (const PoleError& e) {
    CHECK(e.point() == EvalPoint{0.5, 10.0});
  }
  CHECK_THROWS_AS(r.eval_h({0.0, 30.0}), PoleError);
  CHECK_THROWS_AS(r.eval_g({0.0, 30.0}), PoleError);
}

TEST_CASE("scaling by a power of two leaves h bit-identical") {
  Gen gen(203);
  for (int n = 1; n <= 4; ++n) {
    const auto r = bundled_approximant(n);
    for (int trial = 0; trial < 8; ++trial) {
      const double lambda = std::ldexp(gen.integer(0, 1) ? 1.0 : -1.0, gen.integer(-30, 30));
      const RationalApproximant s(r.numer().scaled(lambda), r.denom().scaled(lambda));
      for (int mi = -40; mi <= 40; mi += 4) {
        for (int x = 4; x <= 100; x += 3) {
          const EvalPoint pt{mi / 10.0, static_cast<double>(x)};
          CAPTURE(n);
          CAPTURE(lambda);
          CHECK(r.eval_h(pt) == s.eval_h(pt));
        }
      }
    }
  }
}

TEST_CASE("scaling by any factor stays within the rounding error bound") {
  // Rounding lambda * c perturbs p and q like one more Horner step, so both
  // evaluations sit within gamma_(2n+1) (kappa_p + kappa_q) of the exact ratio.
  constexpr double eps = std::numeric_limits<double>::epsilon() / 2.0;
  Gen gen(204);
  for (int n = 1; n <= 4; ++n) {
    const auto r = bundled_approximant(n);
    const double k = 2.0 * n + 1.0;
    const double gamma = k * eps / (1.0 - k * eps);
    std::vector<double> mono(BivariatePoly::term_count(n));
    auto kappa = [&](const BivariatePoly& p) {
      double abs_sum = 0.0;
      double sum = 0.0;
      for (std::size_t t = 0; t < mono.size(); ++t) {
        abs_sum += std::abs(p.coeffs()[t] * mono[t]);
        sum += p.coeffs()[t] * mono[t];
      }
      return abs_sum / std::abs(sum);
    };
    for (int trial = 0; trial < 8; ++trial) {
      const double lambda = gen.log_uniform(1e-3, 1e3) * (gen.integer(0, 1) ? 1.0 : -1.0);
      const RationalApproximant s(r.numer().scaled(lambda), r.denom().scaled(lambda));
      for (int mi = -40; mi <= 40; mi += 4) {
        for (int x = 4; x <= 100; x += 3) {
          const EvalPoint pt{mi / 10.0, static_cast<double>(x)};
          BivariatePoly::monomials(n, pt, mono);
          const double bound = 2.0 * gamma * (kappa(r.numer()) + kappa(r.denom())) + 4.0 * eps;
          const double a = r.eval_h(pt);
          CAPTURE(n);
          CAPTURE(lambda);
          CAPTURE(pt.m);
          CAPTURE(pt.x);
          CHECK(std::abs(s.eval_h(pt) - a) <= bound * std::abs(a));
        }
      }
    }
  }
}

TEST_CASE("bundled denominators keep one sign over the fine grid") {
  for (int n = 1; n <= 4; ++n) {
    const auto r = bundled_approximant(n);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int mi = -400; mi <= 400; ++mi) {
      for (int xi = 40; xi <= 1000; ++xi) {
        const double q = r.denom()({mi / 100.0, xi / 10.0});
        lo = std::min(lo, q);
        hi = std::max(hi, q);
      }
    }
    CAPTURE(n);
    CHECK(((lo > 0.0 && r.reference_sign() == 1) || (hi < 0.0 && r.reference_sign() == -1)));
  }
}

TEST_CASE("affine frame re-expansion") {
  Gen gen(204);
  for (int k = 0; k < 100; ++k) {
    const int degree = gen.integer(0, 5);
    const auto local = random_poly(gen, degree);
    const auto frame = AffineFrame::spanning(4.0, 100.0, -4.0, 4.0);
    const auto global = to_global(local, frame);
    CHECK(global.degree() == degree);
    const auto pt = gen.point();
    const double a = local(frame.to_local(pt));
    double scale = 0.0;
    for (double c : local.coeffs()) scale += std::abs(c);
    CHECK(std::abs(global(pt) - a) <= 1e-11 * scale);
  }
}

TEST_CASE("spanning frame") {
  const auto f = AffineFrame::spanning(4.0, 100.0, -4.0, 4.0);
  CHECK(f.to_local({-4.0, 4.0}) == EvalPoint{-1.0, -1.0});
  CHECK(f.to_local({4.0, 100.0}) == EvalPoint{1.0, 1.0});
  const auto line = AffineFrame::spanning(4.0, 100.0, -2.0, -2.0);
  CHECK(line.m_scale == 1.0);
  CHECK(line.to_local({-2.0, 52.0}) == EvalPoint{0.0, 0.0});
  const AffineFrame identity;
  const BivariatePoly p(2, {1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
  const auto same = to_global(p, identity);
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) CHECK(same.coeffs()[k] == p.coeffs()[k]);
}

}  // TEST_SUITE
