#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <doctest.h>

#include "support.hpp"
#include "tempint/coeff_io.hpp"
#include "tempint/errors.hpp"
#include "tempint/harness.hpp"
#include "tempint/reference_tables.hpp"

using namespace tempint;
using tempint::testing::Gen;
using tempint::testing::rel_diff;

namespace {

// mpmath quad of exp(-10000/T) over [500, 520] at 40 digits.
constexpr double kSegment = 6.237235317752145440679e-08;

const DeviationReport& row_of(const Comparison& c, const std::string& model) {
  const auto it = std::find_if(c.rows.begin(), c.rows.end(), [&](const auto& r) { return r.model == model; });
  REQUIRE(it != c.rows.end());
  return *it;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("deviation examples") {
  CHECK(std::abs(deviation(Model::from_id(ModelId::G), {-2.0, 10.0})) < 1e-13);
  const auto g4 = report(Model::from_id(ModelId::G4), paper_eval_grid());
  CHECK(g4.eps_max_abs == doctest::Approx(6.18e-7).epsilon(0.05));
  CHECK(std::abs(deviation(Model::from_id(ModelId::G4), g4.argmax)) == g4.eps_max_abs);
  const auto sy = report(Model::from_id(ModelId::SY), arrhenius_grid());
  CHECK(sy.eps_max_abs == doctest::Approx(8.15e-5).epsilon(0.02));
  CHECK_THROWS_AS(deviation(Model::from_id(ModelId::J), {1.0, 10.0}), DomainError);
}

TEST_CASE("report examples") {
  const auto ch4 = report(Model::from_id(ModelId::Ch4), paper_narrow_grid());
  CHECK(ch4.sse == doctest::Approx(1.03e-2).epsilon(0.05));
  CHECK(ch4.eps_max_abs == doctest::Approx(1.88e-2).epsilon(0.05));
  const auto cs = report(Model::from_id(ModelId::Cs), paper_eval_grid());
  CHECK(cs.sse == doctest::Approx(1.02e-2).epsilon(0.05));
  CHECK(cs.eps_max_abs == doctest::Approx(3.60e-2).epsilon(0.05));
  const auto g1 = report(Model::from_id(ModelId::G1), paper_eval_grid());
  CHECK(g1.eps_max_abs == doctest::Approx(1.12e-2).epsilon(0.05));
}

TEST_CASE("aggregates follow from the stored deviations") {
  for (auto id : {ModelId::G2, ModelId::Ch3, ModelId::X}) {
    const auto r = report(Model::from_id(id), paper_eval_grid());
    double sse = 0.0;
    double mx = 0.0;
    for (double e : r.eps) {
      sse += e * e;
      mx = std::max(mx, std::abs(e));
    }
    CHECK(r.sse == sse);
    CHECK(r.eps_max_abs == mx);
    CHECK(r.points.size() == r.eps.size());
  }
}

TEST_CASE("reports do not depend on the thread count") {
  const auto model = Model::from_id(ModelId::G3);
  ::setenv("TEMPINT_THREADS", "1", 1);
  const auto serial = report(model, paper_narrow_grid());
  ::setenv("TEMPINT_THREADS", "7", 1);
  const auto threaded = report(model, paper_narrow_grid());
  ::unsetenv("TEMPINT_THREADS");
  CHECK(serial.eps == threaded.eps);
  CHECK(serial.sse == threaded.sse);
  CHECK(render_csv({"x", {serial}}) == render_csv({"x", {threaded}}));
}

TEST_CASE("ordering at m = 0") {
  const auto c = compare(parse_model_list("G3,O,J,SY", arrhenius_grid().spec), arrhenius_grid());
  CHECK(row_of(c, "G3").eps_max_abs < row_of(c, "O").eps_max_abs);
  CHECK(row_of(c, "O").eps_max_abs < row_of(c, "J").eps_max_abs);
  CHECK(row_of(c, "J").eps_max_abs < row_of(c, "SY").eps_max_abs);
  CHECK(c.rows.front().model == "G3");
}

TEST_CASE("narrow range never does worse than the full range") {
  const auto narrow = compare(parse_model_list("all", paper_narrow_grid().spec), paper_narrow_grid());
  const auto full = compare(parse_model_list("all", paper_eval_grid().spec), paper_eval_grid());
  CHECK(narrow.rows.size() == 18);
  CHECK(full.rows.size() == 18);
  for (const auto& r : narrow.rows) {
    CAPTURE(r.model);
    CHECK(r.eps_max_abs <= row_of(full, r.model).eps_max_abs);
  }
  CHECK(narrow.rows.front().model == "G4");
  CHECK(narrow.rows.front().eps_max_abs == doctest::Approx(5.19e-7).epsilon(0.05));
  for (std::size_t k = 1; k < full.rows.size(); ++k) CHECK(full.rows[k - 1].eps_max_abs <= full.rows[k].eps_max_abs);
}

TEST_CASE("comparison at m = 0 reproduces the published rows") {
  const auto c = compare(parse_model_list("J,O,SY,G1,G2,G3,G4", arrhenius_grid().spec), arrhenius_grid());
  CHECK(c.rows.size() == 7);
  CHECK(row_of(c, "J").sse == doctest::Approx(3.45e-11).epsilon(0.02));
  CHECK(row_of(c, "O").eps_max_abs == doctest::Approx(1.87e-6).epsilon(0.02));
  CHECK(row_of(c, "G3").eps_max_abs == doctest::Approx(8.89e-7).epsilon(0.05));
}

TEST_CASE("single point comparison") {
  const EvalGrid one{"one", {{-2.0, -2.0, 1.0}, {10.0, 10.0, 1.0}}};
  const auto c = compare({Model::from_id(ModelId::G)}, one);
  REQUIRE(c.rows.size() == 1);
  CHECK(c.rows[0].points.size() == 1);
  CHECK(c.rows[0].eps_max_abs < 1e-14);
}

TEST_CASE("model lists") {
  const auto at0 = parse_model_list("all", arrhenius_grid().spec);
  CHECK(at0.size() == 21);
  const auto x_only = parse_model_list("X", paper_eval_grid().spec);
  const auto rx = report(x_only[0], paper_eval_grid());
  CHECK(rx.restricted);
  CHECK(rx.points.size() == 6 * 97);
  CHECK(rx.eps_max_abs == doctest::Approx(6.14e-4).epsilon(0.05));
  CHECK(render_text({"paper-eval", {rx}}).find("X*") != std::string::npos);
  try {
    parse_model_list("J,Nope", arrhenius_grid().spec);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("Ch4") != std::string::npos);
  }
  CHECK_THROWS_AS(report(Model::from_id(ModelId::J), paper_eval_grid()), DomainError);
  CHECK_THROWS_AS(parse_model_list(",", arrhenius_grid().spec), DomainError);
}

TEST_CASE("rendering") {
  const auto c = compare(parse_model_list("J,G4", arrhenius_grid().spec), arrhenius_grid());
  const auto text = render_text(c);
  CHECK(text.find("5.66E-06") != std::string::npos);
  const auto csv = render_csv(c);
  CHECK(csv.rfind("model,grid,points,sse,eps_max,arg_m,arg_x\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  const auto pts = render_points_csv(c.rows[0]);
  CHECK(pts.rfind("model,m,x,g_oracle,g_model,eps\n", 0) == 0);
  CHECK(std::count(pts.begin(), pts.end(), '\n') == 98);
}

TEST_CASE("temperature segment examples") {
  const auto oracle = Model::oracle();
  CHECK(vyazovkin_segment(10000.0, 500.0, 500.0, oracle) == 0.0);
  CHECK(rel_diff(vyazovkin_segment(10000.0, 500.0, 520.0, oracle), kSegment) < 1e-12);
  const double a = vyazovkin_segment(10000.0, 500.0, 520.0, Model::from_id(ModelId::G4));
  const double b = vyazovkin_segment(20000.0, 1000.0, 1040.0, Model::from_id(ModelId::G4));
  CHECK(b == 2.0 * a);
  CHECK(rel_diff(a, kSegment) < 2e-6);
  CHECK_THROWS_AS(vyazovkin_segment(10000.0, 520.0, 500.0, oracle), DomainError);
  CHECK_THROWS_AS(vyazovkin_segment(-1.0, 500.0, 520.0, oracle), DomainError);
  CHECK_THROWS_AS(vyazovkin_segment(10000.0, 0.0, 520.0, oracle), DomainError);
  // x in [250, 300] lies outside [4, 100] for approximants but not for the oracle.
  CHECK_THROWS_AS(vyazovkin_segment(30000.0, 100.0, 120.0, Model::from_id(ModelId::G4)), DomainError);
  CHECK(vyazovkin_segment(30000.0, 100.0, 120.0, oracle) > 0.0);
}

TEST_CASE("temperature segments agree with direct quadrature") {
  Gen gen(701);
  const auto oracle = Model::oracle();
  boost::math::quadrature::tanh_sinh<double> integrator;
  for (int k = 0; k < 25; ++k) {
    const double e_over_r = gen.log_uniform(2e3, 5e4);
    const double t_lo = gen.uniform(e_over_r / 100.0, e_over_r / 4.0);
    const double t_hi = gen.uniform(t_lo, e_over_r / 4.0);
    const double direct = integrator.integrate([&](double t) { return std::exp(-e_over_r / t); }, t_lo, t_hi);
    CAPTURE(e_over_r);
    CAPTURE(t_lo);
    CAPTURE(t_hi);
    CHECK(rel_diff(vyazovkin_segment(e_over_r, t_lo, t_hi, oracle), direct) < 1e-10);
  }
}

TEST_CASE("reference tables reproduce") {
  const auto run = run_reference_tables();
  CHECK(run.all_pass());
  CHECK(run.comparisons.size() == 4);
  CHECK(run.cells.size() == 92);
  const auto csv = render_table_csv(run, "7");
  CHECK(csv.rfind("table,model,grid,metric,published,computed,rel_dev,rel_tol,status\n", 0) == 0);
  CHECK(csv.find(",order,") != std::string::npos);
  CHECK(render_tables_text(run).find("92 of 92") != std::string::npos);
}

TEST_CASE("a corrupted coefficient file fails its cells") {
  const auto dir = tempint::testing::scratch_dir("tables_fault");
  for (const char* name : {"g1.coeff", "g2.coeff", "g3.coeff", "g4.coeff"}) {
    std::filesystem::copy_file(default_coeff_dir() / name, dir / name);
  }
  auto text = tempint::testing::slurp(dir / "g3.coeff");
  const auto at = text.find("0.782330940685156");
  REQUIRE(at != std::string::npos);
  text[at + 3] = '9';
  std::ofstream(dir / "g3.coeff") << text;

  const auto run = run_reference_tables(dir);
  CHECK_FALSE(run.all_pass());
  bool table5_g3 = false;
  for (const auto& cell : run.cells) {
    if (!cell.pass) {
      CAPTURE(cell.model);
      CHECK(cell.model.find("G3") != std::string::npos);
      table5_g3 = table5_g3 || cell.table == "5";
    }
  }
  CHECK(table5_g3);
}

}  // TEST_SUITE
