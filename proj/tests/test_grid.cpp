#include <doctest.h>

#include "tempint/errors.hpp"
#include "tempint/grid.hpp"

using namespace tempint;

TEST_SUITE("grid") {

TEST_CASE("preset cardinalities") {
  CHECK(paper_eval_grid().spec.size() == 7857);
  CHECK(paper_eval_grid().spec.m.count() == 81);
  CHECK(paper_eval_grid().spec.x.count() == 97);
  CHECK(paper_narrow_grid().spec.size() == 41 * 97);
  CHECK(arrhenius_grid().spec.size() == 97);
  CHECK(coarse_grid().spec.size() == 17 * 25);
}

TEST_CASE("axis values hit both endpoints") {
  const auto m = paper_eval_grid().spec.m.values();
  CHECK(m.front() == -4.0);
  CHECK(m.back() == 4.0);
  CHECK(m[40] == 0.0);
  CHECK(m[21] == doctest::Approx(-1.9).epsilon(1e-15));
  const auto narrow = paper_narrow_grid().spec.m.values();
  CHECK(narrow.front() == -1.5);
  CHECK(narrow.back() == 2.5);
}

TEST_CASE("points run m outermost") {
  const auto pts = arrhenius_grid().spec.points();
  CHECK(pts.front() == EvalPoint{0.0, 4.0});
  CHECK(pts.back() == EvalPoint{0.0, 100.0});
  const auto eval = paper_eval_grid().spec.points();
  CHECK(eval[1] == EvalPoint{-4.0, 5.0});
  CHECK(eval[97].x == 4.0);
  CHECK(eval[97].m == doctest::Approx(-3.9));
}

TEST_CASE("refinement") {
  const auto fine = paper_eval_grid().spec.refined(4);
  CHECK(fine.m.count() == 321);
  CHECK(fine.x.count() == 385);
  CHECK(paper_eval_grid().spec.refined(1).size() == 7857);
  CHECK_THROWS_AS(paper_eval_grid().spec.refined(0), DomainError);
}

TEST_CASE("grid text") {
  CHECK(parse_grid("paper-eval").name == "paper-eval");
  CHECK(parse_grid("paper-narrow").spec.size() == 3977);
  CHECK(parse_grid("arrhenius").spec.size() == 97);
  CHECK(parse_grid("coarse").spec.size() == coarse_grid().spec.size());
  const auto line = parse_grid("m=-2:-2:1,x=4:100:1");
  CHECK(line.spec.size() == 97);
  const auto custom = parse_grid("x=10:20:2,m=0:1:0.5");
  CHECK(custom.spec.m.count() == 3);
  CHECK(custom.spec.x.count() == 6);
  CHECK(parse_grid(paper_eval_grid().spec.to_string()).spec.size() == 7857);
}

TEST_CASE("bad grid text") {
  CHECK_THROWS_AS(parse_grid("nope"), ParseError);
  CHECK_THROWS_AS(parse_grid("m=0:1,x=4:5:1"), ParseError);
  CHECK_THROWS_AS(parse_grid("m=0:1:a,x=4:5:1"), ParseError);
  CHECK_THROWS_AS(parse_grid("m=0:1:1,q=4:5:1"), ParseError);
  CHECK_THROWS(parse_grid("m=1:0:1,x=4:5:1"));
  CHECK_THROWS(parse_grid("m=0:1:0,x=4:5:1"));
  CHECK_THROWS(parse_grid("m=0:1:1,x=0:5:1"));
}

TEST_CASE("validation") {
  GridSpec g{{0.0, 1.0, 0.5}, {4.0, 5.0, 1.0}};
  CHECK_NOTHROW(g.validate());
  g.x.lo = -1.0;
  CHECK_THROWS_AS(g.validate(), DomainError);
  g = {{1.0, 0.0, 0.5}, {4.0, 5.0, 1.0}};
  CHECK_THROWS_AS(g.validate(), DomainError);
  g = {{0.0, 1.0, -0.5}, {4.0, 5.0, 1.0}};
  CHECK_THROWS_AS(g.validate(), DomainError);
}

}  // TEST_SUITE
