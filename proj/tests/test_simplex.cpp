#include <catch2/catch_amalgamated.hpp>

#include "normlab/simplex.hpp"

using namespace normlab;

TEST_CASE("simplex solves a textbook maximization exactly") {
  // max 3x + 2y  s.t.  x + y <= 4, x <= 2, x,y >= 0  ->  (2,2), value 10.
  LpProblem<Rat> lp(2);
  lp.objective = {Rat(3), Rat(2)};
  lp.add_row({Rat(1), Rat(1)}, Rel::le, Rat(4));
  lp.add_row({Rat(1), Rat(0)}, Rel::le, Rat(2));
  const auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.value == 10);
  CHECK(sol.x[0] == 2);
  CHECK(sol.x[1] == 2);
}

TEST_CASE("simplex handles equality and >= rows with rational data") {
  // min x + y  s.t.  x + 2y = 1, x >= 1/3  ->  x = 1/3, y = 1/3.
  LpProblem<Rat> lp(2);
  lp.maximize = false;
  lp.objective = {Rat(1), Rat(1)};
  lp.add_row({Rat(1), Rat(2)}, Rel::eq, Rat(1));
  lp.add_row({Rat(1), Rat(0)}, Rel::ge, Rat(1, 3));
  const auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.value == Rat(2, 3));
  CHECK(sol.x[0] == Rat(1, 3));
  CHECK(sol.x[1] == Rat(1, 3));
}

TEST_CASE("simplex reports infeasible and unbounded programs") {
  LpProblem<Rat> infeasible(1);
  infeasible.add_row({Rat(1)}, Rel::le, Rat(-1));
  CHECK(solve_lp(infeasible).status == LpStatus::infeasible);

  LpProblem<Rat> unbounded(1);
  unbounded.objective = {Rat(1)};
  unbounded.add_row({Rat(-1)}, Rel::le, Rat(1));
  CHECK(solve_lp(unbounded).status == LpStatus::unbounded);
}

TEST_CASE("simplex survives the classic cycling example") {
  // Beale's degenerate program; Dantzig pricing cycles without a guard.
  LpProblem<Rat> lp(4);
  lp.objective = {Rat(3, 4), Rat(-150), Rat(1, 50), Rat(-6)};
  lp.add_row({Rat(1, 4), Rat(-60), Rat(-1, 25), Rat(9)}, Rel::le, Rat(0));
  lp.add_row({Rat(1, 2), Rat(-90), Rat(-1, 50), Rat(3)}, Rel::le, Rat(0));
  lp.add_row({Rat(0), Rat(0), Rat(1), Rat(0)}, Rel::le, Rat(1));
  const auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.value == Rat(1, 20));
}

TEST_CASE("simplex double instantiation agrees with the exact one") {
  LpProblem<double> lp(2);
  lp.objective = {3.0, 2.0};
  lp.add_row({1.0, 1.0}, Rel::le, 4.0);
  lp.add_row({1.0, 0.0}, Rel::le, 2.0);
  const auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.value == Catch::Approx(10.0));
}
