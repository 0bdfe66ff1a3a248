#include <doctest.h>

#include <cmath>

#include "stratpol/generators.hpp"
#include "stratpol/solvers.hpp"
#include "support/fixtures.hpp"

using namespace stratpol;
using namespace stratpol::testing;

TEST_CASE("dimacs parsing") {
  const auto f = parse_dimacs("c a comment\np cnf 3 2\n1 -3 0\n2 3 -1 0\n");
  CHECK(f.num_vars == 3);
  REQUIRE(f.num_clauses() == 2);
  CHECK(f.clauses[0] == std::vector<int>{1, -3});
  CHECK(f.clauses[1] == std::vector<int>{2, 3, -1});
  CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n5 0\n"), std::invalid_argument);
}

TEST_CASE("formula evaluation") {
  CnfFormula f;
  f.num_vars = 2;
  f.clauses = {{1, 2}, {-1}};
  CHECK(f.satisfied_by({false, true}));
  CHECK(!f.satisfied_by({true, true}));
  CHECK(formula_satisfiable(f));
  CnfFormula unsat;
  unsat.num_vars = 1;
  unsat.clauses = {{1}, {-1}};
  CHECK(!formula_satisfiable(unsat));
}

TEST_CASE("reduction masses follow the stated proportions and sum to one") {
  CnfFormula f;
  f.num_vars = 1;
  f.clauses = {{1}};
  const auto inst = from_sat(f);
  REQUIRE(inst.size() == 8);  // 7 per variable + 1 clause
  const SatLayout lay = SatLayout::from_meta(inst);
  CHECK(inst.p[lay.z1(0)] == doctest::Approx(2.0 / 3.0));  // 3(s+1)/9 at l=s=1
  CHECK(inst.p[lay.z2(0)] == doctest::Approx(1.0 / 9.0));
  CHECK(inst.p[lay.clause(0)] == doctest::Approx(1.0 / 9.0));
  CHECK(inst.p[lay.y(0)] == 0.0);

  // proportions 3(s+1):1:1:1 with a normalizing total, for any shape
  for (int l = 1; l <= 3; ++l)
    for (int s = 1; s <= 4; ++s) {
      CnfFormula g;
      g.num_vars = l;
      for (int c = 0; c < s; ++c) g.clauses.push_back({1 + (c % l)});
      const auto ginst = from_sat(g);
      double total = 0.0;
      for (double p : ginst.p) total += p;
      CHECK(std::abs(total - 1.0) <= 1e-12);
      const SatLayout glay = SatLayout::from_meta(ginst);
      CHECK(ginst.p[glay.z1(0)] / ginst.p[glay.z2(0)] == doctest::Approx(3.0 * (s + 1)));
    }
}

TEST_CASE("reduction rewards and gadget links") {
  CnfFormula f;
  f.num_vars = 2;
  f.clauses = {{1, -2}};
  const auto inst = from_sat(f, 0.01);
  const SatLayout lay = SatLayout::from_meta(inst);
  CHECK(inst.reward_at(lay.y(0)) == 1.0);
  CHECK(inst.reward_at(lay.a(1)) == 4.0);  // 2(s+1) with s=1
  CHECK(inst.reward_at(lay.z3(0)) == 0.0);

  CHECK(inst.cost_at(lay.z1(0), lay.y(0)) == 0.0);
  CHECK(inst.cost_at(lay.z1(0), lay.yb(0)) == 0.0);
  CHECK(inst.cost_at(lay.z2(1), lay.y(1)) == 0.0);
  CHECK(inst.cost_at(lay.z2(1), lay.a(1)) == doctest::Approx(0.99));
  CHECK(inst.cost_at(lay.z3(0), lay.b(0)) == doctest::Approx(0.99));
  // cross-variable links cost 2; unrelated pairs are unreachable
  CHECK(inst.cost_at(lay.z1(0), lay.y(1)) == 2.0);
  CHECK(inst.cost_at(lay.z2(0), lay.yb(0)) == 2.0);
  CHECK(!(inst.cost_at(lay.y(0), lay.z1(0)) < kInf));
  // clause row: free moves to its literals only
  CHECK(inst.cost_at(lay.clause(0), lay.y(0)) == 0.0);
  CHECK(inst.cost_at(lay.clause(0), lay.yb(1)) == 0.0);
  CHECK(inst.cost_at(lay.clause(0), lay.yb(0)) == 2.0);
  CHECK(inst.cost_at(lay.clause(0), lay.a(0)) == 2.0);

  const auto violations = validate_instance(inst);
  CHECK(!has_errors(violations));  // zero-cost gadget moves are warnings only
}

TEST_CASE("decoding reads complementary literal policies") {
  CnfFormula f;
  f.num_vars = 1;
  f.clauses = {{1}};
  const auto inst = from_sat(f);
  Policy pol = Policy::zeros(inst.size());
  const SatLayout lay = SatLayout::from_meta(inst);
  pol.pi[lay.y(0)] = 1.0;
  const auto decoded = decode_assignment(inst, pol);
  REQUIRE(decoded.has_value());
  CHECK((*decoded)[0] == true);

  pol.pi[lay.yb(0)] = 1.0;  // no longer complementary
  CHECK(!decode_assignment(inst, pol).has_value());
}

TEST_CASE("satisfiable and unsatisfiable single-variable formulas decode differently") {
  CnfFormula sat_f;
  sat_f.num_vars = 1;
  sat_f.clauses = {{1}};
  CnfFormula unsat_f;
  unsat_f.num_vars = 1;
  unsat_f.clauses = {{1}, {-1}};

  for (const auto* f : {&sat_f, &unsat_f}) {
    const auto inst = from_sat(*f);
    const auto res = brute_force(inst, 1.0);
    const auto decoded = decode_assignment(inst, res.policy);
    REQUIRE(decoded.has_value());  // complementary optima exist either way
    CHECK(f->satisfied_by(*decoded) == (f == &sat_f));
  }
}
