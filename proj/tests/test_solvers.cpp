#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "stratpol/generators.hpp"
#include "stratpol/rng.hpp"
#include "stratpol/solvers.hpp"
#include "support/fixtures.hpp"

using namespace stratpol;
using namespace stratpol::testing;

TEST_CASE("common step of decimal-cost instances") {
  CHECK(common_step(toy_instance()) == doctest::Approx(0.1));
  auto zero = Instance::from_outcomes({0.5, 0.5}, {0.9, 0.1}, 0.3, {{0.0, 0.0}, {0.0, 0.0}});
  CHECK(common_step(zero) == doctest::Approx(1.0));  // only zero differences
  auto quarters = gen_additive_monotonic(6, 0.5, 0.15, 8, 0.25);
  CHECK(common_step(quarters) == doctest::Approx(0.25));
}

TEST_CASE("common step is absent for unusably fine grids") {
  // an irrational-looking difference rationalizes only with a huge
  // denominator, which the combined-grid cap rejects
  auto inst = Instance::from_outcomes({0.5, 0.5}, {0.9, 0.1}, 0.3,
                                      {{0.0, 1.0 - 1e-7}, {0.70000001, 0.0}});
  CHECK(!common_step(inst, 100).has_value());
}

TEST_CASE("termination bound") {
  CHECK(termination_bound(3, 0.1) == 177146);
  CHECK(termination_bound(2, 1.0) == 3);
  CHECK(termination_bound(1, 0.5) == 0);
  CHECK(termination_bound(50, 0.01) == kCountSaturated);  // overflows; saturates
  CHECK_THROWS_AS(termination_bound(3, 0.3), std::invalid_argument);
}

TEST_CASE("brute force finds the stochastic toy optimum") {
  const auto res = brute_force(toy_instance(), 0.1);
  CHECK(policies_close(res.policy, Policy({1.0, 0.7, 0.0})));
  CHECK(res.utility == doctest::Approx(0.66).epsilon(1e-12));
  CHECK(res.iterations == 1331);
  CHECK(res.exact);
}

TEST_CASE("brute force on one coordinate") {
  auto inst = Instance::from_outcomes({1.0}, {0.8}, 0.3, {{0.0}});
  const auto res = brute_force(inst, 0.5);
  CHECK(res.policy == Policy({1.0}));
  CHECK(res.utility == doctest::Approx(0.5));
}

TEST_CASE("brute force enforces its budget") {
  const auto inst = gen_1d_random(10, 0.5, 0.3, 1);
  CHECK_THROWS_AS(brute_force(inst, 0.1, 1000), BudgetExceeded);
  try {
    brute_force(inst, 0.1, 1000);
  } catch (const BudgetExceeded& e) {
    CHECK(e.policy_count == 25937424601ULL);  // 11^10
  }
  CHECK_THROWS_AS(brute_force(inst, 0.3), std::invalid_argument);  // 0.3 does not divide 1
}

TEST_CASE("candidate values enumerate the per-source thresholds") {
  const auto inst = toy_instance();
  const auto vals = candidate_values(inst, Policy({1.0, 0.5, 0.0}), 1);
  REQUIRE(vals.size() == 4);
  CHECK(vals[0] == doctest::Approx(0.0));
  CHECK(vals[1] == doctest::Approx(0.3));
  CHECK(vals[2] == doctest::Approx(0.7));
  CHECK(vals[3] == doctest::Approx(1.0));
}

TEST_CASE("candidate values with unreachable pairs collapse to the bounds") {
  Rng rng(1);
  const auto inst = gen_1d_random(4, 0.0, 0.3, 2);
  const auto vals = candidate_values(inst, random_policy(rng, 4), 2);
  CHECK(vals == std::vector<double>{0.0, 1.0});
  auto single = Instance::from_outcomes({1.0}, {0.8}, 0.3, {{0.0}});
  CHECK(candidate_values(single, Policy({0.5}), 0) == std::vector<double>{0.0, 1.0});
}

TEST_CASE("solve_coordinate picks the utility-maximizing breakpoint") {
  const auto inst = toy_instance();
  const auto choice = solve_coordinate(inst, Policy({1.0, 0.0, 0.0}), 1);
  CHECK(choice.value == doctest::Approx(0.7));
  CHECK(choice.utility == doctest::Approx(0.66).epsilon(1e-12));
  // candidate utilities along the sweep: 0 -> 0.45, 0.3 -> 0.54, 0.7 -> 0.66, 1 -> 0.63
  CHECK(utility(inst, Policy({1.0, 0.0, 0.0})) == doctest::Approx(0.45));
  CHECK(utility(inst, Policy({1.0, 0.3, 0.0})) == doctest::Approx(0.54));
  CHECK(utility(inst, Policy({1.0, 1.0, 0.0})) == doctest::Approx(0.63));
}

TEST_CASE("solve_coordinate leaves unattractive negative-reward coordinates at zero") {
  auto inst = Instance::from_outcomes({0.5, 0.5}, {0.9, 0.2}, 0.3, {{0.0, kInf}, {kInf, 0.0}});
  const auto choice = solve_coordinate(inst, Policy({1.0, 0.0}), 1);
  CHECK(choice.value == 0.0);
}

TEST_CASE("solve_coordinate never lowers utility and keeps incumbents on ties") {
  Rng rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 2 + trial % 8;
    const auto inst = gen_1d_random(m, 0.6, 0.3, rng.next_u64());
    const auto pol = random_policy(rng, m);
    const std::size_t i = rng.below(m);
    const auto choice = solve_coordinate(inst, pol, i);
    CHECK(choice.utility >= utility(inst, pol) - 1e-12);
    if (choice.value != pol.pi[i]) {
      Policy updated = pol;
      updated.pi[i] = choice.value;
      CHECK(utility(inst, updated) > utility(inst, pol));
    }
  }
}

TEST_CASE("iterative search solves the toy instance from zeros") {
  std::vector<double> trace;
  const auto res = iterative_search(toy_instance(), Policy::zeros(3), 1000, &trace);
  CHECK(res.converged);
  CHECK(res.utility == doctest::Approx(0.66).epsilon(1e-12));
  CHECK(policies_close(res.policy, Policy({1.0, 0.7, 0.0})));
  REQUIRE(!trace.empty());
  CHECK(std::is_sorted(trace.begin(), trace.end()));
  for (std::size_t t = 1; t < trace.size(); ++t) CHECK(trace[t] > trace[t - 1]);
}

TEST_CASE("iterative search separates unreachable coordinates in one sweep") {
  const auto inst = gen_1d_random(7, 0.0, 0.3, 9);
  const auto res = iterative_search(inst);
  CHECK(res.converged);
  CHECK(res.sweeps == 2);  // one changing sweep plus the fixed-point check
  CHECK(res.policy == non_strategic_policy(inst));
}

TEST_CASE("iterative search is idempotent at its fixed point") {
  Rng rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = gen_1d_random(6 + trial % 5, 0.7, 0.3, rng.next_u64());
    const auto first = iterative_search(inst);
    REQUIRE(first.converged);
    const auto again = iterative_search(inst, first.policy);
    CHECK(again.iterations == 0);
    CHECK(again.policy == first.policy);
  }
}

TEST_CASE("parallel search matches the sequential result on separable instances") {
  const auto inst = gen_1d_random(6, 0.0, 0.3, 12);
  const auto seq = iterative_search(inst);
  const auto par = parallel_iterative_search(inst);
  CHECK(par.converged);
  CHECK(par.policy == seq.policy);
}

TEST_CASE("parallel search is deterministic and honors the sweep cap") {
  const auto inst = gen_1d_random(12, 0.8, 0.3, 77);
  const auto a = parallel_iterative_search(inst);
  const auto b = parallel_iterative_search(inst);
  CHECK(a.policy == b.policy);
  CHECK(a.utility == b.utility);
  CHECK(a.sweeps <= 20);
  const auto capped = parallel_iterative_search(inst, Policy::zeros(12), 1);
  CHECK(!capped.converged);
  CHECK(capped.utility >= 0.0);  // the initial policy is part of best-seen
}

TEST_CASE("solver outputs stay inside the unit cube") {
  Rng rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = gen_1d_random(4 + trial % 6, 0.7, 0.3, rng.next_u64());
    for (const auto& res : {iterative_search(inst), parallel_iterative_search(inst)})
      for (double v : res.policy.pi) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
  }
}

TEST_CASE("grid search is out of reach where the coordinate search is routine") {
  // the Cartesian grid explodes with the value count while one coordinate
  // sweep stays polynomial
  const auto inst = gen_1d_random(13, 0.75, 0.3, 21);
  CHECK_THROWS_AS(brute_force(inst, 0.1), BudgetExceeded);
  const auto res = iterative_search(inst);
  CHECK(res.converged);
  const auto big = gen_1d_random(60, 0.75, 0.3, 22);
  CHECK(iterative_search(big).converged);
}

TEST_CASE("grid search dominates the local searches on rational instances") {
  Rng rng(67);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t m = 2 + trial % 5;
    const auto inst = gen_1d_random(m, 0.75, 0.3, rng.next_u64(), 0.2);
    const auto step = common_step(inst);
    REQUIRE(step.has_value());
    const auto brute = brute_force(inst, *step);
    CHECK(brute.exact);
    CHECK(iterative_search(inst).utility <= brute.utility + 1e-12);
    CHECK(parallel_iterative_search(inst).utility <= brute.utility + 1e-12);
  }
}
