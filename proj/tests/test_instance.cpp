#include <doctest.h>

#include "stratpol/generators.hpp"
#include "stratpol/instance.hpp"
#include "support/fixtures.hpp"

using namespace stratpol;
using namespace stratpol::testing;

TEST_CASE("toy instance validates without errors") {
  const auto violations = validate_instance(toy_instance());
  CHECK(!has_errors(violations));
  // its costs break the triangle inequality (0.3 + 0.3 < 1.2), which is a warning
  bool triangle_warned = false;
  for (const auto& v : violations)
    if (v.severity == Severity::kWarning && v.message.find("triangle") != std::string::npos)
      triangle_warned = true;
  CHECK(triangle_warned);
}

TEST_CASE("mass normalization is an error") {
  auto inst = Instance::from_outcomes({0.5, 0.6}, {0.5, 0.5}, 0.3, {{0.0, 1.0}, {1.0, 0.0}});
  const auto violations = validate_instance(inst);
  REQUIRE(has_errors(violations));
  bool found = false;
  for (const auto& v : violations)
    if (v.message.find("mass sums to 1.1") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("zero-cost move to a better value is flagged") {
  auto inst = Instance::from_outcomes({0.5, 0.5}, {0.4, 0.9}, 0.3, {{0.0, 0.0}, {1.0, 0.0}});
  const auto violations = validate_instance(inst);
  CHECK(!has_errors(violations));  // assumption violations are warnings
  bool found = false;
  for (const auto& v : violations)
    if (v.message.find("zero-cost move") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("structural defects are errors") {
  Instance inst = toy_instance();
  inst.gamma = 1.5;
  CHECK(has_errors(validate_instance(inst)));

  Instance both = toy_instance();
  both.reward = std::vector<double>{0.1, 0.2, 0.3};
  CHECK(has_errors(validate_instance(both)));

  Instance diag = toy_instance();
  diag.cost_at(1, 1) = 0.2;
  CHECK(has_errors(validate_instance(diag)));
}

TEST_CASE("canonicalize sorts by decreasing outcome") {
  auto inst = Instance::from_outcomes({0.2, 0.3, 0.5}, {0.4, 1.0, 0.7}, 0.1,
                                      {{0.0, 1.0, 2.0}, {3.0, 0.0, 4.0}, {5.0, 6.0, 0.0}});
  const auto canon = canonicalize(inst);
  CHECK(canon.order == std::vector<std::size_t>{1, 2, 0});
  CHECK(*canon.instance.q == std::vector<double>{1.0, 0.7, 0.4});
  CHECK(canon.instance.p == std::vector<double>{0.3, 0.5, 0.2});
  // cost rows and columns permute together: new (0,1) was old (1,2)
  CHECK(canon.instance.cost_at(0, 1) == 4.0);
  CHECK(canon.instance.cost_at(2, 0) == 1.0);
  CHECK(is_canonical(canon.instance));
}

TEST_CASE("canonicalize is stable on ties and identity on sorted input") {
  const auto sorted = canonicalize(toy_instance());
  CHECK(sorted.order == std::vector<std::size_t>{0, 1, 2});

  auto tied = Instance::from_outcomes({0.5, 0.5}, {0.5, 0.5}, 0.2, {{0.0, 1.0}, {1.0, 0.0}});
  CHECK(canonicalize(tied).order == std::vector<std::size_t>{0, 1});
}

TEST_CASE("canonicalize rejects reward-form instances") {
  auto inst = Instance::from_rewards({1.0}, {0.5}, 0.5, {{0.0}});
  CHECK_THROWS_AS(canonicalize(inst), std::invalid_argument);
}

TEST_CASE("cost profile of the generated additive family") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const auto inst = gen_additive_monotonic(8, 0.3, 0.15, seed);
    const auto prof = cost_profile(inst);
    CHECK(prof.additive);
    CHECK(prof.outcome_monotonic);
    CHECK(prof.positive_improvement);
    CHECK(prof.triangle);  // additivity implies the triangle inequality
  }
}

TEST_CASE("cost profile flags the non-monotone counterexample") {
  const auto prof = cost_profile(nonmonotone_instance());
  CHECK(!prof.outcome_monotonic);
}

TEST_CASE("toy instance is monotone but not additive") {
  const auto prof = cost_profile(toy_instance());
  CHECK(prof.outcome_monotonic);
  CHECK(!prof.additive);
  CHECK(!prof.triangle);
}

TEST_CASE("all-zero off-diagonal costs fail positive improvement") {
  auto inst = Instance::from_outcomes({0.5, 0.5}, {0.9, 0.1}, 0.3, {{0.0, 0.0}, {0.0, 0.0}});
  CHECK(!cost_profile(inst).positive_improvement);
}
