#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stratpol/instance.hpp"
#include "stratpol/response.hpp"

namespace stratpol {

/// Outcome of one solver run.
struct SolveResult {
  Policy policy;
  double utility = 0.0;
  std::uint64_t iterations = 0;  // accepted coordinate updates / evaluated policies
  std::uint64_t sweeps = 0;      // full coordinate passes
  std::uint64_t rounds = 0;      // dynamic-programming rounds
  bool converged = false;
  bool exact = false;  // brute force only: grid provably contains an optimum
  double wall_ms = 0.0;
};

/// Largest value dividing 1 and every finite difference cost(i,j) - cost(i,k).
/// Each difference is rationalized by continued fractions with denominator at
/// most max_den; absent when a difference is not rational at that precision or
/// the combined denominator grows past any usable grid size.
std::optional<double> common_step(const Instance& inst, std::uint64_t max_den = 1000000);

/// Iteration bound m^(1 + 1/u_bar) - 1, saturated to the maximum
/// representable count on overflow.
std::uint64_t termination_bound(std::size_t m, double u_bar);

inline constexpr std::uint64_t kCountSaturated = std::numeric_limits<std::uint64_t>::max();

struct BudgetExceeded : std::runtime_error {
  BudgetExceeded(std::string msg, std::uint64_t count)
      : std::runtime_error(std::move(msg)), policy_count(count) {}
  std::uint64_t policy_count;
};

/// Exhaustive search over the grid {0, step, 2*step, ..., 1} per coordinate.
/// step must divide 1. Exact (result.exact) when the grid refines the
/// common-step grid, so every utility breakpoint lies on it; otherwise the
/// result is a lower bound. Throws BudgetExceeded when m * grid^m work units
/// pass the budget.
SolveResult brute_force(const Instance& inst, double step, std::uint64_t budget = 50000000);

/// Values of pi[i] at which the utility, as a function of pi[i] alone, can
/// change slope: {0, 1} and, per source s, the gain of s's best other
/// destination translated back through cost(s,i), clamped to [0,1].
std::vector<double> candidate_values(const Instance& inst, const Policy& pol, std::size_t i);

struct CoordinateChoice {
  double value = 0.0;
  double utility = 0.0;
};

/// Best value for coordinate i with all other coordinates fixed, found by
/// evaluating every candidate value. Ties keep the incumbent value, then the
/// smallest candidate.
CoordinateChoice solve_coordinate(const Instance& inst, const Policy& pol, std::size_t i);

/// Coordinate search: sweeps the coordinates in decreasing-reward order,
/// re-optimizing one at a time, until a full sweep changes nothing. Utility
/// strictly increases across accepted updates, so the search terminates.
/// accepted_utilities, when given, records the utility after every accepted
/// update.
SolveResult iterative_search(const Instance& inst, const Policy& init,
                             std::uint64_t max_sweeps = 1000,
                             std::vector<double>* accepted_utilities = nullptr);
SolveResult iterative_search(const Instance& inst, std::uint64_t max_sweeps = 1000);

/// Jacobi-style variant: every coordinate is re-optimized against the frozen
/// previous-sweep policy and all updates merge at once. No convergence
/// guarantee; returns the best policy seen within the sweep cap.
SolveResult parallel_iterative_search(const Instance& inst, const Policy& init,
                                      std::uint64_t max_sweeps = 20);
SolveResult parallel_iterative_search(const Instance& inst, std::uint64_t max_sweeps = 20);

/// Dynamic-programming heuristic over outcome-monotonic-binary policies.
/// Requires a canonicalized instance with additive, outcome-monotonic costs.
SolveResult dp_search(const Instance& inst);

}  // namespace stratpol
