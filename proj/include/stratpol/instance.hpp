#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stratpol {

/// Tolerance used for every comparison that gates behavior: argmax ties,
/// blocking detection, policy-family membership.
inline constexpr double kTieTol = 1e-9;

/// Tolerance for probability-mass identities.
inline constexpr double kMassTol = 1e-12;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Decision policy over discrete feature values: pi[i] is the probability of
/// a positive decision for value i.
struct Policy {
  std::vector<double> pi;

  Policy() = default;
  explicit Policy(std::vector<double> values) : pi(std::move(values)) {}

  static Policy zeros(std::size_t m) { return Policy(std::vector<double>(m, 0.0)); }

  std::size_t size() const { return pi.size(); }
  double operator[](std::size_t i) const { return pi[i]; }

  friend bool operator==(const Policy& a, const Policy& b) { return a.pi == b.pi; }
};

/// Discrete population subject to a published decision policy.
///
/// Holds the mass of every feature value, either the outcome vector q
/// (q[i] = P(y=1 | x_i)) or an explicit per-value reward vector, the decision
/// cost gamma, and the m-by-m matrix of movement costs (nonnegative, zero on
/// the diagonal, +inf for unreachable pairs). Exactly one of q / reward is
/// present; with q present the reward of value i is q[i] - gamma.
struct Instance {
  std::vector<double> p;
  std::optional<std::vector<double>> q;
  std::optional<std::vector<double>> reward;
  double gamma = 0.0;
  std::vector<double> cost;  // row-major m x m
  std::map<std::string, std::string> meta;

  static Instance from_outcomes(std::vector<double> p, std::vector<double> q, double gamma,
                                std::vector<std::vector<double>> cost);
  static Instance from_rewards(std::vector<double> p, std::vector<double> reward, double gamma,
                               std::vector<std::vector<double>> cost);

  std::size_t size() const { return p.size(); }

  double cost_at(std::size_t i, std::size_t j) const { return cost[i * p.size() + j]; }
  double& cost_at(std::size_t i, std::size_t j) { return cost[i * p.size() + j]; }

  /// Per-acceptance expected profit of value i: q[i] - gamma, or the explicit
  /// reward entry.
  double reward_at(std::size_t i) const { return q ? (*q)[i] - gamma : (*reward)[i]; }

  std::vector<double> rewards() const;
};

enum class Severity { kWarning, kError };

struct Violation {
  Severity severity;
  std::string message;
};

/// Checks the instance invariants (mass normalization, value ranges, zero
/// diagonal, nonnegative costs) and the modelling assumptions. Structural
/// invariant failures are errors; assumption failures -- zero-cost moves to
/// weakly better values, triangle-inequality violations -- are warnings, since
/// legitimate constructions (the satisfiability reduction in particular)
/// violate them on purpose. Diagnostics are data: this never throws.
std::vector<Violation> validate_instance(const Instance& inst, double tol = kMassTol);

inline bool has_errors(const std::vector<Violation>& v) {
  for (const auto& d : v)
    if (d.severity == Severity::kError) return true;
  return false;
}

struct Canonicalized {
  Instance instance;
  std::vector<std::size_t> order;  // order[new_index] = old_index
};

/// Reindexes the feature values so that q is non-increasing (stable on ties)
/// and applies the permutation to p and to cost rows and columns.
/// Requires q; reward-form instances carry no outcome ordering.
Canonicalized canonicalize(const Instance& inst);

/// True when q (reward, for reward-form instances) is non-increasing.
bool is_canonical(const Instance& inst);

/// Classification of a cost matrix against the modelling assumptions.
struct CostProfile {
  bool triangle = false;
  bool additive = false;
  bool outcome_monotonic = false;
  bool positive_improvement = false;
  double tolerance = kTieTol;
};

/// Classifies the cost matrix: triangle inequality; additivity along the
/// outcome order (c(i,j) = c(i,k) + c(k,j) for every improving chain);
/// outcome monotonicity (improving further costs strictly more, worsening is
/// free); strict positivity of improving moves.
CostProfile cost_profile(const Instance& inst, double tol = kTieTol);

}  // namespace stratpol
