#pragma once

#include <vector>

#include "stratpol/instance.hpp"

namespace stratpol {

/// Best response of every feature value to a published policy.
struct ResponseProfile {
  std::vector<std::size_t> target;  // argmax destination per source value
  std::vector<double> gain;         // max_k pi[k] - cost(i,k) per source
  std::vector<bool> tied;           // argmax was a tie resolved by the outcome rule
};

/// Computes each value's best response: the finite-cost destination k
/// maximizing pi[k] - cost(i,k). Staying is always feasible at zero cost.
/// Ties within tie_tol go to the destination with the highest reward
/// (equivalently the highest outcome), then the lowest index.
ResponseProfile best_response(const Instance& inst, const Policy& pol, double tie_tol = kTieTol);

/// Feature distribution after every value best-responds: mass of source i
/// moves to target(i).
std::vector<double> induced_distribution(const Instance& inst, const Policy& pol,
                                         double tie_tol = kTieTol);

/// Expected profit of the policy once the population has best-responded:
/// sum over sources i of p[i] * pi[t(i)] * reward[t(i)].
double utility(const Instance& inst, const Policy& pol, double tie_tol = kTieTol);

/// Threshold policy that is optimal when nobody moves: accept value i iff its
/// reward is nonnegative.
Policy non_strategic_policy(const Instance& inst);

struct PolicyFamilyReport {
  /// Higher outcome never gets a lower acceptance probability (weak form;
  /// plateaus of equal values are allowed).
  bool weakly_outcome_monotonic = false;
  /// Every consecutive positive-reward value either repeats its predecessor
  /// or drops by exactly the adjacent movement cost.
  bool outcome_monotonic_binary = false;
  /// Like the binary family but the drop may equal the cost of a multi-step
  /// move ending at the predecessor.
  bool subadditive_family = false;
};

/// Family membership checks for a policy on a canonicalized instance.
PolicyFamilyReport policy_family_report(const Instance& inst, const Policy& pol,
                                        double tol = kTieTol);

/// Best response specialized to outcome-monotonic-binary policies under
/// additive outcome-monotonic costs, computed in one pass per source instead
/// of scanning all destinations: mass climbs to the nearest "top" (a value
/// whose policy entry repeats its positive predecessor, or value 0), and a
/// nonpositive-reward source moves only if the top is affordable.
/// Agrees with best_response on every valid input; throws std::invalid_argument
/// when the preconditions are detectably false.
ResponseProfile best_response_omb(const Instance& inst, const Policy& pol,
                                  double tie_tol = kTieTol);

/// Utility evaluated through best_response_omb's single pass.
double omb_policy_utility(const Instance& inst, const Policy& pol, double tie_tol = kTieTol);

}  // namespace stratpol
