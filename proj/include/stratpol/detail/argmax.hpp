#pragma once

#include <cstddef>

#include "stratpol/instance.hpp"

namespace stratpol::detail {

/// Single semantic home of the best-response argmax. Visits every source i
/// and reports (source, winner, max gain, tied). `rewards` is the
/// materialized per-value reward vector, used as the tie-breaking key
/// (ordering by reward and by outcome coincide). First pass finds the top
/// gain, second pass picks the highest-reward, lowest-index destination among
/// the near-ties; both passes skip non-finite costs.
template <typename Fn>
void for_each_best_response(const Instance& inst, const double* pi, const double* rewards,
                            double tie_tol, Fn&& fn) {
  const std::size_t m = inst.size();
  const double* cost = inst.cost.data();
  for (std::size_t i = 0; i < m; ++i) {
    const double* row = cost + i * m;
    double gmax = pi[i];  // staying is always feasible at zero cost
    for (std::size_t k = 0; k < m; ++k) {
      const double c = row[k];
      if (!(c < kInf)) continue;
      const double g = pi[k] - c;
      if (g > gmax) gmax = g;
    }
    const double cutoff = gmax - tie_tol;
    std::size_t winner = i;
    double best_key = -kInf;
    unsigned candidates = 0;
    for (std::size_t k = 0; k < m; ++k) {
      const double c = row[k];
      if (!(c < kInf)) continue;
      if (pi[k] - c >= cutoff) {
        ++candidates;
        if (rewards[k] > best_key) {
          best_key = rewards[k];
          winner = k;
        }
      }
    }
    fn(i, winner, gmax, candidates > 1);
  }
}

/// Utility with caller-provided reward buffer; shared by the solvers' hot
/// loops so every path prices policies identically.
inline double utility_with_rewards(const Instance& inst, const double* pi, const double* rewards,
                                   double tie_tol) {
  double total = 0.0;
  const double* p = inst.p.data();
  for_each_best_response(inst, pi, rewards, tie_tol,
                         [&](std::size_t i, std::size_t t, double, bool) {
                           total += p[i] * pi[t] * rewards[t];
                         });
  return total;
}

}  // namespace stratpol::detail
