#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "stratpol/generators.hpp"
#include "stratpol/instance.hpp"
#include "stratpol/response.hpp"
#include "stratpol/rng.hpp"

namespace stratpol::testing {

/// Three-value instance with outcome-monotonic but non-additive costs whose
/// optimum is stochastic: (1, 0.7, 0) with utility 0.66.
inline Instance toy_instance() {
  return Instance::from_outcomes({0.1, 0.4, 0.5}, {1.0, 0.7, 0.4}, 0.1,
                                 {{0.0, 0.0, 0.0}, {0.3, 0.0, 0.0}, {1.2, 0.3, 0.0}});
}

/// Same masses and outcomes with costs violating outcome monotonicity; every
/// optimum has pi1 = pi3 = 1 and pi2 <= 0.7, utility 0.60.
inline Instance nonmonotone_instance() {
  return Instance::from_outcomes({0.1, 0.4, 0.5}, {1.0, 0.7, 0.4}, 0.1,
                                 {{0.0, 0.2, 0.3}, {0.3, 0.0, 0.7}, {1.2, 1.1, 0.0}});
}

/// Two-value additive monotonic instance; optimal policy (1, 0.7), utility 0.7.
inline Instance two_value_additive_instance() {
  return Instance::from_outcomes({0.5, 0.5}, {0.9, 0.5}, 0.2, {{0.0, 0.0}, {0.3, 0.0}});
}

/// Reference best response: materialize every feasible (gain, reward, index)
/// triple and resolve the argmax by explicit sort. Kept deliberately naive
/// and separate from the library's two-pass scan.
inline ResponseProfile reference_best_response(const Instance& inst, const Policy& pol,
                                               double tie_tol = kTieTol) {
  const std::size_t m = inst.size();
  ResponseProfile out;
  out.target.resize(m);
  out.gain.resize(m);
  out.tied.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    struct Cand {
      double gain;
      double reward;
      std::size_t index;
    };
    std::vector<Cand> cands;
    for (std::size_t k = 0; k < m; ++k) {
      const double c = inst.cost_at(i, k);
      if (!(c < kInf)) continue;
      cands.push_back({pol.pi[k] - c, inst.reward_at(k), k});
    }
    double gmax = -kInf;
    for (const auto& c : cands) gmax = std::max(gmax, c.gain);
    std::vector<Cand> ties;
    for (const auto& c : cands)
      if (c.gain >= gmax - tie_tol) ties.push_back(c);
    std::sort(ties.begin(), ties.end(), [](const Cand& a, const Cand& b) {
      if (a.reward != b.reward) return a.reward > b.reward;
      return a.index < b.index;
    });
    out.target[i] = ties.front().index;
    out.gain[i] = gmax;
    out.tied[i] = ties.size() > 1;
  }
  return out;
}

inline bool policies_close(const Policy& a, const Policy& b, double tol = 1e-9) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a.pi[i] - b.pi[i]) > tol) return false;
  return true;
}

inline Policy random_policy(Rng& rng, std::size_t m) {
  Policy pol = Policy::zeros(m);
  for (std::size_t i = 0; i < m; ++i) pol.pi[i] = rng.uniform01();
  return pol;
}

/// Random member of the binary family on a canonical instance: full
/// acceptance on top, then block-or-drop through the positive-reward prefix,
/// zero beyond it. With loose_top the anchor is a uniform draw instead of 1.
inline Policy random_omb_policy(const Instance& inst, Rng& rng, bool loose_top = false) {
  const std::size_t m = inst.size();
  Policy pol = Policy::zeros(m);
  std::size_t last_positive = 0;
  bool any = false;
  for (std::size_t i = 0; i < m; ++i)
    if (inst.reward_at(i) > 0.0) {
      last_positive = i;
      any = true;
    }
  if (!any) return pol;
  pol.pi[0] = loose_top ? rng.uniform01() : 1.0;
  for (std::size_t i = 1; i <= last_positive; ++i) {
    const double drop = pol.pi[i - 1] - inst.cost_at(i, i - 1);
    const bool block = drop < 0.0 || rng.uniform01() < 0.5;
    pol.pi[i] = block ? pol.pi[i - 1] : drop;
  }
  return pol;
}

/// Exhaustive search over the binary family (anchor 1, block-or-drop, zeros
/// past the positive prefix). Returns the best utility found.
inline double best_omb_utility(const Instance& inst) {
  const std::size_t m = inst.size();
  std::size_t last_positive = 0;
  bool any = false;
  for (std::size_t i = 0; i < m; ++i)
    if (inst.reward_at(i) > 0.0) {
      last_positive = i;
      any = true;
    }
  if (!any) return 0.0;
  Policy pol = Policy::zeros(m);
  pol.pi[0] = 1.0;
  double best = -kInf;
  std::function<void(std::size_t)> recurse = [&](std::size_t i) {
    if (i > last_positive) {
      best = std::max(best, utility(inst, pol));
      return;
    }
    pol.pi[i] = pol.pi[i - 1];
    recurse(i + 1);
    const double drop = pol.pi[i - 1] - inst.cost_at(i, i - 1);
    if (drop >= 0.0) {
      pol.pi[i] = drop;
      recurse(i + 1);
      pol.pi[i] = 0.0;
    }
  };
  recurse(1);
  return best;
}

/// All clauses over two variables that contain no complementary pair:
/// {v1}, {-v1}, {v2}, {-v2}, {v1,v2}, {v1,-v2}, {-v1,v2}, {-v1,-v2}.
inline std::vector<std::vector<int>> two_var_clauses() {
  return {{1}, {-1}, {2}, {-2}, {1, 2}, {1, -2}, {-1, 2}, {-1, -2}};
}

/// Every formula over two variables with up to max_clauses distinct
/// non-tautological clauses.
inline std::vector<CnfFormula> all_two_var_formulas(std::size_t max_clauses = 3) {
  const auto clauses = two_var_clauses();
  std::vector<CnfFormula> formulas;
  std::function<void(std::size_t, std::vector<std::vector<int>>&)> build =
      [&](std::size_t start, std::vector<std::vector<int>>& acc) {
        if (!acc.empty()) {
          CnfFormula f;
          f.num_vars = 2;
          f.clauses = acc;
          formulas.push_back(f);
        }
        if (acc.size() == max_clauses) return;
        for (std::size_t i = start; i < clauses.size(); ++i) {
          acc.push_back(clauses[i]);
          build(i + 1, acc);
          acc.pop_back();
        }
      };
  std::vector<std::vector<int>> acc;
  build(0, acc);
  return formulas;
}

inline bool formula_satisfiable(const CnfFormula& f) {
  const std::size_t n = static_cast<std::size_t>(f.num_vars);
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    std::vector<bool> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = (bits >> i) & 1;
    if (f.satisfied_by(a)) return true;
  }
  return false;
}

}  // namespace stratpol::testing
