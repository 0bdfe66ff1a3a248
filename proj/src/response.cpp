#include "stratpol/response.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stratpol/detail/argmax.hpp"

namespace stratpol {

ResponseProfile best_response(const Instance& inst, const Policy& pol, double tie_tol) {
  const std::size_t m = inst.size();
  if (pol.size() != m) throw std::invalid_argument("policy length differs from instance size");
  const std::vector<double> rw = inst.rewards();
  ResponseProfile out;
  out.target.resize(m);
  out.gain.resize(m);
  out.tied.resize(m);
  detail::for_each_best_response(inst, pol.pi.data(), rw.data(), tie_tol,
                                 [&](std::size_t i, std::size_t t, double g, bool tie) {
                                   out.target[i] = t;
                                   out.gain[i] = g;
                                   out.tied[i] = tie;
                                 });
  return out;
}

std::vector<double> induced_distribution(const Instance& inst, const Policy& pol, double tie_tol) {
  const std::size_t m = inst.size();
  if (pol.size() != m) throw std::invalid_argument("policy length differs from instance size");
  const std::vector<double> rw = inst.rewards();
  std::vector<double> induced(m, 0.0);
  detail::for_each_best_response(inst, pol.pi.data(), rw.data(), tie_tol,
                                 [&](std::size_t i, std::size_t t, double, bool) {
                                   induced[t] += inst.p[i];
                                 });
  return induced;
}

double utility(const Instance& inst, const Policy& pol, double tie_tol) {
  const std::size_t m = inst.size();
  if (pol.size() != m) throw std::invalid_argument("policy length differs from instance size");
  const std::vector<double> rw = inst.rewards();
  return detail::utility_with_rewards(inst, pol.pi.data(), rw.data(), tie_tol);
}

Policy non_strategic_policy(const Instance& inst) {
  Policy pol = Policy::zeros(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i)
    if (inst.reward_at(i) >= 0.0) pol.pi[i] = 1.0;
  return pol;
}

PolicyFamilyReport policy_family_report(const Instance& inst, const Policy& pol, double tol) {
  const std::size_t m = inst.size();
  if (pol.size() != m) throw std::invalid_argument("policy length differs from instance size");
  if (!is_canonical(inst))
    throw std::invalid_argument("policy_family_report requires a canonicalized instance");
  const std::vector<double> rw = inst.rewards();

  PolicyFamilyReport rep;
  rep.weakly_outcome_monotonic = true;
  for (std::size_t i = 0; i < m && rep.weakly_outcome_monotonic; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const double key_i = inst.q ? (*inst.q)[i] : rw[i];
      const double key_j = inst.q ? (*inst.q)[j] : rw[j];
      if (key_i > key_j && pol.pi[i] < pol.pi[j] - tol) {
        rep.weakly_outcome_monotonic = false;
        break;
      }
    }

  rep.outcome_monotonic_binary = true;
  rep.subadditive_family = true;
  for (std::size_t i = 1; i < m; ++i) {
    if (!(rw[i] > 0.0)) continue;
    const double prev = pol.pi[i - 1];
    const double cur = pol.pi[i];
    const bool repeats = std::abs(cur - prev) <= tol;
    const bool adjacent_drop = std::abs(cur - (prev - inst.cost_at(i, i - 1))) <= tol;
    if (!repeats && !adjacent_drop) rep.outcome_monotonic_binary = false;

    // Multi-step variant: the drop may equal the cost of reaching i-1 from
    // any value in [i, k], where k is the deepest value that can still
    // afford the move to i-1 at a positive residual.
    bool multi = repeats;
    std::size_t deepest = i;
    bool affordable = false;
    for (std::size_t j = i; j < m; ++j) {
      const double c = inst.cost_at(j, i - 1);
      if (c < kInf && prev - c > tol) {
        deepest = j;
        affordable = true;
      }
    }
    if (affordable) {
      for (std::size_t j = i; j <= deepest && !multi; ++j) {
        const double c = inst.cost_at(j, i - 1);
        if (c < kInf && std::abs(cur - (prev - c)) <= tol) multi = true;
      }
    }
    if (!multi) rep.subadditive_family = false;
  }
  return rep;
}

namespace {

// Nearest index t <= i at which upward movement stops: value 0, or a value
// whose policy entry repeats its predecessor at a positive level. Zero-valued
// plateaus do not stop movement originating below them.
std::vector<std::size_t> climb_targets(const Policy& pol, double tol) {
  std::vector<std::size_t> top(pol.size());
  std::size_t cur = 0;
  for (std::size_t k = 0; k < pol.size(); ++k) {
    const bool full = pol.pi[k] >= 1.0 - tol;
    const bool positive_repeat =
        k > 0 && std::abs(pol.pi[k] - pol.pi[k - 1]) <= tol && pol.pi[k] > tol;
    if (k > 0 && (full || positive_repeat)) cur = k;
    top[k] = cur;
  }
  return top;
}

}  // namespace

ResponseProfile best_response_omb(const Instance& inst, const Policy& pol, double tie_tol) {
  const std::size_t m = inst.size();
  if (pol.size() != m) throw std::invalid_argument("policy length differs from instance size");
  if (!is_canonical(inst))
    throw std::invalid_argument("best_response_omb requires a canonicalized instance");
  {
    const CostProfile prof = cost_profile(inst, tie_tol);
    if (!prof.additive || !prof.outcome_monotonic)
      throw std::invalid_argument("best_response_omb requires additive outcome-monotonic costs");
    const PolicyFamilyReport rep = policy_family_report(inst, pol, tie_tol);
    if (!rep.outcome_monotonic_binary)
      throw std::invalid_argument("best_response_omb requires an outcome-monotonic-binary policy");
  }

  const std::vector<std::size_t> top = climb_targets(pol, tie_tol);
  ResponseProfile out;
  out.target.resize(m);
  out.gain.resize(m);
  out.tied.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t t = top[i];
    const double stay_gain = pol.pi[i];
    if (t == i) {
      out.target[i] = i;
      out.gain[i] = stay_gain;
      out.tied[i] = false;
      continue;
    }
    const double climb_gain = pol.pi[t] - inst.cost_at(i, t);
    // Movement happens on ties as well: equal gains resolve to the higher
    // outcome, which is the climb target.
    const bool moves = climb_gain >= stay_gain - tie_tol;
    out.target[i] = moves ? t : i;
    out.gain[i] = std::max(stay_gain, climb_gain);
    out.tied[i] = std::abs(climb_gain - stay_gain) <= tie_tol;
  }
  return out;
}

double omb_policy_utility(const Instance& inst, const Policy& pol, double tie_tol) {
  const ResponseProfile prof = best_response_omb(inst, pol, tie_tol);
  double total = 0.0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const std::size_t t = prof.target[i];
    total += inst.p[i] * pol.pi[t] * inst.reward_at(t);
  }
  return total;
}

}  // namespace stratpol
