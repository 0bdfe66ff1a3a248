#include "stratpol/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace stratpol {

namespace {

std::vector<double> flatten(std::vector<std::vector<double>> rows, std::size_t m) {
  if (rows.size() != m) throw std::invalid_argument("cost matrix must have m rows");
  std::vector<double> flat;
  flat.reserve(m * m);
  for (const auto& row : rows) {
    if (row.size() != m) throw std::invalid_argument("cost matrix must be square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return flat;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

Instance Instance::from_outcomes(std::vector<double> p, std::vector<double> q, double gamma,
                                 std::vector<std::vector<double>> cost) {
  const std::size_t m = p.size();
  if (q.size() != m) throw std::invalid_argument("p and q must have equal length");
  Instance inst;
  inst.p = std::move(p);
  inst.q = std::move(q);
  inst.gamma = gamma;
  inst.cost = flatten(std::move(cost), m);
  return inst;
}

Instance Instance::from_rewards(std::vector<double> p, std::vector<double> reward, double gamma,
                                std::vector<std::vector<double>> cost) {
  const std::size_t m = p.size();
  if (reward.size() != m) throw std::invalid_argument("p and reward must have equal length");
  Instance inst;
  inst.p = std::move(p);
  inst.reward = std::move(reward);
  inst.gamma = gamma;
  inst.cost = flatten(std::move(cost), m);
  return inst;
}

std::vector<double> Instance::rewards() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = reward_at(i);
  return out;
}

std::vector<Violation> validate_instance(const Instance& inst, double tol) {
  std::vector<Violation> out;
  const std::size_t m = inst.size();
  auto error = [&](std::string msg) { out.push_back({Severity::kError, std::move(msg)}); };
  auto warning = [&](std::string msg) { out.push_back({Severity::kWarning, std::move(msg)}); };

  if (m == 0) {
    error("instance has no feature values");
    return out;
  }
  if (inst.q.has_value() == inst.reward.has_value())
    error("exactly one of q / reward must be present");
  if (inst.q && inst.q->size() != m) error("q length differs from m");
  if (inst.reward && inst.reward->size() != m) error("reward length differs from m");
  if (inst.cost.size() != m * m) error("cost matrix is not m x m");
  if (!out.empty()) return out;  // shape errors make the value checks unsafe

  double mass = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double pi_mass = inst.p[i];
    if (!(pi_mass >= 0.0)) error("p[" + std::to_string(i) + "] is negative or NaN");
    mass += pi_mass;
  }
  if (std::abs(mass - 1.0) > tol) error("mass sums to " + fmt(mass));

  if (inst.q) {
    for (std::size_t i = 0; i < m; ++i) {
      const double qi = (*inst.q)[i];
      if (!(qi >= 0.0 && qi <= 1.0)) error("q[" + std::to_string(i) + "] outside [0,1]");
    }
  }
  if (!(inst.gamma > 0.0 && inst.gamma < 1.0)) error("gamma outside (0,1)");

  for (std::size_t i = 0; i < m; ++i) {
    if (inst.cost_at(i, i) != 0.0) error("cost[" + std::to_string(i) + "][" + std::to_string(i) + "] is nonzero");
    for (std::size_t j = 0; j < m; ++j) {
      const double c = inst.cost_at(i, j);
      if (std::isnan(c) || c < 0.0)
        error("cost[" + std::to_string(i) + "][" + std::to_string(j) + "] is negative or NaN");
    }
  }
  if (has_errors(out)) return out;

  // Zero-cost moves to weakly better values break the movement-effort
  // assumption; reductions do this deliberately, so it is a warning.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      if (inst.cost_at(i, j) <= 0.0 && inst.reward_at(j) >= inst.reward_at(i))
        warning("zero-cost move " + std::to_string(i) + "->" + std::to_string(j) +
                " to a weakly better value");
    }
  }

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        const double via = inst.cost_at(i, j) + inst.cost_at(j, k);
        if (via < inst.cost_at(i, k) - kTieTol) {
          warning("triangle inequality fails on (" + std::to_string(i) + "," + std::to_string(j) +
                  "," + std::to_string(k) + ")");
          goto done_triangle;  // one diagnostic is enough for a cubic scan
        }
      }
    }
  }
done_triangle:
  return out;
}

Canonicalized canonicalize(const Instance& inst) {
  if (!inst.q)
    throw std::invalid_argument("canonicalize requires the outcome vector q");
  const std::size_t m = inst.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return (*inst.q)[a] > (*inst.q)[b]; });

  Instance out;
  out.gamma = inst.gamma;
  out.meta = inst.meta;
  out.p.resize(m);
  out.q = std::vector<double>(m);
  out.cost.resize(m * m);
  for (std::size_t ni = 0; ni < m; ++ni) {
    out.p[ni] = inst.p[order[ni]];
    (*out.q)[ni] = (*inst.q)[order[ni]];
    for (std::size_t nj = 0; nj < m; ++nj) out.cost[ni * m + nj] = inst.cost_at(order[ni], order[nj]);
  }
  return {std::move(out), std::move(order)};
}

bool is_canonical(const Instance& inst) {
  for (std::size_t i = 1; i < inst.size(); ++i) {
    const double prev = inst.q ? (*inst.q)[i - 1] : inst.reward_at(i - 1);
    const double cur = inst.q ? (*inst.q)[i] : inst.reward_at(i);
    if (cur > prev) return false;
  }
  return true;
}

CostProfile cost_profile(const Instance& inst, double tol) {
  const std::size_t m = inst.size();
  CostProfile prof;
  prof.tolerance = tol;

  // All checks run in outcome order (highest reward first).
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return inst.reward_at(a) > inst.reward_at(b);
  });
  auto c = [&](std::size_t a, std::size_t b) { return inst.cost_at(order[a], order[b]); };
  auto rw = [&](std::size_t a) { return inst.reward_at(order[a]); };

  prof.triangle = true;
  for (std::size_t i = 0; i < m && prof.triangle; ++i)
    for (std::size_t j = 0; j < m && prof.triangle; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        const double via = inst.cost_at(i, j) + inst.cost_at(j, k);
        if (via < inst.cost_at(i, k) - tol) {
          prof.triangle = false;
          break;
        }
      }

  prof.positive_improvement = true;
  for (std::size_t i = 0; i < m && prof.positive_improvement; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      if (inst.reward_at(j) >= inst.reward_at(i) && inst.cost_at(i, j) <= tol) {
        prof.positive_improvement = false;
        break;
      }
    }

  // Monotonicity: worsening is free exactly when the destination outcome is
  // strictly lower; improving further (or from further below) costs strictly
  // more along every strictly ordered chain.
  prof.outcome_monotonic = true;
  for (std::size_t a = 0; a < m && prof.outcome_monotonic; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      const bool worsening = rw(a) > rw(b) + tol;
      const double cab = c(a, b);
      // worsening must be free; improving must be strictly positive and real
      const bool ok = worsening ? (cab <= tol) : (cab > tol && cab < kInf);
      if (!ok) {
        prof.outcome_monotonic = false;
        break;
      }
    }
  if (prof.outcome_monotonic) {
    // improving costs are finite past this point
    for (std::size_t i = 0; i < m && prof.outcome_monotonic; ++i)
      for (std::size_t j = 0; j < i; ++j) {
        if (!(rw(j) > rw(i) + tol)) continue;
        for (std::size_t k = 0; k < j; ++k) {
          if (!(rw(k) > rw(j) + tol)) continue;
          const bool nearer_target_cheaper = c(i, j) < c(i, k) - tol;
          const bool nearer_source_cheaper = c(j, k) < c(i, k) - tol;
          if (!nearer_target_cheaper || !nearer_source_cheaper) {
            prof.outcome_monotonic = false;
            break;
          }
        }
      }
  }

  prof.additive = true;
  for (std::size_t i = 0; i < m && prof.additive; ++i)
    for (std::size_t k = 0; k < i && prof.additive; ++k)
      for (std::size_t j = 0; j < k; ++j) {
        const double direct = c(i, j);
        const double via = c(i, k) + c(k, j);
        const bool direct_fin = direct < kInf;
        const bool via_fin = via < kInf;
        if (direct_fin != via_fin || (direct_fin && std::abs(direct - via) > tol)) {
          prof.additive = false;
          break;
        }
      }

  return prof;
}

}  // namespace stratpol
