#include "stratpol/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>

#include "stratpol/detail/argmax.hpp"

namespace stratpol {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Utility improvements below this are treated as noise; coordinate updates
// are only accepted past it, which is what makes the sweep loop terminate.
constexpr double kImprovementEps = 1e-12;

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;  // positive, lowest terms
  friend bool operator<(const Fraction& a, const Fraction& b) {
    return a.num != b.num ? a.num < b.num : a.den < b.den;
  }
};

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

/// Best rational approximation of x >= 0 by continued-fraction convergents
/// with denominator at most max_den; absent when no convergent lands within
/// tol of x.
std::optional<Fraction> rationalize(double x, std::uint64_t max_den, double tol) {
  std::int64_t h_prev = 1, h_prev2 = 0;
  std::int64_t k_prev = 0, k_prev2 = 1;
  double rest = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double floor_part = std::floor(rest);
    if (floor_part > 9e17) return std::nullopt;
    const std::int64_t a = static_cast<std::int64_t>(floor_part);
    const std::int64_t h = a * h_prev + h_prev2;
    const std::int64_t k = a * k_prev + k_prev2;
    if (k < 0 || static_cast<std::uint64_t>(k) > max_den) return std::nullopt;
    if (std::abs(x - static_cast<double>(h) / static_cast<double>(k)) <= tol) {
      const std::int64_t g = std::max<std::int64_t>(gcd64(h, k), 1);
      return Fraction{h / g, k / g};
    }
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const double frac = rest - floor_part;
    if (frac <= 0.0) return std::nullopt;
    rest = 1.0 / frac;
  }
  return std::nullopt;
}

/// Greatest common divisor of two positive fractions; absent when the
/// combined denominator cannot be represented within the grid cap.
std::optional<Fraction> fraction_gcd(const Fraction& a, const Fraction& b, std::int64_t den_cap) {
  const __int128 left = static_cast<__int128>(a.num) * b.den;
  const __int128 right = static_cast<__int128>(b.num) * a.den;
  const __int128 den = static_cast<__int128>(a.den) * b.den;
  if (den > den_cap) return std::nullopt;
  __int128 g = left < 0 ? -left : left;
  __int128 h = right < 0 ? -right : right;
  while (h != 0) {
    const __int128 t = g % h;
    g = h;
    h = t;
  }
  if (g == 0) return std::nullopt;
  std::int64_t num = static_cast<std::int64_t>(g);
  std::int64_t d = static_cast<std::int64_t>(den);
  const std::int64_t r = std::max<std::int64_t>(gcd64(num, d), 1);
  num /= r;
  d /= r;
  if (d > den_cap) return std::nullopt;
  return Fraction{num, d};
}

}  // namespace

std::optional<double> common_step(const Instance& inst, std::uint64_t max_den) {
  const std::size_t m = inst.size();
  constexpr double kZeroTol = 1e-12;
  constexpr double kRatTol = 1e-9;
  // Denominators past this bound give grids too fine to enumerate; treat the
  // differences as irrational at the working precision.
  constexpr std::int64_t kDenCap = 1000000000000LL;

  std::set<Fraction> seen;
  Fraction acc{1, 1};  // the unit is always in the difference set
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double cij = inst.cost_at(i, j);
      if (!(cij < kInf)) continue;
      for (std::size_t k = 0; k < m; ++k) {
        const double cik = inst.cost_at(i, k);
        if (!(cik < kInf)) continue;
        const double diff = std::abs(cij - cik);
        if (diff <= kZeroTol) continue;
        const auto frac = rationalize(diff, max_den, kRatTol);
        if (!frac) return std::nullopt;
        if (!seen.insert(*frac).second) continue;
        const auto next = fraction_gcd(acc, *frac, kDenCap);
        if (!next) return std::nullopt;
        acc = *next;
      }
    }
  }
  // gcd with 1 forces a unit numerator, so the step divides 1 by construction
  return static_cast<double>(acc.num) / static_cast<double>(acc.den);
}

std::uint64_t termination_bound(std::size_t m, double u_bar) {
  if (!(u_bar > 0.0) || u_bar > 1.0) throw std::invalid_argument("u_bar must lie in (0,1]");
  const double inv = 1.0 / u_bar;
  const auto n = static_cast<std::uint64_t>(std::llround(inv));
  if (n == 0 || std::abs(static_cast<double>(n) * u_bar - 1.0) > 1e-6)
    throw std::invalid_argument("u_bar must divide 1");
  if (m <= 1) return 0;
  std::uint64_t result = 1;
  for (std::uint64_t e = 0; e < n + 1; ++e) {
    if (result > kCountSaturated / m) return kCountSaturated;
    result *= m;
  }
  return result - 1;
}

SolveResult brute_force(const Instance& inst, double step, std::uint64_t budget) {
  const auto start = Clock::now();
  const std::size_t m = inst.size();
  if (m == 0) throw std::invalid_argument("instance has no feature values");
  if (!(step > 0.0) || step > 1.0) throw std::invalid_argument("step must lie in (0,1]");
  const auto levels_minus_one = static_cast<std::uint64_t>(std::llround(1.0 / step));
  if (levels_minus_one == 0 || std::abs(static_cast<double>(levels_minus_one) * step - 1.0) > 1e-9)
    throw std::invalid_argument("step must divide 1");
  const std::uint64_t levels = levels_minus_one + 1;

  std::uint64_t policies = 1;
  bool overflow = false;
  for (std::size_t i = 0; i < m; ++i) {
    if (policies > kCountSaturated / levels) {
      overflow = true;
      break;
    }
    policies *= levels;
  }
  const std::uint64_t work = overflow || policies > kCountSaturated / std::max<std::size_t>(m, 1)
                                 ? kCountSaturated
                                 : policies * m;
  if (work > budget)
    throw BudgetExceeded("grid search over " + std::to_string(policies) +
                             " policies exceeds the evaluation budget",
                         policies);

  std::vector<double> grid(levels);
  for (std::uint64_t v = 0; v < levels; ++v) grid[v] = static_cast<double>(v) * step;
  grid.back() = 1.0;

  const std::vector<double> rw = inst.rewards();
  std::vector<std::uint32_t> idx(m, 0);
  std::vector<double> pi(m, 0.0);

  double best_u = -kInf;
  std::vector<double> best_pi(m, 0.0);
  std::uint64_t evaluated = 0;
  // Ascending enumeration, last coordinate fastest; ties keep the first
  // maximizer found.
  bool done = m == 0;
  while (!done) {
    const double u = detail::utility_with_rewards(inst, pi.data(), rw.data(), kTieTol);
    ++evaluated;
    if (u > best_u) {
      best_u = u;
      best_pi = pi;
    }
    std::size_t pos = m;
    while (true) {
      if (pos == 0) {
        done = true;  // odometer wrapped
        break;
      }
      --pos;
      if (++idx[pos] < levels) {
        pi[pos] = grid[idx[pos]];
        break;
      }
      idx[pos] = 0;
      pi[pos] = grid[0];
    }
  }

  SolveResult result;
  result.policy = Policy(std::move(best_pi));
  result.utility = best_u;
  result.iterations = evaluated;
  result.converged = true;
  if (const auto ubar = common_step(inst)) {
    const double ratio = *ubar / step;
    const auto r = static_cast<std::uint64_t>(std::llround(ratio));
    result.exact = r >= 1 && std::abs(ratio - static_cast<double>(r)) <= 1e-6;
  }
  result.wall_ms = elapsed_ms(start);
  return result;
}

std::vector<double> candidate_values(const Instance& inst, const Policy& pol, std::size_t i) {
  const std::size_t m = inst.size();
  if (pol.size() != m) throw std::invalid_argument("policy length differs from instance size");
  if (i >= m) throw std::invalid_argument("coordinate out of range");
  std::vector<double> vals{0.0, 1.0};
  for (std::size_t s = 0; s < m; ++s) {
    const double to_i = inst.cost_at(s, i);
    if (!(to_i < kInf)) continue;
    double inner = -kInf;
    bool any = false;
    for (std::size_t k = 0; k < m; ++k) {
      if (k == i) continue;
      const double c = inst.cost_at(s, k);
      if (!(c < kInf)) continue;
      inner = std::max(inner, pol.pi[k] - c);
      any = true;
    }
    if (!any) continue;
    vals.push_back(std::clamp(inner + to_i, 0.0, 1.0));
  }
  std::sort(vals.begin(), vals.end());
  std::vector<double> out;
  for (double v : vals)
    if (out.empty() || v - out.back() > 1e-12) out.push_back(v);
  return out;
}

CoordinateChoice solve_coordinate(const Instance& inst, const Policy& pol, std::size_t i) {
  const std::vector<double> rw = inst.rewards();
  std::vector<double> work = pol.pi;
  const double incumbent = pol.pi[i];
  double best_v = incumbent;
  double best_u = detail::utility_with_rewards(inst, work.data(), rw.data(), kTieTol);
  for (const double v : candidate_values(inst, pol, i)) {
    if (std::abs(v - incumbent) <= 1e-15) continue;
    work[i] = v;
    const double u = detail::utility_with_rewards(inst, work.data(), rw.data(), kTieTol);
    if (u > best_u + kImprovementEps) {
      best_u = u;
      best_v = v;
    }
  }
  return {best_v, best_u};
}

namespace {

std::vector<std::size_t> reward_order(const Instance& inst) {
  std::vector<std::size_t> order(inst.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return inst.reward_at(a) > inst.reward_at(b);
  });
  return order;
}

}  // namespace

SolveResult iterative_search(const Instance& inst, const Policy& init, std::uint64_t max_sweeps,
                             std::vector<double>* accepted_utilities) {
  const auto start = Clock::now();
  const std::size_t m = inst.size();
  if (init.size() != m) throw std::invalid_argument("init policy length differs from instance size");
  const std::vector<std::size_t> order = reward_order(inst);

  Policy pol = init;
  SolveResult result;
  while (result.sweeps < max_sweeps) {
    ++result.sweeps;
    bool changed = false;
    for (const std::size_t i : order) {
      const CoordinateChoice choice = solve_coordinate(inst, pol, i);
      if (choice.value != pol.pi[i]) {
        pol.pi[i] = choice.value;
        ++result.iterations;
        changed = true;
        if (accepted_utilities) accepted_utilities->push_back(choice.utility);
      }
    }
    if (!changed) {
      result.converged = true;
      break;
    }
  }
  result.utility = utility(inst, pol);
  result.policy = std::move(pol);
  result.wall_ms = elapsed_ms(start);
  return result;
}

SolveResult iterative_search(const Instance& inst, std::uint64_t max_sweeps) {
  return iterative_search(inst, Policy::zeros(inst.size()), max_sweeps);
}

SolveResult parallel_iterative_search(const Instance& inst, const Policy& init,
                                      std::uint64_t max_sweeps) {
  const auto start = Clock::now();
  const std::size_t m = inst.size();
  if (init.size() != m) throw std::invalid_argument("init policy length differs from instance size");

  Policy pol = init;
  Policy best_pol = init;
  double best_u = utility(inst, pol);
  SolveResult result;
  while (result.sweeps < max_sweeps) {
    ++result.sweeps;
    // All coordinates are solved against the frozen snapshot, then merged.
    Policy next = pol;
    for (std::size_t i = 0; i < m; ++i) next.pi[i] = solve_coordinate(inst, pol, i).value;
    const double u = utility(inst, next);
    if (u > best_u) {
      best_u = u;
      best_pol = next;
    }
    if (next == pol) {
      result.converged = true;
      break;
    }
    pol = std::move(next);
  }
  result.iterations = result.sweeps;
  result.utility = best_u;
  result.policy = std::move(best_pol);
  result.wall_ms = elapsed_ms(start);
  return result;
}

SolveResult parallel_iterative_search(const Instance& inst, std::uint64_t max_sweeps) {
  return parallel_iterative_search(inst, Policy::zeros(inst.size()), max_sweeps);
}

}  // namespace stratpol
