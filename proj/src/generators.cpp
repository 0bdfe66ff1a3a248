#include "stratpol/generators.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <stdexcept>

#include "stratpol/rng.hpp"

namespace stratpol {

namespace {

std::string fmt_u64(std::uint64_t v) { return std::to_string(v); }

// Masses from a normal(0.5, 0.1) truncated below at zero (rejection), then
// normalized. Draw order is part of the reproducibility contract: masses
// first, outcomes second, costs last.
std::vector<double> truncated_normal_masses(Rng& rng, std::size_t m) {
  std::vector<double> p(m);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double t = rng.normal(0.5, 0.1);
    while (t < 0.0) t = rng.normal(0.5, 0.1);
    p[i] = t;
    total += t;
  }
  for (double& v : p) v /= total;
  return p;
}

double snap_positive(double v, double quantum) {
  const double k = std::max(1.0, std::round(v / quantum));
  return k * quantum;
}

}  // namespace

Instance gen_1d_random(std::size_t m, double kappa, double gamma, std::uint64_t seed,
                       double cost_quantum) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw std::invalid_argument("kappa must lie in [0,1]");
  Rng rng(seed);

  Instance inst;
  inst.p = truncated_normal_masses(rng, m);
  inst.q = std::vector<double>(m);
  for (std::size_t i = 0; i < m; ++i) (*inst.q)[i] = rng.uniform01();
  inst.gamma = gamma;
  inst.cost.assign(m * m, kInf);
  for (std::size_t i = 0; i < m; ++i) inst.cost_at(i, i) = 0.0;

  // Exactly round(kappa * m * (m-1)) ordered pairs become reachable.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(m * (m - 1));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j) pairs.emplace_back(i, j);
  for (std::size_t i = pairs.size(); i > 1; --i)
    std::swap(pairs[i - 1], pairs[rng.below(i)]);
  const auto finite = static_cast<std::size_t>(std::llround(kappa * static_cast<double>(pairs.size())));
  for (std::size_t n = 0; n < finite && n < pairs.size(); ++n) {
    double c = rng.uniform01();
    if (cost_quantum > 0.0) c = snap_positive(c, cost_quantum);
    inst.cost_at(pairs[n].first, pairs[n].second) = c;
  }

  inst.meta["family"] = "1d-random";
  inst.meta["generator"] = Rng::kIdentity;
  inst.meta["seed"] = fmt_u64(seed);
  inst.meta["m"] = std::to_string(m);
  inst.meta["kappa"] = std::to_string(kappa);
  if (cost_quantum > 0.0) inst.meta["cost_quantum"] = std::to_string(cost_quantum);
  return inst;
}

namespace {

double gauss2(double x1, double x2, double m1, double m2, double var) {
  const double dx1 = x1 - m1;
  const double dx2 = x2 - m2;
  return std::exp(-(dx1 * dx1 + dx2 * dx2) / (2.0 * var)) / (2.0 * 3.141592653589793 * var);
}

constexpr int kGridSide = 7;

Instance build_grid(double alpha, double gamma, double x1_lo, double x1_hi, double x2_lo,
                    double x2_hi, const std::function<double(double, double)>& density,
                    const std::function<double(int, int)>& outcome, const char* family) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  const int m = kGridSide * kGridSide;
  const double w1 = (x1_hi - x1_lo) / kGridSide;
  const double w2 = (x2_hi - x2_lo) / kGridSide;

  Instance inst;
  inst.p.resize(m);
  inst.q = std::vector<double>(m);
  inst.gamma = gamma;
  inst.cost.assign(static_cast<std::size_t>(m) * m, 0.0);

  // Cell mass: density at the cell center times cell area, renormalized.
  double total = 0.0;
  for (int a = 0; a < kGridSide; ++a) {
    for (int b = 0; b < kGridSide; ++b) {
      const double c1 = x1_lo + (a + 0.5) * w1;
      const double c2 = x2_lo + (b + 0.5) * w2;
      const double mass = density(c1, c2) * w1 * w2;
      inst.p[a * kGridSide + b] = mass;
      total += mass;
      (*inst.q)[a * kGridSide + b] = outcome(a, b);
    }
  }
  for (double& v : inst.p) v /= total;

  // Movement cost: L1 distance on the rescaled integer grid, divided by alpha.
  for (int a1 = 0; a1 < kGridSide; ++a1)
    for (int b1 = 0; b1 < kGridSide; ++b1)
      for (int a2 = 0; a2 < kGridSide; ++a2)
        for (int b2 = 0; b2 < kGridSide; ++b2)
          inst.cost[static_cast<std::size_t>(a1 * kGridSide + b1) * m + (a2 * kGridSide + b2)] =
              (std::abs(a1 - a2) + std::abs(b1 - b2)) / alpha;

  inst.meta["family"] = family;
  inst.meta["alpha"] = std::to_string(alpha);
  inst.meta["grid"] = "7x7;index=x1*7+x2";
  return inst;
}

}  // namespace

Instance gen_2d_mixture_grid(double alpha, double gamma) {
  return build_grid(
      alpha, gamma, 2.0, 3.0, 3.0, 14.0,
      [](double x1, double x2) {
        return 0.5 * gauss2(x1, x2, 4.0, 4.0, 1.0) + 0.5 * gauss2(x1, x2, 7.0, 10.0, 1.0);
      },
      [](int a, int b) {
        return (std::abs(a) + std::abs(3 - b)) / 24.0 + (std::abs(a) + std::abs(7 - b)) / 24.0;
      },
      "2d-mixture");
}

Instance gen_2d_unimodal_grid(double alpha, double gamma) {
  return build_grid(
      alpha, gamma, -3.0, 6.3, -1.0, 7.5,
      [](double x1, double x2) { return gauss2(x1, x2, 2.5, 2.5, 1.4); },
      [](int a, int b) {
        return std::max((a + b) / 12.0, (std::abs(6 - a) + std::abs(6 - b)) / 12.0);
      },
      "2d-unimodal");
}

Instance gen_additive_monotonic(std::size_t m, double kappa, double gamma, std::uint64_t seed,
                                double cost_quantum) {
  if (m < 2) throw std::invalid_argument("m must be at least 2");
  if (!(kappa > 0.0 && kappa <= 1.0)) throw std::invalid_argument("kappa must lie in (0,1]");
  Rng rng(seed);

  Instance inst;
  inst.p = truncated_normal_masses(rng, m);
  inst.q = std::vector<double>(m);
  for (std::size_t i = 0; i < m; ++i) (*inst.q)[i] = rng.uniform01();
  std::sort(inst.q->begin(), inst.q->end(), std::greater<double>());
  inst.gamma = gamma;

  // Base draws price the climb from the bottom value; everything else follows
  // from additivity, so the whole matrix lives on the same grid as the base.
  const std::size_t n = m - 1;
  std::vector<double> base(n);
  for (int attempt = 0;; ++attempt) {
    if (attempt > 10000) throw std::runtime_error("could not draw distinct base costs");
    for (std::size_t i = 0; i < n; ++i) {
      double v = rng.uniform(0.0, 1.0 / kappa);
      if (cost_quantum > 0.0) v = snap_positive(v, cost_quantum);
      base[i] = v;
    }
    std::sort(base.begin(), base.end());
    bool distinct = true;
    for (std::size_t i = 1; i < n; ++i)
      if (!(base[i] > base[i - 1])) distinct = false;
    if (distinct) break;
  }

  inst.cost.assign(m * m, 0.0);  // worsening moves are free
  // bottom row: nearer targets are cheaper
  for (std::size_t j = 0; j + 1 < m; ++j) inst.cost_at(m - 1, j) = base[m - 2 - j];
  for (std::size_t i = 0; i + 1 < m; ++i)
    for (std::size_t j = 0; j < i; ++j)
      inst.cost_at(i, j) = inst.cost_at(m - 1, j) - inst.cost_at(m - 1, i);

  inst.meta["family"] = "additive-monotonic";
  inst.meta["generator"] = Rng::kIdentity;
  inst.meta["seed"] = fmt_u64(seed);
  inst.meta["m"] = std::to_string(m);
  inst.meta["kappa"] = std::to_string(kappa);
  if (cost_quantum > 0.0) inst.meta["cost_quantum"] = std::to_string(cost_quantum);
  return inst;
}

}  // namespace stratpol
