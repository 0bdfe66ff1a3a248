#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "stratpol/solvers.hpp"

// Heuristic table search over the family of policies that start at full
// acceptance for the best value and, at each next positive-reward value,
// either repeat the previous entry (a stopping value: mass accumulates there)
// or drop by exactly the adjacent movement cost (mass passes through).
//
// A round fixes an anchor position s with a committed entry A and fills a
// table of partial policies indexed by (first free decision i, anchor j),
// each anchored at the reference level A. Stopping the descent at i splices
// in the best partial policy anchored at i, shifted down to the new level;
// entries that would go negative are flattened into stopping values at the
// last nonnegative level. A flattened tail was optimized for a descent that
// no longer exists, so the round records the last stopping value before the
// flattening and the next round re-solves everything below it with that
// entry fixed. Rounds are bounded by the value count: each extra round pins
// at least one more stopping value.

namespace stratpol {

namespace {

using Clock = std::chrono::steady_clock;

constexpr int kComplete = std::numeric_limits<int>::max();
constexpr double kNegSlack = 1e-12;

struct Fragment {
  int anchor = -1;
  std::vector<double> value;
  std::vector<char> block;  // entry repeats its predecessor
  double score = -std::numeric_limits<double>::infinity();
  int revisit = kComplete;
  bool valid = false;
};

struct DpContext {
  const Instance& inst;
  std::vector<double> rw;
  int m = 0;
  int last_positive = -1;  // last index with positive reward
  double tie_tol = kTieTol;
  std::uint64_t evals = 0;
};

// Single pass: mass at a non-stopping value climbs to the nearest stopping
// value above whenever the climb is affordable (ties resolve upward);
// everything else stays and is accepted at its own entry.
double eval_fragment(DpContext& ctx, const Fragment& f) {
  ++ctx.evals;
  double total = 0.0;
  int top = f.anchor;
  for (int k = f.anchor; k < ctx.m; ++k) {
    const double vk = k <= ctx.last_positive ? f.value[k] : 0.0;
    const bool stopping =
        k == f.anchor || (k <= ctx.last_positive && f.block[k] && f.value[k] > ctx.tie_tol);
    if (stopping) {
      top = k;
      total += ctx.inst.p[k] * vk * ctx.rw[k];
      continue;
    }
    const double climb = f.value[top] - ctx.inst.cost_at(k, top);
    if (climb >= vk - ctx.tie_tol)
      total += ctx.inst.p[k] * f.value[top] * ctx.rw[top];
    else
      total += ctx.inst.p[k] * vk * ctx.rw[k];
  }
  return total;
}

Fragment make_invalid(const DpContext& ctx) {
  Fragment f;
  f.value.assign(ctx.m, 0.0);
  f.block.assign(ctx.m, 0);
  return f;
}

// Pure descent from the anchor through `upto` (exclusive of the anchor).
void fill_chain(const DpContext& ctx, Fragment& f, int j, double A, int upto) {
  f.anchor = j;
  f.value[j] = A;
  for (int k = j + 1; k <= upto; ++k) f.value[k] = std::max(0.0, A - ctx.inst.cost_at(k, j));
}

// Deepest partial policy (first free decision at the last positive-reward
// value r): a pure descent from the anchor with the single choice of
// stopping at r or descending through it.
Fragment make_base(DpContext& ctx, int j, double A) {
  const int r = ctx.last_positive;
  Fragment invalid = make_invalid(ctx);
  const double chain_cost = (j == r - 1) ? 0.0 : ctx.inst.cost_at(r - 1, j);
  if (A - chain_cost < -kNegSlack) return invalid;

  Fragment blocked = invalid;
  blocked.valid = true;
  fill_chain(ctx, blocked, j, A, r - 1);
  blocked.value[r] = blocked.value[r - 1];
  blocked.block[r] = 1;
  blocked.score = eval_fragment(ctx, blocked);

  if (A - ctx.inst.cost_at(r, j) >= -kNegSlack) {
    Fragment open = invalid;
    open.valid = true;
    fill_chain(ctx, open, j, A, r);
    open.score = eval_fragment(ctx, open);
    if (open.score >= blocked.score) return open;
  }
  return blocked;
}

// Stop the descent from anchor j at value i and splice in the best partial
// policy anchored at i, lowered to the blocked level.
Fragment compose_block(DpContext& ctx, int i, int j, double A, const Fragment& diag) {
  const int r = ctx.last_positive;
  const double sigma = (i - 1 == j) ? 0.0 : ctx.inst.cost_at(i - 1, j);
  Fragment f = make_invalid(ctx);
  f.valid = true;
  fill_chain(ctx, f, j, A, i - 1);

  // Lowered entries are non-increasing, so the nonnegative part is a prefix.
  int d = i;
  for (int k = i; k <= r; ++k) {
    if (diag.value[k] - sigma >= -kNegSlack)
      d = k;
    else
      break;
  }
  for (int k = i; k <= d; ++k) {
    f.value[k] = std::max(0.0, diag.value[k] - sigma);
    f.block[k] = (k == i) ? 1 : diag.block[k];
  }
  for (int k = d + 1; k <= r; ++k) {
    f.value[k] = f.value[d];
    f.block[k] = 1;
  }

  int vprime = kComplete;
  if (d < r) {
    // flattening invalidates the tail's layout; re-solve from the last
    // stopping value at a positive level
    vprime = i;
    for (int k = i + 1; k <= d; ++k)
      if (f.block[k] && f.value[k] > ctx.tie_tol) vprime = k;
  }
  f.revisit = std::min(vprime, diag.revisit);
  f.score = eval_fragment(ctx, f);
  return f;
}

Fragment make_cell(DpContext& ctx, int i, int j, double A, const Fragment& same_anchor_above,
                   const Fragment& diag) {
  const double chain_cost = (i - 1 == j) ? 0.0 : ctx.inst.cost_at(i - 1, j);
  if (A - chain_cost < -kNegSlack) return make_invalid(ctx);
  Fragment blocked = compose_block(ctx, i, j, A, diag);
  if (same_anchor_above.valid && same_anchor_above.score >= blocked.score)
    return same_anchor_above;
  return blocked;
}

}  // namespace

SolveResult dp_search(const Instance& inst) {
  const auto start = Clock::now();
  const int m = static_cast<int>(inst.size());
  if (!is_canonical(inst)) throw std::invalid_argument("dp_search requires a canonicalized instance");
  {
    const CostProfile prof = cost_profile(inst);
    if (!prof.additive || !prof.outcome_monotonic)
      throw std::invalid_argument("dp_search requires additive outcome-monotonic costs");
  }

  DpContext ctx{inst, inst.rewards(), m, -1, kTieTol, 0};
  for (int k = 0; k < m; ++k)
    if (ctx.rw[k] > 0.0) ctx.last_positive = k;

  SolveResult result;
  Policy pol = Policy::zeros(m);
  const int r = ctx.last_positive;
  if (r < 0) {
    result.rounds = 1;
  } else {
    pol.pi[0] = 1.0;
    int s = 0;
    double anchor_value = 1.0;
    bool done = false;
    while (!done) {
      if (result.rounds >= static_cast<std::uint64_t>(m))
        throw std::runtime_error("dp_search exceeded the round bound");
      ++result.rounds;
      if (s >= r) break;  // nothing left to decide past the anchor

      // Base row: first free decision at r, anchors j in [s, r-1].
      std::vector<Fragment> prev;
      prev.reserve(r - s);
      for (int j = s; j <= r - 1; ++j) prev.push_back(make_base(ctx, j, anchor_value));

      for (int i = r - 1; i >= s + 1; --i) {
        std::vector<Fragment> row;
        row.reserve(i - s);
        for (int j = s; j <= i - 1; ++j)
          row.push_back(make_cell(ctx, i, j, anchor_value, prev[j - s], prev[i - s]));
        prev = std::move(row);
      }

      const Fragment& chosen = prev[0];  // anchored at s, first decision at s+1
      const int last = chosen.revisit == kComplete ? m - 1 : chosen.revisit;
      for (int l = s; l <= last; ++l) pol.pi[l] = l <= r ? chosen.value[l] : 0.0;
      if (chosen.revisit == kComplete) {
        done = true;
      } else {
        s = chosen.revisit;
        anchor_value = pol.pi[s];
        if (anchor_value <= ctx.tie_tol) {
          for (int l = s + 1; l < m; ++l) pol.pi[l] = 0.0;
          done = true;
        }
      }
    }
  }

  result.utility = utility(inst, pol);
  result.policy = std::move(pol);
  result.iterations = ctx.evals;
  result.converged = true;
  result.wall_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return result;
}

}  // namespace stratpol
