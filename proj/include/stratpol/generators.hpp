#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stratpol/instance.hpp"
#include "stratpol/response.hpp"

namespace stratpol {

/// One-dimensional random family: masses from a truncated normal, outcomes
/// uniform, a fraction kappa of the ordered off-diagonal pairs gets a finite
/// uniform cost in [0,1], the rest +inf. cost_quantum > 0 snaps the finite
/// costs to positive multiples of the quantum, which keeps them on a rational
/// grid so exhaustive search can be exact.
Instance gen_1d_random(std::size_t m, double kappa, double gamma, std::uint64_t seed,
                       double cost_quantum = 0.0);

/// 7x7 grid discretizing an equal-weight two-component Gaussian mixture
/// (means [4,4] and [7,10], unit covariance) over x1 in [2,3], x2 in [3,14];
/// cell mass is the density at the cell center times the cell area,
/// renormalized. Outcomes follow a fixed piecewise-linear expression of the
/// rescaled integer coordinates; movement cost is L1 distance divided by
/// alpha.
Instance gen_2d_mixture_grid(double alpha, double gamma = 0.2);

/// 7x7 grid discretizing a single Gaussian (mean [2.5,2.5], covariance 1.4*I)
/// over x1 in [-3,6.3], x2 in [-1,7.5]; outcomes are bimodal in the grid
/// corners; same L1/alpha cost.
Instance gen_2d_unimodal_grid(double alpha, double gamma = 0.2);

/// Additive outcome-monotonic family: outcomes sorted decreasing, worsening
/// moves free, improving costs derived from m-1 sorted draws in [0, 1/kappa]
/// assigned to the bottom value's row and extended by additivity.
/// cost_quantum > 0 snaps the base draws to distinct positive multiples of
/// the quantum (redrawing on collision), preserving exact additivity on a
/// rational grid.
Instance gen_additive_monotonic(std::size_t m, double kappa, double gamma, std::uint64_t seed,
                                double cost_quantum = 0.0);

/// CNF formula: clauses of signed 1-based variable indices.
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  std::size_t num_clauses() const { return clauses.size(); }

  /// Throws std::invalid_argument on empty clauses or out-of-range literals.
  void validate() const;

  bool satisfied_by(const std::vector<bool>& assignment) const;
};

/// Parses DIMACS CNF text ("p cnf <vars> <clauses>", clauses 0-terminated).
CnfFormula parse_dimacs(const std::string& text);

/// Index layout of the reduction instance built by from_sat. The variable
/// gadget for v_i spans seven values (two literal values y/yb, two sinks a/b,
/// three mass carriers z1/z2/z3); one extra value per clause.
struct SatLayout {
  std::size_t num_vars = 0;
  std::size_t num_clauses = 0;

  std::size_t size() const { return 7 * num_vars + num_clauses; }
  std::size_t y(std::size_t i) const { return i; }
  std::size_t yb(std::size_t i) const { return num_vars + i; }
  std::size_t a(std::size_t i) const { return 2 * num_vars + i; }
  std::size_t b(std::size_t i) const { return 3 * num_vars + i; }
  std::size_t z1(std::size_t i) const { return 4 * num_vars + i; }
  std::size_t z2(std::size_t i) const { return 5 * num_vars + i; }
  std::size_t z3(std::size_t i) const { return 6 * num_vars + i; }
  std::size_t clause(std::size_t j) const { return 7 * num_vars + j; }

  /// Recovers the layout from an instance produced by from_sat.
  static SatLayout from_meta(const Instance& inst);
};

/// Builds the reward-form instance whose utility-maximizing policies encode
/// satisfying assignments of the formula: literal values reward 1, sink
/// values reward 2(s+1) reachable from their carriers at cost 1-epsilon,
/// everything else unreachable or inert. Throws on an empty formula or
/// epsilon outside (0,1).
Instance from_sat(const CnfFormula& formula, double epsilon = 0.01);

/// Reads an assignment off a policy for a from_sat instance: v_i is true iff
/// pi(y_i) >= 0.5. Absent when some pair pi(y_i), pi(yb_i) is not
/// complementary within tol.
std::optional<std::vector<bool>> decode_assignment(const Instance& inst, const Policy& pol,
                                                   double tol = kTieTol);

}  // namespace stratpol
