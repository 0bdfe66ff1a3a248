#pragma once

#include <vector>

#include "stratpol/instance.hpp"
#include "stratpol/response.hpp"

namespace stratpol {

/// Mass flow realizing the population's best response: flow(i,j) is the mass
/// moving from value i to value j.
struct TransportPlan {
  std::vector<double> flow;  // row-major m x m
  double objective = 0.0;

  double at(std::size_t i, std::size_t j, std::size_t m) const { return flow[i * m + j]; }
};

/// Optimal plan for maximizing sum_ij flow(i,j) * (pi[j] - cost(i,j)) subject
/// to nonnegativity and row sums equal to p. The objective separates across
/// rows, so each row concentrates its mass on the row argmax, with ties
/// resolved exactly as in best_response; the objective equals
/// sum_i p[i] * max_j (pi[j] - cost(i,j)).
TransportPlan transport_plan(const Instance& inst, const Policy& pol, double tie_tol = kTieTol);

/// True when the plan's column sums match induced_distribution within tol.
bool check_transport_consistency(const Instance& inst, const Policy& pol, double tol = 1e-9);

}  // namespace stratpol
