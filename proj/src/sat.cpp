#include <cmath>
#include <sstream>
#include <stdexcept>

#include "stratpol/generators.hpp"

namespace stratpol {

void CnfFormula::validate() const {
  if (num_vars < 1) throw std::invalid_argument("formula declares no variables");
  for (const auto& clause : clauses) {
    if (clause.empty()) throw std::invalid_argument("empty clause");
    for (const int lit : clause) {
      const int var = std::abs(lit);
      if (lit == 0 || var > num_vars)
        throw std::invalid_argument("literal " + std::to_string(lit) + " out of range");
    }
  }
}

bool CnfFormula::satisfied_by(const std::vector<bool>& assignment) const {
  for (const auto& clause : clauses) {
    bool sat = false;
    for (const int lit : clause) {
      const std::size_t var = static_cast<std::size_t>(std::abs(lit)) - 1;
      if (var < assignment.size() && assignment[var] == (lit > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  CnfFormula formula;
  std::size_t declared_clauses = 0;
  bool header_seen = false;
  std::vector<int> current;
  std::string token;
  while (in >> token) {
    if (token == "c") {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    if (token == "p") {
      std::string kind;
      if (!(in >> kind) || kind != "cnf" || !(in >> formula.num_vars >> declared_clauses))
        throw std::invalid_argument("malformed DIMACS header");
      header_seen = true;
      continue;
    }
    int lit = 0;
    try {
      lit = std::stoi(token);
    } catch (const std::exception&) {
      throw std::invalid_argument("unexpected DIMACS token '" + token + "'");
    }
    if (!header_seen) throw std::invalid_argument("clause before DIMACS header");
    if (lit == 0) {
      formula.clauses.push_back(current);
      current.clear();
    } else {
      current.push_back(lit);
    }
  }
  if (!header_seen) throw std::invalid_argument("missing DIMACS header");
  if (!current.empty()) formula.clauses.push_back(current);  // tolerate a missing final 0
  if (declared_clauses != 0 && formula.clauses.size() != declared_clauses)
    throw std::invalid_argument("clause count differs from the DIMACS header");
  formula.validate();
  return formula;
}

SatLayout SatLayout::from_meta(const Instance& inst) {
  const auto vars = inst.meta.find("sat_vars");
  const auto clauses = inst.meta.find("sat_clauses");
  if (vars == inst.meta.end() || clauses == inst.meta.end())
    throw std::invalid_argument("instance was not produced by from_sat");
  SatLayout layout;
  layout.num_vars = std::stoull(vars->second);
  layout.num_clauses = std::stoull(clauses->second);
  if (layout.size() != inst.size())
    throw std::invalid_argument("satisfiability layout does not match the instance size");
  return layout;
}

Instance from_sat(const CnfFormula& formula, double epsilon) {
  formula.validate();
  if (formula.clauses.empty()) throw std::invalid_argument("formula has no clauses");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");

  const std::size_t l = static_cast<std::size_t>(formula.num_vars);
  const std::size_t s = formula.num_clauses();
  SatLayout lay{l, s};
  const std::size_t m = lay.size();

  Instance inst;
  inst.p.assign(m, 0.0);
  inst.reward = std::vector<double>(m, 0.0);
  inst.gamma = 0.5;  // unused placeholder; rewards are explicit
  inst.cost.assign(m * m, kInf);
  for (std::size_t i = 0; i < m; ++i) inst.cost_at(i, i) = 0.0;

  // Mass proportions 3(s+1) : 1 : 1 : 1 over (z1_i, z2_i, z3_i, k_j),
  // normalized by the true total l*(3(s+1)+2) + s so they sum to one.
  const double denom = static_cast<double>(l) * (3.0 * (s + 1) + 2.0) + static_cast<double>(s);
  const double unit = 1.0 / denom;
  const double sink_reward = 2.0 * static_cast<double>(s + 1);
  for (std::size_t i = 0; i < l; ++i) {
    inst.p[lay.z1(i)] = 3.0 * (s + 1) * unit;
    inst.p[lay.z2(i)] = unit;
    inst.p[lay.z3(i)] = unit;
    (*inst.reward)[lay.y(i)] = 1.0;
    (*inst.reward)[lay.yb(i)] = 1.0;
    (*inst.reward)[lay.a(i)] = sink_reward;
    (*inst.reward)[lay.b(i)] = sink_reward;
  }
  for (std::size_t j = 0; j < s; ++j) inst.p[lay.clause(j)] = unit;

  // Gadget links: each carrier reaches its own variable's literal values for
  // free and its own sink at 1-epsilon. Cross-variable links cost 2, which no
  // acceptance probability in [0,1] can repay; all other pairs are
  // unreachable.
  const double near_one = 1.0 - epsilon;
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) {
      const double own = i == j ? 0.0 : 2.0;
      inst.cost_at(lay.z1(i), lay.y(j)) = own;
      inst.cost_at(lay.z1(i), lay.yb(j)) = own;
      inst.cost_at(lay.z2(i), lay.y(j)) = own;
      inst.cost_at(lay.z3(i), lay.yb(j)) = own;
      inst.cost_at(lay.z2(i), lay.a(j)) = i == j ? near_one : 2.0;
      inst.cost_at(lay.z3(i), lay.b(j)) = i == j ? near_one : 2.0;
      inst.cost_at(lay.z2(i), lay.yb(j)) = 2.0;
      inst.cost_at(lay.z3(i), lay.y(j)) = 2.0;
      inst.cost_at(lay.z1(i), lay.a(j)) = 2.0;
      inst.cost_at(lay.z1(i), lay.b(j)) = 2.0;
      inst.cost_at(lay.z2(i), lay.b(j)) = 2.0;
      inst.cost_at(lay.z3(i), lay.a(j)) = 2.0;
    }
  }
  for (std::size_t q = 0; q < s; ++q) {
    const std::size_t row = lay.clause(q);
    for (std::size_t j = 0; j < l; ++j) {
      inst.cost_at(row, lay.y(j)) = 2.0;
      inst.cost_at(row, lay.yb(j)) = 2.0;
      inst.cost_at(row, lay.a(j)) = 2.0;
      inst.cost_at(row, lay.b(j)) = 2.0;
    }
    for (const int lit : formula.clauses[q]) {
      const std::size_t var = static_cast<std::size_t>(std::abs(lit)) - 1;
      inst.cost_at(row, lit > 0 ? lay.y(var) : lay.yb(var)) = 0.0;
    }
  }

  inst.meta["family"] = "sat-reduction";
  inst.meta["sat_vars"] = std::to_string(l);
  inst.meta["sat_clauses"] = std::to_string(s);
  inst.meta["epsilon"] = std::to_string(epsilon);
  return inst;
}

std::optional<std::vector<bool>> decode_assignment(const Instance& inst, const Policy& pol,
                                                   double tol) {
  const SatLayout lay = SatLayout::from_meta(inst);
  if (pol.size() != inst.size()) throw std::invalid_argument("policy length differs from instance size");
  std::vector<bool> assignment(lay.num_vars);
  for (std::size_t i = 0; i < lay.num_vars; ++i) {
    const double py = pol.pi[lay.y(i)];
    const double pyb = pol.pi[lay.yb(i)];
    if (std::abs(py - (1.0 - pyb)) > tol) return std::nullopt;
    assignment[i] = py >= 0.5;
  }
  return assignment;
}

}  // namespace stratpol
