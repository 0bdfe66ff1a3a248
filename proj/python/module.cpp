#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stratpol/experiment.hpp"
#include "stratpol/generators.hpp"
#include "stratpol/io.hpp"
#include "stratpol/solvers.hpp"
#include "stratpol/transport.hpp"

namespace py = pybind11;
using namespace stratpol;

namespace {

Instance make_instance(std::vector<double> p, std::optional<std::vector<double>> q,
                       std::optional<std::vector<double>> reward, double gamma,
                       std::vector<std::vector<double>> cost,
                       std::map<std::string, std::string> meta) {
  if (q.has_value() == reward.has_value())
    throw std::invalid_argument("exactly one of q / reward is required");
  Instance inst = q ? Instance::from_outcomes(std::move(p), std::move(*q), gamma, std::move(cost))
                    : Instance::from_rewards(std::move(p), std::move(*reward), gamma, std::move(cost));
  inst.meta = std::move(meta);
  return inst;
}

std::vector<std::vector<double>> cost_rows(const Instance& inst) {
  const std::size_t m = inst.size();
  std::vector<std::vector<double>> rows(m, std::vector<double>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) rows[i][j] = inst.cost_at(i, j);
  return rows;
}

}  // namespace

PYBIND11_MODULE(stratpol, mod) {
  mod.doc() = "Utility-maximizing decision policies over strategic populations";

  py::class_<Instance>(mod, "Instance")
      .def(py::init(&make_instance), py::arg("p"), py::arg("q") = std::nullopt,
           py::arg("reward") = std::nullopt, py::arg("gamma") = 0.3,
           py::arg("cost") = std::vector<std::vector<double>>{},
           py::arg("meta") = std::map<std::string, std::string>{})
      .def_property_readonly("m", &Instance::size)
      .def_readonly("p", &Instance::p)
      .def_readonly("q", &Instance::q)
      .def_readonly("gamma", &Instance::gamma)
      .def_readonly("meta", &Instance::meta)
      .def_property_readonly("reward", [](const Instance& inst) { return inst.rewards(); })
      .def_property_readonly("cost", &cost_rows)
      .def("__repr__", [](const Instance& inst) {
        return "<stratpol.Instance m=" + std::to_string(inst.size()) + ">";
      });

  py::class_<Policy>(mod, "Policy")
      .def(py::init<std::vector<double>>(), py::arg("pi"))
      .def_readonly("pi", &Policy::pi)
      .def("__len__", &Policy::size)
      .def("__getitem__", [](const Policy& p, std::size_t i) {
        if (i >= p.size()) throw py::index_error();
        return p.pi[i];
      })
      .def("__repr__", [](const Policy& p) {
        std::string out = "Policy([";
        for (std::size_t i = 0; i < p.size(); ++i)
          out += (i ? ", " : "") + std::to_string(p.pi[i]);
        return out + "])";
      });

  py::class_<ResponseProfile>(mod, "ResponseProfile")
      .def_readonly("target", &ResponseProfile::target)
      .def_readonly("gain", &ResponseProfile::gain)
      .def_readonly("tied", &ResponseProfile::tied);

  py::class_<TransportPlan>(mod, "TransportPlan")
      .def_readonly("flow", &TransportPlan::flow)
      .def_readonly("objective", &TransportPlan::objective);

  py::class_<SolveResult>(mod, "SolveResult")
      .def_readonly("policy", &SolveResult::policy)
      .def_readonly("utility", &SolveResult::utility)
      .def_readonly("iterations", &SolveResult::iterations)
      .def_readonly("sweeps", &SolveResult::sweeps)
      .def_readonly("rounds", &SolveResult::rounds)
      .def_readonly("converged", &SolveResult::converged)
      .def_readonly("exact", &SolveResult::exact)
      .def_readonly("wall_ms", &SolveResult::wall_ms);

  py::class_<CostProfile>(mod, "CostProfile")
      .def_readonly("triangle", &CostProfile::triangle)
      .def_readonly("additive", &CostProfile::additive)
      .def_readonly("outcome_monotonic", &CostProfile::outcome_monotonic)
      .def_readonly("positive_improvement", &CostProfile::positive_improvement);

  py::class_<PolicyFamilyReport>(mod, "PolicyFamilyReport")
      .def_readonly("weakly_outcome_monotonic", &PolicyFamilyReport::weakly_outcome_monotonic)
      .def_readonly("outcome_monotonic_binary", &PolicyFamilyReport::outcome_monotonic_binary)
      .def_readonly("subadditive_family", &PolicyFamilyReport::subadditive_family);

  py::class_<CnfFormula>(mod, "CnfFormula")
      .def(py::init([](int num_vars, std::vector<std::vector<int>> clauses) {
             CnfFormula f;
             f.num_vars = num_vars;
             f.clauses = std::move(clauses);
             f.validate();
             return f;
           }),
           py::arg("num_vars"), py::arg("clauses"))
      .def_readonly("num_vars", &CnfFormula::num_vars)
      .def_readonly("clauses", &CnfFormula::clauses)
      .def("satisfied_by", &CnfFormula::satisfied_by);

  mod.def("validate_instance",
          [](const Instance& inst) {
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& v : validate_instance(inst))
              out.emplace_back(v.severity == Severity::kError ? "error" : "warning", v.message);
            return out;
          },
          py::arg("instance"));
  mod.def("canonicalize",
          [](const Instance& inst) {
            auto canon = canonicalize(inst);
            return py::make_tuple(canon.instance, canon.order);
          },
          py::arg("instance"));
  mod.def("cost_profile", &cost_profile, py::arg("instance"), py::arg("tol") = kTieTol);

  mod.def("best_response", &best_response, py::arg("instance"), py::arg("policy"),
          py::arg("tie_tol") = kTieTol);
  mod.def("best_response_omb", &best_response_omb, py::arg("instance"), py::arg("policy"),
          py::arg("tie_tol") = kTieTol);
  mod.def("induced_distribution", &induced_distribution, py::arg("instance"), py::arg("policy"),
          py::arg("tie_tol") = kTieTol);
  mod.def("utility", &utility, py::arg("instance"), py::arg("policy"),
          py::arg("tie_tol") = kTieTol);
  mod.def("non_strategic_policy", &non_strategic_policy, py::arg("instance"));
  mod.def("policy_family_report", &policy_family_report, py::arg("instance"), py::arg("policy"),
          py::arg("tol") = kTieTol);

  mod.def("transport_plan", &transport_plan, py::arg("instance"), py::arg("policy"),
          py::arg("tie_tol") = kTieTol);
  mod.def("check_transport_consistency", &check_transport_consistency, py::arg("instance"),
          py::arg("policy"), py::arg("tol") = 1e-9);

  mod.def("common_step", &common_step, py::arg("instance"), py::arg("max_den") = 1000000);
  mod.def("termination_bound", &termination_bound, py::arg("m"), py::arg("u_bar"));
  mod.def("brute_force", &brute_force, py::arg("instance"), py::arg("step"),
          py::arg("budget") = 50000000);
  mod.def("iterative_search",
          [](const Instance& inst, std::optional<Policy> init, std::uint64_t max_sweeps) {
            return init ? iterative_search(inst, *init, max_sweeps)
                        : iterative_search(inst, max_sweeps);
          },
          py::arg("instance"), py::arg("init") = std::nullopt, py::arg("max_sweeps") = 1000);
  mod.def("parallel_iterative_search",
          [](const Instance& inst, std::optional<Policy> init, std::uint64_t max_sweeps) {
            return init ? parallel_iterative_search(inst, *init, max_sweeps)
                        : parallel_iterative_search(inst, max_sweeps);
          },
          py::arg("instance"), py::arg("init") = std::nullopt, py::arg("max_sweeps") = 20);
  mod.def("dp_search", &dp_search, py::arg("instance"));

  mod.def("gen_1d_random", &gen_1d_random, py::arg("m"), py::arg("kappa"), py::arg("gamma"),
          py::arg("seed"), py::arg("cost_quantum") = 0.0);
  mod.def("gen_2d_mixture_grid", &gen_2d_mixture_grid, py::arg("alpha"), py::arg("gamma") = 0.2);
  mod.def("gen_2d_unimodal_grid", &gen_2d_unimodal_grid, py::arg("alpha"), py::arg("gamma") = 0.2);
  mod.def("gen_additive_monotonic", &gen_additive_monotonic, py::arg("m"), py::arg("kappa"),
          py::arg("gamma"), py::arg("seed"), py::arg("cost_quantum") = 0.0);

  mod.def("parse_dimacs", &parse_dimacs, py::arg("text"));
  mod.def("from_sat", &from_sat, py::arg("formula"), py::arg("epsilon") = 0.01);
  mod.def("decode_assignment", &decode_assignment, py::arg("instance"), py::arg("policy"),
          py::arg("tol") = kTieTol);

  mod.def("load_instance", &load_instance, py::arg("path"));
  mod.def("save_instance", &save_instance, py::arg("instance"), py::arg("path"));
  mod.def("load_policy", &load_policy, py::arg("path"));
  mod.def("save_policy", &save_policy, py::arg("policy"), py::arg("path"),
          py::arg("annotations") = std::map<std::string, double>{});

  py::register_exception<BudgetExceeded>(mod, "BudgetExceededError");
  py::register_exception<IoError>(mod, "IoError");
}
