#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "stratpol/experiment.hpp"
#include "stratpol/generators.hpp"
#include "stratpol/io.hpp"
#include "stratpol/solvers.hpp"
#include "stratpol/transport.hpp"

// Exit codes: 0 success, 1 usage, 2 validation/data, 3 budget.
namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;

using namespace stratpol;

void print_policy(const Policy& pol) {
  std::printf("pi = [");
  for (std::size_t i = 0; i < pol.size(); ++i)
    std::printf("%s%.10g", i ? ", " : "", pol.pi[i]);
  std::printf("]\n");
}

int cmd_validate(const std::string& path) {
  const Instance inst = load_instance(path);
  const auto violations = validate_instance(inst);
  for (const auto& v : violations)
    std::printf("%s: %s\n", v.severity == Severity::kError ? "error" : "warning",
                v.message.c_str());
  if (has_errors(violations)) return kExitValidation;
  std::printf("ok: %zu values, %zu warning(s)\n", inst.size(), violations.size());
  return kExitOk;
}

int cmd_solve(const std::string& path, const std::string& alg, double step,
              std::uint64_t max_sweeps, bool max_sweeps_set, std::uint64_t budget,
              const std::string& init, const std::string& out) {
  const Instance inst = load_instance(path);
  if (has_errors(validate_instance(inst))) {
    std::fprintf(stderr, "instance fails validation; run `validate` for details\n");
    return kExitValidation;
  }

  SolveResult res;
  if (alg == "nonstrategic") {
    res.policy = non_strategic_policy(inst);
    res.utility = utility(inst, res.policy);
    res.converged = true;
  } else if (alg == "brute") {
    res = brute_force(inst, step, budget);
  } else if (alg == "iter" || alg == "par-iter") {
    Policy start = init == "nonstrategic" ? non_strategic_policy(inst) : Policy::zeros(inst.size());
    res = alg == "iter"
              ? iterative_search(inst, start, max_sweeps)
              : parallel_iterative_search(inst, start, max_sweeps_set ? max_sweeps : 20);
  } else if (alg == "dp") {
    const Canonicalized canon = canonicalize(inst);
    res = dp_search(canon.instance);
    Policy unpermuted = Policy::zeros(inst.size());
    for (std::size_t ni = 0; ni < inst.size(); ++ni)
      unpermuted.pi[canon.order[ni]] = res.policy.pi[ni];
    res.policy = std::move(unpermuted);
    res.utility = utility(inst, res.policy);
  }

  print_policy(res.policy);
  std::printf("utility = %.10g\n", res.utility);
  std::printf("iterations = %llu, sweeps = %llu, rounds = %llu, converged = %s\n",
              static_cast<unsigned long long>(res.iterations),
              static_cast<unsigned long long>(res.sweeps),
              static_cast<unsigned long long>(res.rounds), res.converged ? "true" : "false");
  if (alg == "brute") std::printf("exact = %s\n", res.exact ? "true" : "false");
  if (!out.empty()) save_policy(res.policy, out, {{"utility", res.utility}});
  return kExitOk;
}

int cmd_gen(const std::string& family, std::size_t m, double kappa, double alpha, double gamma,
            std::uint64_t seed, double quantum, const std::string& out) {
  GenSpec spec;
  spec.family = family;
  spec.m = m;
  spec.kappa = kappa;
  spec.alpha = alpha;
  spec.gamma = gamma;
  spec.seed = seed;
  spec.cost_quantum = quantum;
  const Instance inst = spec.build();
  save_instance(inst, out);
  std::printf("wrote %s (%zu values)\n", out.c_str(), inst.size());
  return kExitOk;
}

int cmd_transport(const std::string& inst_path, const std::string& policy_path) {
  const Instance inst = load_instance(inst_path);
  const Policy pol = load_policy(policy_path);
  const TransportPlan plan = transport_plan(inst, pol);
  const std::size_t m = inst.size();
  std::printf("flow (nonzero entries):\n");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (plan.at(i, j, m) > 0.0)
        std::printf("  %zu -> %zu : %.10g\n", i, j, plan.at(i, j, m));
  std::printf("objective = %.10g\n", plan.objective);
  const bool consistent = check_transport_consistency(inst, pol);
  std::printf("column sums match induced distribution: %s\n", consistent ? "true" : "false");
  return kExitOk;
}

int cmd_experiment(const std::string& spec_path, const std::string& out_dir) {
  const SweepSpec spec = load_sweep_spec(spec_path);
  const auto records = run_experiment(spec, out_dir);
  std::size_t failed = 0;
  for (const auto& r : records)
    if (!r.error.empty()) ++failed;
  std::printf("%zu cells, %zu failed; results in %s/results.csv\n", records.size(), failed,
              out_dir.c_str());
  return kExitOk;
}

int cmd_sat(const std::string& cnf_path, bool solve, bool decode, double epsilon,
            std::uint64_t budget, const std::string& out) {
  const CnfFormula formula = parse_dimacs(read_text_file(cnf_path));
  const Instance inst = from_sat(formula, epsilon);
  std::printf("reduction instance: %zu values (%d variables, %zu clauses)\n", inst.size(),
              formula.num_vars, formula.num_clauses());
  if (!out.empty()) {
    save_instance(inst, out);
    std::printf("wrote %s\n", out.c_str());
  }
  if (!solve && !decode) return kExitOk;

  // the encoded optima are binary, so the unit grid is the right search space
  const SolveResult res = brute_force(inst, 1.0, budget);
  print_policy(res.policy);
  std::printf("utility = %.10g\n", res.utility);
  if (decode) {
    const auto assignment = decode_assignment(inst, res.policy);
    if (!assignment) {
      std::printf("assignment: none (literal policies are not complementary)\n");
    } else {
      std::printf("assignment:");
      for (std::size_t i = 0; i < assignment->size(); ++i)
        std::printf(" v%zu=%s", i + 1, (*assignment)[i] ? "true" : "false");
      std::printf("\nsatisfies formula: %s\n",
                  formula.satisfied_by(*assignment) ? "true" : "false");
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"utility-maximizing decision policies over strategic populations"};
  app.require_subcommand(1);

  std::string path, policy_path, out, spec_path;
  std::string alg = "iter";
  std::string init = "zeros";
  std::string family;
  double step = 0.1, kappa = 0.75, alpha = 3.5, gamma = 0.3, epsilon = 0.01, quantum = 0.0;
  std::size_t m = 20;
  std::uint64_t seed = 1, max_sweeps = 1000, budget = 50000000;
  bool sat_solve = false, sat_decode = false;

  auto* validate = app.add_subcommand("validate", "check an instance file");
  validate->add_option("file", path)->required();

  auto* solve = app.add_subcommand("solve", "solve an instance");
  solve->add_option("file", path)->required();
  solve->add_option("--alg", alg)->check(CLI::IsMember({"nonstrategic", "brute", "iter", "par-iter", "dp"}));
  solve->add_option("--step", step, "grid step for --alg brute");
  solve->add_option("--max-sweeps", max_sweeps);
  solve->add_option("--budget", budget, "evaluation budget for --alg brute");
  solve->add_option("--init", init)->check(CLI::IsMember({"zeros", "nonstrategic"}));
  solve->add_option("-o,--out", out, "write the policy as JSON");

  auto* gen = app.add_subcommand("gen", "generate a synthetic instance");
  gen->add_option("family", family)
      ->required()
      ->check(CLI::IsMember({"1d-random", "additive-monotonic", "2d-mixture", "2d-unimodal"}));
  gen->add_option("--m", m);
  gen->add_option("--kappa", kappa);
  gen->add_option("--alpha", alpha);
  gen->add_option("--gamma", gamma);
  gen->add_option("--seed", seed);
  gen->add_option("--cost-quantum", quantum, "snap finite costs to this grid");
  gen->add_option("-o,--out", out)->required();

  auto* experiment = app.add_subcommand("experiment", "run a sweep described by a spec file");
  experiment->add_option("spec", spec_path)->required();
  experiment->add_option("-o,--out", out, "output directory")->required();

  auto* transport = app.add_subcommand("transport", "print the transport plan of a policy");
  transport->add_option("file", path)->required();
  transport->add_option("policy", policy_path)->required();

  auto* sat = app.add_subcommand("sat", "build the satisfiability reduction instance");
  sat->add_option("cnf", path)->required();
  sat->add_flag("--solve", sat_solve, "search binary policies exhaustively");
  sat->add_flag("--decode", sat_decode, "decode the optimum into an assignment");
  sat->add_option("--epsilon", epsilon);
  sat->add_option("--budget", budget);
  sat->add_option("-o,--out", out, "write the reduction instance as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(path);
    if (solve->parsed())
      return cmd_solve(path, alg, step, max_sweeps, solve->count("--max-sweeps") > 0, budget,
                       init, out);
    if (gen->parsed()) return cmd_gen(family, m, kappa, alpha, gamma, seed, quantum, out);
    if (experiment->parsed()) return cmd_experiment(spec_path, out);
    if (transport->parsed()) return cmd_transport(path, policy_path);
    if (sat->parsed()) return cmd_sat(path, sat_solve, sat_decode, epsilon, budget, out);
  } catch (const stratpol::BudgetExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBudget;
  } catch (const stratpol::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
