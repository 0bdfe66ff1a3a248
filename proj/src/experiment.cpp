#include "stratpol/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "stratpol/generators.hpp"
#include "stratpol/io.hpp"
#include "stratpol/rng.hpp"

namespace stratpol {

using nlohmann::json;
namespace fs = std::filesystem;

Instance GenSpec::build() const {
  if (family == "1d-random") return gen_1d_random(m, kappa, gamma, seed, cost_quantum);
  if (family == "additive-monotonic")
    return gen_additive_monotonic(m, kappa, gamma, seed, cost_quantum);
  if (family == "2d-mixture") return gen_2d_mixture_grid(alpha, gamma);
  if (family == "2d-unimodal") return gen_2d_unimodal_grid(alpha, gamma);
  if (family == "file") return load_instance(path);
  throw std::invalid_argument("unknown generator family '" + family + "'");
}

SweepSpec load_sweep_spec(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
  SweepSpec spec;
  try {
    spec.base.family = doc.at("family").get<std::string>();
    spec.parameter = doc.at("parameter").get<std::string>();
    spec.values = doc.at("values").get<std::vector<double>>();
    spec.repetitions = doc.value("repetitions", std::size_t{1});
    spec.seed = doc.value("seed", std::uint64_t{0});
    spec.solvers = doc.at("solvers").get<std::vector<std::string>>();
    if (doc.contains("base")) {
      const auto& base = doc["base"];
      spec.base.m = base.value("m", std::size_t{0});
      spec.base.kappa = base.value("kappa", 0.0);
      spec.base.alpha = base.value("alpha", 0.0);
      spec.base.gamma = base.value("gamma", 0.0);
      spec.base.cost_quantum = base.value("cost_quantum", 0.0);
      spec.base.path = base.value("path", std::string{});
    }
    spec.brute_step = doc.value("brute_step", 0.1);
    spec.brute_budget = doc.value("brute_budget", std::uint64_t{50000000});
    spec.max_sweeps_iter = doc.value("max_sweeps_iter", std::uint64_t{1000});
    spec.max_sweeps_parallel = doc.value("max_sweeps_parallel", std::uint64_t{20});
    spec.seed_scheme = doc.value("seed_scheme", spec.seed_scheme);
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  if (spec.parameter != "kappa" && spec.parameter != "m" && spec.parameter != "alpha")
    throw IoError(path + ": parameter must be one of kappa, m, alpha");
  if (spec.values.empty()) throw IoError(path + ": values must be non-empty");
  return spec;
}

namespace {

GenSpec cell_gen_spec(const SweepSpec& spec, std::size_t value_index, std::size_t repetition) {
  GenSpec gen = spec.base;
  const double value = spec.values[value_index];
  if (spec.parameter == "kappa") gen.kappa = value;
  if (spec.parameter == "alpha") gen.alpha = value;
  if (spec.parameter == "m") gen.m = static_cast<std::size_t>(std::llround(value));
  gen.seed = derive_seed(spec.seed, value_index, repetition);
  return gen;
}

SolveResult run_solver(const std::string& solver, const SweepSpec& spec, const Instance& inst) {
  if (solver == "nonstrategic") {
    SolveResult res;
    res.policy = non_strategic_policy(inst);
    res.utility = utility(inst, res.policy);
    res.converged = true;
    return res;
  }
  if (solver == "brute") return brute_force(inst, spec.brute_step, spec.brute_budget);
  if (solver == "iter") return iterative_search(inst, spec.max_sweeps_iter);
  if (solver == "par-iter") return parallel_iterative_search(inst, spec.max_sweeps_parallel);
  if (solver == "dp") {
    // the solver wants the canonical index order; map its policy back
    const Canonicalized canon = canonicalize(inst);
    SolveResult res = dp_search(canon.instance);
    Policy unpermuted = Policy::zeros(inst.size());
    for (std::size_t ni = 0; ni < inst.size(); ++ni)
      unpermuted.pi[canon.order[ni]] = res.policy.pi[ni];
    res.policy = std::move(unpermuted);
    res.utility = utility(inst, res.policy);
    return res;
  }
  throw std::invalid_argument("unknown solver '" + solver + "'");
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

unsigned worker_count(std::size_t cells) {
  unsigned n = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("STRATPOL_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed > 0) n = static_cast<unsigned>(parsed);
  }
  if (n == 0) n = 1;
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(cells, 1)));
}

}  // namespace

std::vector<ExperimentRecord> run_experiment(const SweepSpec& spec, const std::string& out_dir) {
  fs::create_directories(fs::path(out_dir) / "policies");

  struct Cell {
    std::size_t value_index;
    std::size_t repetition;
    std::string solver;
  };
  std::vector<Cell> cells;
  for (std::size_t vi = 0; vi < spec.values.size(); ++vi)
    for (std::size_t rep = 0; rep < spec.repetitions; ++rep)
      for (const auto& solver : spec.solvers) cells.push_back({vi, rep, solver});

  std::vector<ExperimentRecord> records(cells.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    while (true) {
      const std::size_t c = next.fetch_add(1);
      if (c >= cells.size()) return;
      const Cell& cell = cells[c];
      const GenSpec gen = cell_gen_spec(spec, cell.value_index, cell.repetition);
      ExperimentRecord rec;
      rec.algorithm = cell.solver;
      rec.seed = gen.seed;
      rec.m = gen.m;
      rec.kappa = gen.kappa;
      rec.alpha = gen.alpha;
      rec.gamma = gen.gamma;
      try {
        const Instance inst = gen.build();
        rec.m = inst.size();
        const SolveResult res = run_solver(cell.solver, spec, inst);
        rec.utility = res.utility;
        rec.iterations = res.iterations;
        rec.converged = res.converged;
        rec.wall_ms = res.wall_ms;
        std::ostringstream name;
        name << spec.parameter << "=" << format_double(spec.values[cell.value_index]) << "_rep"
             << cell.repetition << "_" << cell.solver << ".json";
        save_policy(res.policy, (fs::path(out_dir) / "policies" / name.str()).string(),
                    {{"utility", res.utility}});
      } catch (const std::exception& e) {
        rec.error = e.what();
      }
      records[c] = std::move(rec);
    }
  };

  const unsigned workers = worker_count(cells.size());
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  std::ofstream csv(fs::path(out_dir) / "results.csv", std::ios::trunc);
  csv << records_to_csv(records);
  return records;
}

std::string records_to_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream out;
  out << "algorithm,seed,m,kappa,alpha,gamma,utility,iterations,converged,error,wall_ms\n";
  for (const auto& r : records) {
    out << r.algorithm << ',' << r.seed << ',' << r.m << ',' << format_double(r.kappa) << ','
        << format_double(r.alpha) << ',' << format_double(r.gamma) << ','
        << format_double(r.utility) << ',' << r.iterations << ','
        << (r.converged ? "true" : "false") << ',' << sanitize(r.error) << ','
        << format_double(r.wall_ms) << '\n';
  }
  return out.str();
}

}  // namespace stratpol
