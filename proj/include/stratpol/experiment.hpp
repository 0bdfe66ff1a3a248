#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stratpol/instance.hpp"
#include "stratpol/solvers.hpp"

namespace stratpol {

/// One fully-parameterized generator call. The "file" family loads a fixed
/// instance from `path` instead of generating, which is how externally
/// derived instances enter a sweep.
struct GenSpec {
  std::string family;  // 1d-random | additive-monotonic | 2d-mixture | 2d-unimodal | file
  std::size_t m = 0;
  double kappa = 0.0;
  double alpha = 0.0;
  double gamma = 0.0;
  double cost_quantum = 0.0;
  std::uint64_t seed = 0;
  std::string path;

  Instance build() const;
};

/// Experiment sweep: one generator family, one swept parameter, a repetition
/// count and a solver set. Cell seeds derive from (seed, value index,
/// repetition index) with the scheme named in seed_scheme.
struct SweepSpec {
  GenSpec base;
  std::string parameter;  // kappa | m | alpha
  std::vector<double> values;
  std::size_t repetitions = 1;
  std::uint64_t seed = 0;
  std::vector<std::string> solvers;  // nonstrategic | brute | iter | par-iter | dp
  double brute_step = 0.1;
  std::uint64_t brute_budget = 50000000;
  std::uint64_t max_sweeps_iter = 1000;
  std::uint64_t max_sweeps_parallel = 20;
  std::string seed_scheme = "splitmix64(seed,value_index,repetition)/v1";
};

SweepSpec load_sweep_spec(const std::string& path);

/// One solver run inside a sweep.
struct ExperimentRecord {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::size_t m = 0;
  double kappa = 0.0;
  double alpha = 0.0;
  double gamma = 0.0;
  double utility = 0.0;
  std::uint64_t iterations = 0;
  bool converged = false;
  std::string error;  // empty on success; failed cells keep the sweep going
  double wall_ms = 0.0;
};

/// Runs every (value x repetition x solver) cell, writes results.csv plus one
/// policy JSON artifact per successful cell under <out_dir>/policies/.
/// Cells run concurrently (STRATPOL_THREADS overrides the worker count); the
/// CSV is assembled in deterministic cell order regardless of scheduling.
std::vector<ExperimentRecord> run_experiment(const SweepSpec& spec, const std::string& out_dir);

std::string records_to_csv(const std::vector<ExperimentRecord>& records);

}  // namespace stratpol
