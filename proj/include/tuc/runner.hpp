#pragma once

#include <filesystem>
#include <functional>

#include "tuc/config.hpp"
#include "tuc/stats.hpp"

namespace tuc {

// Workers for trial pools: min(TUC_THREADS or hardware_concurrency, tasks).
int worker_count(int task_count);

// Runs fn(0..n_tasks-1) on the worker pool. Task outputs must go to
// per-index slots; scheduling order is unspecified, results are not.
void parallel_for(int n_tasks, const std::function<void(int)>& fn);

struct TrialResult {
    double final_coop_fraction = 0.0;
    int64_t iterations_run = 0;
};

// One seeded trial of cfg's algorithm at enhancement factor r. When out_dir
// is non-null, writes curves.csv, scheduled snapshot/heatmap PGMs, and (for
// gradient engines) the final checkpoint into it.
TrialResult run_trial(const ExperimentConfig& cfg, double r, uint64_t trial_seed,
                      const std::filesystem::path* out_dir);

// `run` subcommand: single seeded run into cfg.out_dir.
void run(const ExperimentConfig& cfg);

// `sweep` subcommand: trials for every (r, seed) pair on the worker pool,
// then ci_table.csv / errbar.csv / violin.csv into cfg.out_dir.
void sweep(const ExperimentConfig& cfg);

}  // namespace tuc
