#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tuc/grid.hpp"

namespace tuc {

enum class Algorithm { TucPpo, Ppo, QLearning, Fermi };

std::string algorithm_name(Algorithm algo);
// ids feeding the per-trial seed derivation
uint64_t algorithm_id(Algorithm algo);

struct RRange {
    double min = 0.0;
    double max = 0.0;
    double step = 0.0;
};

// Full experiment description. Defaults are the paper-protocol values:
// L=200, alpha=1e-4, gamma=0.99, lambda=0.95, eps_clip=0.2, delta=0.5,
// rho=0.01, tau_threshold=0.5, zeta=0.01.
struct ExperimentConfig {
    Algorithm algorithm = Algorithm::TucPpo;
    int grid_size = 200;
    double r = 3.5;
    std::optional<RRange> r_range;          // sweep grid; run uses `r`
    std::optional<int64_t> iterations;      // absent: 1000 (ppo/tucppo) or 10000 (baselines)
    int seed_count = 10;
    std::vector<uint64_t> seed_list;        // explicit per-trial seeds; overrides seed_count
    InitScheme init = InitScheme::HalfHalf;
    double bernoulli_p = 0.5;
    std::vector<int64_t> snapshots = {0, 1, 10, 100, 1000};

    double alpha = 1e-4;
    double gamma = 0.99;
    double lambda = 0.95;
    double eps_clip = 0.2;
    double delta = 0.5;  // value loss weight
    double rho = 0.01;   // entropy coefficient
    double tau_threshold = 0.5;
    double zeta = 0.01;
    int rollout_len = 1;
    int inner_epochs = 4;  // PPO gradient steps per buffer

    double fermi_k = 0.5;
    double alpha_q = 0.1;
    double gamma_q = 0.9;
    double eps_q = 0.02;

    uint64_t master_seed = 1;
    std::string out_dir = "out";

    // baseline engines run 10x the gradient-engine budget unless pinned
    int64_t effective_iterations() const;
    int trial_count() const;
    uint64_t trial_seed(int r_index, int trial_index) const;
    std::vector<double> r_grid() const;  // the sweep grid, or {r}
};

// L=50, 10 seeds, r in [3.0, 4.2] step 0.1 — finishes in minutes
void apply_desk_preset(ExperimentConfig& cfg);

// Overlays the JSON document at `path` onto `base`. Unknown keys, type
// mismatches and out-of-range values produce diagnostics, each naming the
// offending key; range checks also cover fields set before the overlay.
std::vector<std::string> overlay_config_file(const std::filesystem::path& path,
                                             ExperimentConfig& base);

// Range-checks an assembled config (also used after CLI flag overrides).
std::vector<std::string> check_config(const ExperimentConfig& cfg);

struct ConfigResult {
    std::optional<ExperimentConfig> config;  // set iff diagnostics is empty
    std::vector<std::string> diagnostics;
};

// Parse-and-range-check from defaults.
ConfigResult validate_config(const std::filesystem::path& path);

}  // namespace tuc
