#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tuc/config.hpp"
#include "tuc/runner.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string preset;
    std::string algo;
    std::string out;
    std::optional<uint64_t> seed;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON experiment config");
    cmd->add_option("--preset", flags.preset, "named preset (desk)")
        ->check(CLI::IsMember({"desk"}));
    cmd->add_option("--algo", flags.algo, "algorithm override")
        ->check(CLI::IsMember({"tucppo", "ppo", "qlearning", "fermi"}));
    cmd->add_option("--out", flags.out, "output directory override");
    cmd->add_option("--seed", flags.seed, "master seed override");
}

// defaults -> preset -> config file -> CLI flags
int assemble(const CommonFlags& flags, tuc::ExperimentConfig& cfg) {
    if (flags.preset == "desk") tuc::apply_desk_preset(cfg);
    std::vector<std::string> diags;
    if (!flags.config_path.empty()) diags = tuc::overlay_config_file(flags.config_path, cfg);
    if (!flags.algo.empty()) {
        if (flags.algo == "tucppo") cfg.algorithm = tuc::Algorithm::TucPpo;
        else if (flags.algo == "ppo") cfg.algorithm = tuc::Algorithm::Ppo;
        else if (flags.algo == "qlearning") cfg.algorithm = tuc::Algorithm::QLearning;
        else cfg.algorithm = tuc::Algorithm::Fermi;
    }
    if (!flags.out.empty()) cfg.out_dir = flags.out;
    if (flags.seed) cfg.master_seed = *flags.seed;
    const auto range_diags = tuc::check_config(cfg);
    diags.insert(diags.end(), range_diags.begin(), range_diags.end());
    if (!diags.empty()) {
        for (const auto& d : diags) std::cerr << "config error: " << d << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spatial public goods game simulator (TUC-PPO, PPO, Q-learning, Fermi)"};
    app.require_subcommand(1);

    CommonFlags run_flags, sweep_flags;
    std::string validate_path;

    CLI::App* run_cmd = app.add_subcommand("run", "single seeded run: curves, snapshots, checkpoint");
    add_common_flags(run_cmd, run_flags);
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "multi-seed r sweep: ci_table/errbar/violin CSVs");
    add_common_flags(sweep_cmd, sweep_flags);
    CLI::App* validate_cmd = app.add_subcommand("validate", "parse and range-check a config file");
    validate_cmd->add_option("--config", validate_path, "JSON experiment config")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            tuc::ExperimentConfig cfg;
            if (int rc = assemble(run_flags, cfg)) return rc;
            tuc::run(cfg);
            std::cout << "run complete: " << cfg.out_dir << "\n";
        } else if (sweep_cmd->parsed()) {
            tuc::ExperimentConfig cfg;
            if (int rc = assemble(sweep_flags, cfg)) return rc;
            tuc::sweep(cfg);
            std::cout << "sweep complete: " << cfg.out_dir << "\n";
        } else {
            const auto result = tuc::validate_config(validate_path);
            if (!result.diagnostics.empty()) {
                for (const auto& d : result.diagnostics) std::cerr << d << "\n";
                return 1;
            }
            std::cout << "config OK: algorithm=" << tuc::algorithm_name(result.config->algorithm)
                      << " grid_size=" << result.config->grid_size
                      << " iterations=" << result.config->effective_iterations() << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
