#include "tuc/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "tuc/rng.hpp"
#include "tuc/text.hpp"

namespace tuc {

using nlohmann::json;

std::string algorithm_name(Algorithm algo) {
    switch (algo) {
        case Algorithm::TucPpo: return "tucppo";
        case Algorithm::Ppo: return "ppo";
        case Algorithm::QLearning: return "qlearning";
        case Algorithm::Fermi: return "fermi";
    }
    return "?";
}

uint64_t algorithm_id(Algorithm algo) {
    switch (algo) {
        case Algorithm::TucPpo: return 1;
        case Algorithm::Ppo: return 2;
        case Algorithm::QLearning: return 3;
        case Algorithm::Fermi: return 4;
    }
    return 0;
}

int64_t ExperimentConfig::effective_iterations() const {
    if (iterations) return *iterations;
    const bool gradient_engine = algorithm == Algorithm::TucPpo || algorithm == Algorithm::Ppo;
    return gradient_engine ? 1000 : 10000;
}

int ExperimentConfig::trial_count() const {
    return seed_list.empty() ? seed_count : static_cast<int>(seed_list.size());
}

uint64_t ExperimentConfig::trial_seed(int r_index, int trial_index) const {
    if (!seed_list.empty()) return seed_list[static_cast<size_t>(trial_index)];
    return derive_trial_seed(master_seed, algorithm_id(algorithm),
                             static_cast<uint64_t>(r_index),
                             static_cast<uint64_t>(trial_index));
}

std::vector<double> ExperimentConfig::r_grid() const {
    if (!r_range) return {r};
    const int count =
        static_cast<int>(std::floor((r_range->max - r_range->min) / r_range->step + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) grid.push_back(r_range->min + i * r_range->step);
    return grid;
}

void apply_desk_preset(ExperimentConfig& cfg) {
    cfg.grid_size = 50;
    cfg.seed_count = 10;
    cfg.r_range = RRange{3.0, 4.2, 0.1};
}

namespace {

const std::set<std::string> kKnownKeys = {
    "algorithm", "grid_size",  "r",          "r_min",        "r_max",
    "r_step",    "iterations", "seeds",      "init",         "bernoulli_p",
    "snapshots", "alpha",      "gamma",      "lambda",       "eps_clip",
    "delta",     "rho",        "tau_threshold", "zeta",      "rollout_len",
    "inner_epochs", "fermi_k", "alpha_q",    "gamma_q",      "eps_q",
    "master_seed", "out_dir"};

bool get_double(const json& j, const char* key, double& out, std::vector<std::string>& diags) {
    if (!j.contains(key)) return false;
    if (!j[key].is_number()) {
        diags.push_back(std::string(key) + ": expected a number");
        return false;
    }
    out = j[key].get<double>();
    return true;
}

bool get_int(const json& j, const char* key, int64_t& out, std::vector<std::string>& diags) {
    if (!j.contains(key)) return false;
    if (!j[key].is_number_integer()) {
        diags.push_back(std::string(key) + ": expected an integer");
        return false;
    }
    out = j[key].get<int64_t>();
    return true;
}

void parse_into(const json& j, ExperimentConfig& cfg, std::vector<std::string>& diags) {
    for (const auto& [key, value] : j.items()) {
        if (!kKnownKeys.count(key)) diags.push_back(key + ": unknown key");
    }

    if (j.contains("algorithm")) {
        if (!j["algorithm"].is_string()) {
            diags.push_back("algorithm: expected a string");
        } else {
            const std::string name = j["algorithm"].get<std::string>();
            if (name == "tucppo") cfg.algorithm = Algorithm::TucPpo;
            else if (name == "ppo") cfg.algorithm = Algorithm::Ppo;
            else if (name == "qlearning") cfg.algorithm = Algorithm::QLearning;
            else if (name == "fermi") cfg.algorithm = Algorithm::Fermi;
            else diags.push_back("algorithm: must be one of tucppo|ppo|qlearning|fermi, got " + name);
        }
    }

    int64_t tmp_int;
    if (get_int(j, "grid_size", tmp_int, diags)) cfg.grid_size = static_cast<int>(tmp_int);
    get_double(j, "r", cfg.r, diags);

    const bool has_min = j.contains("r_min"), has_max = j.contains("r_max"),
               has_step = j.contains("r_step");
    if (has_min || has_max || has_step) {
        if (!(has_min && has_max && has_step)) {
            diags.push_back("r_min: r_min, r_max and r_step must be given together");
        } else {
            RRange range;
            bool ok = get_double(j, "r_min", range.min, diags);
            ok = get_double(j, "r_max", range.max, diags) && ok;
            ok = get_double(j, "r_step", range.step, diags) && ok;
            if (ok) cfg.r_range = range;
        }
    }

    if (get_int(j, "iterations", tmp_int, diags)) cfg.iterations = tmp_int;

    if (j.contains("seeds")) {
        const json& s = j["seeds"];
        if (s.is_number_integer()) {
            cfg.seed_count = s.get<int>();
            cfg.seed_list.clear();
        } else if (s.is_array()) {
            cfg.seed_list.clear();
            bool ok = true;
            for (const auto& e : s) {
                if (!e.is_number_integer() || e.get<int64_t>() < 0) {
                    diags.push_back("seeds: list entries must be non-negative integers");
                    ok = false;
                    break;
                }
                cfg.seed_list.push_back(e.get<uint64_t>());
            }
            if (!ok) cfg.seed_list.clear();
        } else {
            diags.push_back("seeds: expected a count or a list of seeds");
        }
    }

    if (j.contains("init")) {
        if (!j["init"].is_string()) {
            diags.push_back("init: expected a string");
        } else {
            const std::string name = j["init"].get<std::string>();
            if (name == "halfhalf") cfg.init = InitScheme::HalfHalf;
            else if (name == "bernoulli") cfg.init = InitScheme::Bernoulli;
            else if (name == "alldefect") cfg.init = InitScheme::AllDefect;
            else if (name == "allcooperate") cfg.init = InitScheme::AllCooperate;
            else diags.push_back("init: must be one of halfhalf|bernoulli|alldefect|allcooperate, got " + name);
        }
    }

    get_double(j, "bernoulli_p", cfg.bernoulli_p, diags);

    if (j.contains("snapshots")) {
        if (!j["snapshots"].is_array()) {
            diags.push_back("snapshots: expected a list of iterations");
        } else {
            cfg.snapshots.clear();
            for (const auto& e : j["snapshots"]) {
                if (!e.is_number_integer() || e.get<int64_t>() < 0) {
                    diags.push_back("snapshots: entries must be non-negative integers");
                    break;
                }
                cfg.snapshots.push_back(e.get<int64_t>());
            }
        }
    }

    get_double(j, "alpha", cfg.alpha, diags);
    get_double(j, "gamma", cfg.gamma, diags);
    get_double(j, "lambda", cfg.lambda, diags);
    get_double(j, "eps_clip", cfg.eps_clip, diags);
    get_double(j, "delta", cfg.delta, diags);
    get_double(j, "rho", cfg.rho, diags);
    get_double(j, "tau_threshold", cfg.tau_threshold, diags);
    get_double(j, "zeta", cfg.zeta, diags);
    if (get_int(j, "rollout_len", tmp_int, diags)) cfg.rollout_len = static_cast<int>(tmp_int);
    if (get_int(j, "inner_epochs", tmp_int, diags)) cfg.inner_epochs = static_cast<int>(tmp_int);
    get_double(j, "fermi_k", cfg.fermi_k, diags);
    get_double(j, "alpha_q", cfg.alpha_q, diags);
    get_double(j, "gamma_q", cfg.gamma_q, diags);
    get_double(j, "eps_q", cfg.eps_q, diags);

    if (j.contains("master_seed")) {
        if (!j["master_seed"].is_number_integer() || j["master_seed"].get<int64_t>() < 0) {
            diags.push_back("master_seed: expected a non-negative integer");
        } else {
            cfg.master_seed = j["master_seed"].get<uint64_t>();
        }
    }

    if (j.contains("out_dir")) {
        if (!j["out_dir"].is_string()) diags.push_back("out_dir: expected a string");
        else cfg.out_dir = j["out_dir"].get<std::string>();
    }
}

}  // namespace

std::vector<std::string> check_config(const ExperimentConfig& cfg) {
    std::vector<std::string> diags;
    auto require = [&diags](bool ok, const std::string& msg) {
        if (!ok) diags.push_back(msg);
    };
    require(cfg.grid_size >= 2, "grid_size: must be >= 2, got " + std::to_string(cfg.grid_size));
    require(std::isfinite(cfg.r) && cfg.r >= 1.0, "r: must be >= 1.0, got " + format_double(cfg.r));
    if (cfg.r_range) {
        require(std::isfinite(cfg.r_range->min) && cfg.r_range->min >= 1.0,
                "r_min: must be >= 1.0, got " + format_double(cfg.r_range->min));
        require(cfg.r_range->max >= cfg.r_range->min, "r_max: must be >= r_min");
        require(cfg.r_range->step > 0.0,
                "r_step: must be positive, got " + format_double(cfg.r_range->step));
    }
    if (cfg.iterations) require(*cfg.iterations >= 1, "iterations: must be >= 1");
    require(cfg.seed_list.empty() ? cfg.seed_count >= 1 : true, "seeds: count must be >= 1");
    require(cfg.bernoulli_p >= 0.0 && cfg.bernoulli_p <= 1.0,
            "bernoulli_p: must lie in [0,1], got " + format_double(cfg.bernoulli_p));
    require(cfg.alpha > 0.0, "alpha: must be positive, got " + format_double(cfg.alpha));
    require(cfg.gamma > 0.0 && cfg.gamma <= 1.0,
            "gamma: must lie in (0,1], got " + format_double(cfg.gamma));
    require(cfg.lambda >= 0.0 && cfg.lambda <= 1.0,
            "lambda: must lie in [0,1], got " + format_double(cfg.lambda));
    require(cfg.eps_clip > 0.0, "eps_clip: must be positive, got " + format_double(cfg.eps_clip));
    require(cfg.delta >= 0.0, "delta: must be non-negative, got " + format_double(cfg.delta));
    require(cfg.rho >= 0.0, "rho: must be non-negative, got " + format_double(cfg.rho));
    require(std::isfinite(cfg.tau_threshold), "tau_threshold: must be finite");
    require(cfg.zeta >= 0.0, "zeta: must be non-negative, got " + format_double(cfg.zeta));
    require(cfg.rollout_len >= 1, "rollout_len: must be >= 1");
    require(cfg.inner_epochs >= 1, "inner_epochs: must be >= 1");
    require(cfg.fermi_k > 0.0, "fermi_k: must be positive, got " + format_double(cfg.fermi_k));
    require(cfg.alpha_q > 0.0 && cfg.alpha_q <= 1.0,
            "alpha_q: must lie in (0,1], got " + format_double(cfg.alpha_q));
    require(cfg.gamma_q >= 0.0 && cfg.gamma_q < 1.0,
            "gamma_q: must lie in [0,1), got " + format_double(cfg.gamma_q));
    require(cfg.eps_q >= 0.0 && cfg.eps_q <= 1.0,
            "eps_q: must lie in [0,1], got " + format_double(cfg.eps_q));
    require(!cfg.out_dir.empty(), "out_dir: must not be empty");
    return diags;
}

std::vector<std::string> overlay_config_file(const std::filesystem::path& path,
                                             ExperimentConfig& base) {
    std::ifstream in(path);
    if (!in) return {path.string() + ": cannot open config file"};
    json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) return {path.string() + ": invalid JSON"};
    if (!j.is_object()) return {path.string() + ": top level must be a JSON object"};
    std::vector<std::string> diags;
    parse_into(j, base, diags);
    return diags;
}

ConfigResult validate_config(const std::filesystem::path& path) {
    ExperimentConfig cfg;
    ConfigResult result;
    result.diagnostics = overlay_config_file(path, cfg);
    auto range_diags = check_config(cfg);
    result.diagnostics.insert(result.diagnostics.end(), range_diags.begin(), range_diags.end());
    if (result.diagnostics.empty()) result.config = cfg;
    return result;
}

}  // namespace tuc
