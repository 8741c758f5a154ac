#include "tuc/runner.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

#include "tuc/baselines.hpp"
#include "tuc/net.hpp"
#include "tuc/payoff.hpp"
#include "tuc/pgm.hpp"
#include "tuc/text.hpp"
#include "tuc/trainer.hpp"

namespace tuc {

int worker_count(int task_count) {
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (const char* env = std::getenv("TUC_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end && *end == '\0' && parsed >= 1) workers = static_cast<int>(parsed);
    }
    return workers < task_count ? workers : (task_count < 1 ? 1 : task_count);
}

void parallel_for(int n_tasks, const std::function<void(int)>& fn) {
    const int workers = worker_count(n_tasks);
    if (workers <= 1) {
        for (int i = 0; i < n_tasks; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const int i = next.fetch_add(1);
                if (i >= n_tasks) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

namespace {

constexpr char kCurvesHeader[] =
    "iteration,coop_fraction,defect_fraction,mean_payoff,mean_team_reward,"
    "w_t,eta,L_clip,L_vf,L_ent,L_cv,L_tuc\n";

struct CurvesWriter {
    std::ofstream out;

    explicit CurvesWriter(const std::filesystem::path& path)
        : out(path, std::ios::binary) {
        if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
        out << kCurvesHeader;
    }

    void grid_columns(int64_t iteration, const StrategyGrid& grid, double r) {
        const int n = grid.cell_count();
        const int coop = grid.cooperator_count();
        const auto payoffs = total_payoffs(grid, r);
        double payoff_sum = 0.0;
        for (double v : payoffs) payoff_sum += v;
        double team_sum = 0.0;
        for (int i = 0; i < n; ++i) team_sum += team_reward(grid, i, r);
        out << iteration << "," << format_double(static_cast<double>(coop) / n) << ","
            << format_double(static_cast<double>(n - coop) / n) << ","
            << format_double(payoff_sum / n) << "," << format_double(team_sum / n);
    }

    void loss_columns(const LossReport& report, double eta) {
        out << "," << format_double(report.w) << "," << format_double(eta) << ","
            << format_double(report.l_clip) << "," << format_double(report.l_vf) << ","
            << format_double(report.l_ent) << "," << format_double(report.l_cv) << ","
            << format_double(report.l_tuc) << "\n";
    }

    void blank_loss_columns() { out << ",,,,,,,\n"; }
};

void write_snapshot(const std::filesystem::path& dir, int64_t iteration,
                    const StrategyGrid& grid, double r) {
    write_grid_pgm(grid, dir / snapshot_filename(iteration));
    write_payoff_pgm(total_payoffs(grid, r), grid.side(), dir / heatmap_filename(iteration),
                     dir / heatmap_sidecar_filename(iteration));
}

}  // namespace

TrialResult run_trial(const ExperimentConfig& cfg, double r, uint64_t trial_seed,
                      const std::filesystem::path* out_dir) {
    Rng rng(trial_seed);
    StrategyGrid grid = init_grid(cfg.grid_size, cfg.init, cfg.bernoulli_p, rng);
    const int64_t iterations = cfg.effective_iterations();
    const std::set<int64_t> schedule(cfg.snapshots.begin(), cfg.snapshots.end());

    std::optional<CurvesWriter> curves;
    if (out_dir) {
        std::filesystem::create_directories(*out_dir);
        curves.emplace(*out_dir / "curves.csv");
        if (schedule.count(0)) write_snapshot(*out_dir, 0, grid, r);
    }

    const bool gradient_engine =
        cfg.algorithm == Algorithm::TucPpo || cfg.algorithm == Algorithm::Ppo;

    if (gradient_engine) {
        PolicyParams params = init_params(rng);
        AdamState adam;
        adam.base_lr = cfg.alpha;
        DualState dual;
        dual.tau_threshold = cfg.tau_threshold;
        dual.zeta = cfg.zeta;
        TrainConfig tc;
        tc.r = r;
        tc.gamma = cfg.gamma;
        tc.lambda = cfg.lambda;
        tc.eps_clip = cfg.eps_clip;
        tc.value_coef = cfg.delta;
        tc.entropy_coef = cfg.rho;
        tc.rollout_len = cfg.rollout_len;
        tc.inner_epochs = cfg.inner_epochs;
        EpochScratch scratch;
        for (int64_t t = 1; t <= iterations; ++t) {
            LossReport report;
            if (cfg.algorithm == Algorithm::TucPpo) {
                report = train_epoch(grid, params, adam, dual, rng, tc, t - 1, &scratch);
            } else {
                report = vanilla_ppo_epoch(grid, params, adam, dual, rng, tc, t - 1, &scratch);
            }
            if (curves) {
                curves->grid_columns(t, grid, r);
                curves->loss_columns(report, dual.eta);
            }
            if (out_dir && schedule.count(t)) write_snapshot(*out_dir, t, grid, r);
        }
        if (out_dir) save_checkpoint(*out_dir / "checkpoint.bin", params, adam, &dual);
    } else if (cfg.algorithm == Algorithm::QLearning) {
        QTable table;
        table.alpha = cfg.alpha_q;
        table.gamma = cfg.gamma_q;
        table.epsilon = cfg.eps_q;
        for (int64_t t = 1; t <= iterations; ++t) {
            qlearning_step(grid, table, r, rng);
            if (curves) {
                curves->grid_columns(t, grid, r);
                curves->blank_loss_columns();
            }
            if (out_dir && schedule.count(t)) write_snapshot(*out_dir, t, grid, r);
        }
    } else {
        for (int64_t t = 1; t <= iterations; ++t) {
            fermi_step(grid, r, FermiConfig{cfg.fermi_k}, rng);
            if (curves) {
                curves->grid_columns(t, grid, r);
                curves->blank_loss_columns();
            }
            if (out_dir && schedule.count(t)) write_snapshot(*out_dir, t, grid, r);
        }
    }

    TrialResult result;
    result.final_coop_fraction =
        static_cast<double>(grid.cooperator_count()) / grid.cell_count();
    result.iterations_run = iterations;
    return result;
}

void run(const ExperimentConfig& cfg) {
    const std::filesystem::path dir(cfg.out_dir);
    run_trial(cfg, cfg.r, cfg.trial_seed(0, 0), &dir);
}

void sweep(const ExperimentConfig& cfg) {
    const std::vector<double> grid = cfg.r_grid();
    const int trials = cfg.trial_count();
    if (grid.empty()) throw std::invalid_argument("sweep needs a non-empty r grid");
    if (trials < 2) throw std::invalid_argument("sweep needs at least 2 seeds per r");

    const int n_tasks = static_cast<int>(grid.size()) * trials;
    std::vector<RunOutcome> outcomes(static_cast<size_t>(n_tasks));
    parallel_for(n_tasks, [&](int task) {
        const int r_index = task / trials;
        const int trial_index = task % trials;
        const double r = grid[static_cast<size_t>(r_index)];
        const uint64_t seed = cfg.trial_seed(r_index, trial_index);
        const TrialResult res = run_trial(cfg, r, seed, nullptr);
        outcomes[static_cast<size_t>(task)] =
            RunOutcome{r, seed, res.final_coop_fraction, res.iterations_run};
    });

    const std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);
    const auto summaries = aggregate(outcomes);
    const std::string name = algorithm_name(cfg.algorithm);
    write_ci_table_csv(dir / "ci_table.csv", name, summaries);
    write_errbar_csv(dir / "errbar.csv", name, summaries);
    write_violin_csv(dir / "violin.csv", outcomes);
}

}  // namespace tuc
