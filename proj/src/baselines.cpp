#include "tuc/baselines.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tuc/payoff.hpp"

namespace tuc {

double fermi_adoption_probability(double own_payoff, double neighbor_payoff, double noise_k) {
    if (!(noise_k > 0.0)) throw std::invalid_argument("fermi noise K must be positive");
    return 1.0 / (1.0 + std::exp((own_payoff - neighbor_payoff) / noise_k));
}

void fermi_step(StrategyGrid& grid, double r, const FermiConfig& fermi, Rng& rng) {
    if (!(fermi.noise_k > 0.0)) throw std::invalid_argument("fermi noise K must be positive");
    const int n = grid.cell_count();
    const auto payoffs = total_payoffs(grid, r);
    std::vector<uint8_t> next(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto nb = grid.neighbor_indices(i);
        const int j = nb[rng.uniform4()];
        const double p = fermi_adoption_probability(payoffs[i], payoffs[j], fermi.noise_k);
        const bool adopt = rng.uniform() < p;
        next[i] = static_cast<uint8_t>(adopt ? grid.at_index(j) : grid.at_index(i));
    }
    for (int i = 0; i < n; ++i) grid.set_index(i, static_cast<Strategy>(next[i]));
}

void qlearning_step(StrategyGrid& grid, QTable& table, double r, Rng& rng) {
    if (!(table.epsilon >= 0.0 && table.epsilon <= 1.0)) {
        throw std::invalid_argument("exploration rate must lie in [0,1]");
    }
    const int n = grid.cell_count();
    std::vector<int> own(static_cast<size_t>(n)), neigh(static_cast<size_t>(n));
    std::vector<uint8_t> action(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        own[i] = static_cast<int>(grid.at_index(i));
        neigh[i] = grid.coop_neighbors(i);
        int a;
        if (rng.uniform() < table.epsilon) {
            a = rng.coin();
        } else {
            a = table.greedy(own[i], neigh[i]);
        }
        action[i] = static_cast<uint8_t>(a);
    }
    for (int i = 0; i < n; ++i) grid.set_index(i, static_cast<Strategy>(action[i]));

    const auto payoffs = total_payoffs(grid, r);
    for (int i = 0; i < n; ++i) {
        const int own_next = static_cast<int>(grid.at_index(i));
        const int neigh_next = grid.coop_neighbors(i);
        const double best_next = std::max(table.q(own_next, neigh_next, 0),
                                          table.q(own_next, neigh_next, 1));
        double& q = table.q(own[i], neigh[i], action[i]);
        q += table.alpha * (payoffs[i] + table.gamma * best_next - q);
    }
}

LossReport vanilla_ppo_epoch(StrategyGrid& grid, PolicyParams& params, AdamState& adam,
                             DualState& dual, Rng& rng, const TrainConfig& cfg,
                             int64_t iteration, EpochScratch* scratch) {
    dual.eta = 0.0;
    dual.zeta = 0.0;
    TrainConfig pinned = cfg;
    pinned.weight_override = 0.0;
    return train_epoch(grid, params, adam, dual, rng, pinned, iteration, scratch);
}

}  // namespace tuc
