#pragma once

#include <array>

#include "tuc/grid.hpp"
#include "tuc/trainer.hpp"

namespace tuc {

// Tabular Q-learning over the 10 observable states (own strategy x
// cooperating-neighbor count), one table shared by all agents.
struct QTable {
    std::array<double, 2 * (kNeighbors + 1) * 2> values{};
    double alpha = 0.1;
    double gamma = 0.9;
    double epsilon = 0.02;

    double& q(int own, int coop_neighbors, int action) {
        return values[(own * (kNeighbors + 1) + coop_neighbors) * 2 + action];
    }
    double q(int own, int coop_neighbors, int action) const {
        return values[(own * (kNeighbors + 1) + coop_neighbors) * 2 + action];
    }
    // greedy action; ties prefer Defect
    int greedy(int own, int coop_neighbors) const {
        return q(own, coop_neighbors, 1) > q(own, coop_neighbors, 0) ? 1 : 0;
    }
};

struct FermiConfig {
    double noise_k = 0.5;  // selection intensity, > 0
};

// Probability that the focal agent adopts the neighbor's strategy:
// 1 / (1 + exp((own_payoff - neighbor_payoff) / noise_k)).
double fermi_adoption_probability(double own_payoff, double neighbor_payoff, double noise_k);

// Payoffs on the frozen grid; each agent picks one uniform-random von
// Neumann neighbor and adopts its strategy with the Fermi probability; all
// adoptions are applied synchronously.
void fermi_step(StrategyGrid& grid, double r, const FermiConfig& fermi, Rng& rng);

// Epsilon-greedy joint action on the frozen grid, synchronous application,
// reward = the agent's total payoff on the new grid, then TD updates applied
// sequentially in row-major agent order.
void qlearning_step(StrategyGrid& grid, QTable& table, double r, Rng& rng);

// Standard PPO: the TUC epoch with eta pinned to 0, zeta = 0 and w_t pinned
// to 0 (pure individual reward). Same code path by construction.
LossReport vanilla_ppo_epoch(StrategyGrid& grid, PolicyParams& params, AdamState& adam,
                             DualState& dual, Rng& rng, const TrainConfig& cfg,
                             int64_t iteration, EpochScratch* scratch = nullptr);

}  // namespace tuc
