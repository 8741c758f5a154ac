#pragma once

#include <vector>

#include "tuc/grid.hpp"

namespace tuc {

// Von Neumann neighborhood size and public-goods group size. Every payoff
// formula hardcodes k+1 = 5; these are validated constants, not knobs.
inline constexpr int kNeighbors = 4;
inline constexpr int kGroupSize = kNeighbors + 1;

// One game group: a center cell plus its 4 neighbors.
struct GroupComposition {
    int center = 0;
    int cooperator_count = 0;  // cooperators among the 5 members
};

GroupComposition group_composition(const StrategyGrid& grid, int center);

// Payoff of one member in one group: cooperators pay 1 into the pool, the
// pool of n_cooperators units is multiplied by r and split over k+1 members.
double group_payoff(Strategy strategy, int n_cooperators, double r, int k = kNeighbors);

// Per-agent payoff summed over the agent's 5 groups (the ones centered on
// itself and on each neighbor). values[i] is the total for cell i.
std::vector<double> total_payoffs(const StrategyGrid& grid, double r);

// Cooperation-conditioned local reward: (r/5)*(coop_neighbors + 1) - 1 for
// cooperators, 0 for defectors.
double team_reward(const StrategyGrid& grid, int cell_index, double r);

}  // namespace tuc
