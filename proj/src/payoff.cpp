#include "tuc/payoff.hpp"

#include <stdexcept>
#include <string>

namespace tuc {

GroupComposition group_composition(const StrategyGrid& grid, int center) {
    GroupComposition g;
    g.center = center;
    g.cooperator_count = static_cast<int>(grid.at_index(center)) + grid.coop_neighbors(center);
    return g;
}

double group_payoff(Strategy strategy, int n_cooperators, double r, int k) {
    if (k != kNeighbors) {
        throw std::invalid_argument("group payoff is defined for k = 4, got k = " +
                                    std::to_string(k));
    }
    if (n_cooperators < 0 || n_cooperators > k + 1) {
        throw std::invalid_argument("cooperator count " + std::to_string(n_cooperators) +
                                    " outside [0, " + std::to_string(k + 1) + "]");
    }
    if (strategy == Strategy::Cooperate && n_cooperators < 1) {
        throw std::invalid_argument(
            "a cooperating member implies at least one cooperator in the group");
    }
    const double share = r * n_cooperators / (k + 1);
    return strategy == Strategy::Cooperate ? share - 1.0 : share;
}

std::vector<double> total_payoffs(const StrategyGrid& grid, double r) {
    const int n = grid.cell_count();
    // cooperator count of the group centered on each cell
    std::vector<int> group_coop(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        group_coop[i] = static_cast<int>(grid.at_index(i)) + grid.coop_neighbors(i);

    std::vector<double> values(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Strategy s = grid.at_index(i);
        const auto nb = grid.neighbor_indices(i);
        double total = group_payoff(s, group_coop[i], r);
        total += group_payoff(s, group_coop[nb[0]], r);
        total += group_payoff(s, group_coop[nb[1]], r);
        total += group_payoff(s, group_coop[nb[2]], r);
        total += group_payoff(s, group_coop[nb[3]], r);
        values[i] = total;
    }
    return values;
}

double team_reward(const StrategyGrid& grid, int cell_index, double r) {
    if (grid.at_index(cell_index) != Strategy::Cooperate) return 0.0;
    return r / kGroupSize * (grid.coop_neighbors(cell_index) + 1) - 1.0;
}

}  // namespace tuc
