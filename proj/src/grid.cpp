#include "tuc/grid.hpp"

#include <stdexcept>
#include <string>

namespace tuc {

StrategyGrid::StrategyGrid(int side_length)
    : side_(side_length) {
    if (side_length < 2) {
        throw std::invalid_argument("grid side length must be >= 2, got " +
                                    std::to_string(side_length));
    }
    cells_.assign(static_cast<size_t>(side_) * side_, 0);
}

std::array<int, 4> StrategyGrid::neighbor_indices(int idx) const {
    const int row = idx / side_;
    const int col = idx % side_;
    const int up = (row == 0 ? side_ - 1 : row - 1) * side_ + col;
    const int down = (row == side_ - 1 ? 0 : row + 1) * side_ + col;
    const int left = row * side_ + (col == 0 ? side_ - 1 : col - 1);
    const int right = row * side_ + (col == side_ - 1 ? 0 : col + 1);
    return {up, down, left, right};
}

int StrategyGrid::coop_neighbors(int idx) const {
    const auto nb = neighbor_indices(idx);
    return cells_[nb[0]] + cells_[nb[1]] + cells_[nb[2]] + cells_[nb[3]];
}

int StrategyGrid::cooperator_count() const {
    int count = 0;
    for (uint8_t c : cells_) count += c;
    return count;
}

StrategyGrid init_grid(int side_length, InitScheme scheme, double p, Rng& rng) {
    StrategyGrid grid(side_length);
    const int n = grid.cell_count();
    switch (scheme) {
        case InitScheme::AllDefect:
            break;  // already all zeros
        case InitScheme::AllCooperate:
            for (int i = 0; i < n; ++i) grid.set_index(i, Strategy::Cooperate);
            break;
        case InitScheme::HalfHalf:
            for (int row = side_length / 2; row < side_length; ++row)
                for (int col = 0; col < side_length; ++col)
                    grid.set(row, col, Strategy::Cooperate);
            break;
        case InitScheme::Bernoulli:
            if (!(p >= 0.0 && p <= 1.0)) {
                throw std::invalid_argument(
                    "bernoulli probability must lie in [0,1], got " + std::to_string(p));
            }
            for (int i = 0; i < n; ++i)
                grid.set_index(i, rng.bernoulli(p) ? Strategy::Cooperate : Strategy::Defect);
            break;
    }
    return grid;
}

std::vector<AgentObservation> encode_observations(const StrategyGrid& grid) {
    const int n = grid.cell_count();
    const double coop_rate =
        static_cast<double>(grid.cooperator_count()) / static_cast<double>(n);
    std::vector<AgentObservation> obs(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        obs[i].own_strategy = static_cast<int>(grid.at_index(i));
        obs[i].coop_neighbors = grid.coop_neighbors(i);
        obs[i].global_coop_rate = coop_rate;
    }
    return obs;
}

}  // namespace tuc
