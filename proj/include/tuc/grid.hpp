#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tuc/rng.hpp"

namespace tuc {

enum class Strategy : uint8_t { Defect = 0, Cooperate = 1 };

enum class InitScheme { HalfHalf, Bernoulli, AllDefect, AllCooperate };

// L x L binary strategy field with toroidal indexing (von Neumann
// neighborhood, k = 4). Cells are stored row-major.
class StrategyGrid {
public:
    explicit StrategyGrid(int side_length);

    int side() const { return side_; }
    int cell_count() const { return side_ * side_; }

    Strategy at(int row, int col) const {  // wraps toroidally for any ints
        return static_cast<Strategy>(cells_[wrap(row) * side_ + wrap(col)]);
    }
    Strategy at_index(int idx) const { return static_cast<Strategy>(cells_[idx]); }
    void set(int row, int col, Strategy s) { cells_[wrap(row) * side_ + wrap(col)] = static_cast<uint8_t>(s); }
    void set_index(int idx, Strategy s) { cells_[idx] = static_cast<uint8_t>(s); }

    // neighbor cell indices in fixed order: up, down, left, right
    std::array<int, 4> neighbor_indices(int idx) const;

    // cooperating von Neumann neighbors of cell idx, in [0, 4]
    int coop_neighbors(int idx) const;

    // sequential left-to-right count over all cells
    int cooperator_count() const;

    const std::vector<uint8_t>& raw() const { return cells_; }

    bool operator==(const StrategyGrid&) const = default;

private:
    int wrap(int v) const {
        v %= side_;
        return v < 0 ? v + side_ : v;
    }

    int side_;
    std::vector<uint8_t> cells_;
};

// State encoding fed to the policy: own strategy, cooperating-neighbor
// count, and the grid-wide cooperation rate (shared by all agents).
struct AgentObservation {
    int own_strategy = 0;        // 0 or 1
    int coop_neighbors = 0;      // 0..4
    double global_coop_rate = 0.0;
};

// scheme = Bernoulli draws each cell Cooperate with probability p; the other
// schemes ignore p. HalfHalf puts defectors in rows [0, L/2) and cooperators
// in rows [L/2, L).
StrategyGrid init_grid(int side_length, InitScheme scheme, double p, Rng& rng);

std::vector<AgentObservation> encode_observations(const StrategyGrid& grid);

}  // namespace tuc
