#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tuc/grid.hpp"

namespace tuc {

// Binary PGM ("P5", maxval 255), row-major. Cooperators are white (255),
// defectors black (0).
void write_grid_pgm(const StrategyGrid& grid, const std::filesystem::path& path);

// Payoff heatmap: per-frame linear min-max normalization to [0,255], plus a
// sidecar text file recording "min max" in game units. A uniform field
// (max == min) renders as all-zero pixels.
void write_payoff_pgm(const std::vector<double>& values, int side,
                      const std::filesystem::path& pgm_path,
                      const std::filesystem::path& sidecar_path);

inline std::string snapshot_filename(long long iteration) {
    return "snap_t" + std::to_string(iteration) + ".pgm";
}
inline std::string heatmap_filename(long long iteration) {
    return "payoff_t" + std::to_string(iteration) + ".pgm";
}
inline std::string heatmap_sidecar_filename(long long iteration) {
    return "payoff_t" + std::to_string(iteration) + ".txt";
}

}  // namespace tuc
