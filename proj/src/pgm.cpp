#include "tuc/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "tuc/text.hpp"

namespace tuc {

namespace {

std::ofstream open_binary(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

void write_pgm_bytes(const std::filesystem::path& path, int side,
                     const std::vector<uint8_t>& pixels) {
    auto out = open_binary(path);
    out << "P5\n" << side << " " << side << "\n255\n";
    out.write(reinterpret_cast<const char*>(pixels.data()),
              static_cast<std::streamsize>(pixels.size()));
    if (!out) throw std::runtime_error("short write to " + path.string());
}

}  // namespace

void write_grid_pgm(const StrategyGrid& grid, const std::filesystem::path& path) {
    const int n = grid.cell_count();
    std::vector<uint8_t> pixels(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        pixels[i] = grid.at_index(i) == Strategy::Cooperate ? 255 : 0;
    write_pgm_bytes(path, grid.side(), pixels);
}

void write_payoff_pgm(const std::vector<double>& values, int side,
                      const std::filesystem::path& pgm_path,
                      const std::filesystem::path& sidecar_path) {
    if (values.size() != static_cast<size_t>(side) * side) {
        throw std::invalid_argument("payoff field size does not match grid side");
    }
    const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *min_it;
    const double hi = *max_it;
    std::vector<uint8_t> pixels(values.size(), 0);
    if (hi > lo) {
        const double scale = 255.0 / (hi - lo);
        for (size_t i = 0; i < values.size(); ++i)
            pixels[i] = static_cast<uint8_t>(std::lround((values[i] - lo) * scale));
    }
    write_pgm_bytes(pgm_path, side, pixels);

    std::ofstream sidecar(sidecar_path);
    if (!sidecar) throw std::runtime_error("cannot open " + sidecar_path.string());
    sidecar << format_double(lo) << " " << format_double(hi) << "\n";
}

}  // namespace tuc
