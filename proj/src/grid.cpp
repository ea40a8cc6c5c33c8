#include "polariton/grid.hpp"

#include <cmath>

#include "polariton/errors.hpp"

namespace polariton {

std::vector<double> FrequencyGrid::values() const {
    std::vector<double> out(static_cast<std::size_t>(points));
    const double h = step();
    for (int i = 0; i < points; ++i) out[i] = min + h * i;
    out.back() = max;
    return out;
}

FrequencyGrid parse_grid(const std::string& text) {
    const auto first = text.find(':');
    const auto second = first == std::string::npos ? first : text.find(':', first + 1);
    if (second == std::string::npos) {
        throw ConfigError("grid must be MIN:MAX:POINTS, got '" + text + "'");
    }
    FrequencyGrid grid;
    try {
        std::size_t used = 0;
        const std::string lo = text.substr(0, first);
        const std::string hi = text.substr(first + 1, second - first - 1);
        const std::string n = text.substr(second + 1);
        grid.min = std::stod(lo, &used);
        if (used != lo.size()) throw std::invalid_argument(lo);
        grid.max = std::stod(hi, &used);
        if (used != hi.size()) throw std::invalid_argument(hi);
        grid.points = std::stoi(n, &used);
        if (used != n.size()) throw std::invalid_argument(n);
    } catch (const std::logic_error&) {
        throw ConfigError("grid must be MIN:MAX:POINTS, got '" + text + "'");
    }
    if (grid.points < 2) throw ConfigError("grid needs at least 2 points");
    if (!(grid.max > grid.min) || !std::isfinite(grid.min) || !std::isfinite(grid.max)) {
        throw ConfigError("grid requires finite MIN < MAX");
    }
    return grid;
}

void require_ascending(const std::vector<double>& omegas) {
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        if (!std::isfinite(omegas[i])) throw ConfigError("frequency grid contains a non-finite value");
        if (i > 0 && !(omegas[i] > omegas[i - 1])) {
            throw ConfigError("frequency grid must be strictly ascending");
        }
    }
}

}  // namespace polariton
