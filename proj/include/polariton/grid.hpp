#pragma once

#include <string>
#include <vector>

namespace polariton {

/// Uniform frequency grid, endpoints included.
struct FrequencyGrid {
    double min = 0.0;
    double max = 1.0;
    int points = 2;

    std::vector<double> values() const;
    double step() const { return (max - min) / (points - 1); }
};

/// Parses "MIN:MAX:POINTS". Throws ConfigError on malformed input, points < 2
/// or max <= min.
FrequencyGrid parse_grid(const std::string& text);

/// Throws ConfigError unless the values are finite and strictly ascending.
void require_ascending(const std::vector<double>& omegas);

}  // namespace polariton
