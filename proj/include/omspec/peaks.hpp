// peaks.hpp - prominence-based peak picking on a sampled spectrum

#pragma once

#include <span>
#include <vector>

namespace omspec {

struct Peak {
    double location{0.0};  // refined by a parabola through the three nearest samples
    double height{0.0};
    double prominence{0.0};
    std::size_t index{0};  // grid index of the sampled maximum
};

struct PeakSet {
    std::vector<Peak> peaks;  // ascending in location
    double threshold{0.0};    // absolute prominence cut that was applied
};

/// Local maxima whose topographic prominence is at least
/// prominence_fraction * max(values). Grid end points are never peaks.
PeakSet find_peaks(std::span<const double> grid, std::span<const double> values, double prominence_fraction);

}  // namespace omspec
