// peaks.cpp

#include "omspec/peaks.hpp"

#include <algorithm>
#include <cmath>

#include "omspec/errors.hpp"

namespace omspec {

namespace {

// Vertex of the parabola through (x0,y0), (x1,y1), (x2,y2).
std::pair<double, double> parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
    const double d1 = (y1 - y0) / (x1 - x0);
    const double d2 = (y2 - y1) / (x2 - x1);
    const double a = (d2 - d1) / (x2 - x0);
    if (!(a < 0.0)) return {x1, y1};
    const double b = d1 - a * (x0 + x1);
    const double c = y0 - a * x0 * x0 - b * x0;
    double xv = -b / (2.0 * a);
    xv = std::clamp(xv, x0, x2);
    return {xv, a * xv * xv + b * xv + c};
}

}  // namespace

PeakSet find_peaks(std::span<const double> grid, std::span<const double> values, double prominence_fraction) {
    if (grid.size() != values.size()) throw InvalidArgument("grid and values differ in length");
    if (grid.size() < 3) throw InvalidArgument("peak search needs at least three samples");
    if (!(prominence_fraction > 0.0 && prominence_fraction < 1.0)) {
        throw InvalidArgument("prominence fraction must lie in (0, 1)");
    }
    const std::size_t n = values.size();
    const double vmax = *std::max_element(values.begin(), values.end());
    PeakSet out;
    out.threshold = prominence_fraction * vmax;
    if (!(vmax > 0.0)) return out;

    std::size_t i = 1;
    while (i + 1 < n) {
        if (!(values[i] > values[i - 1])) {
            ++i;
            continue;
        }
        // walk across a flat top; the peak sits in its middle
        std::size_t j = i;
        while (j + 1 < n && values[j + 1] == values[i]) ++j;
        if (j + 1 >= n || !(values[j + 1] < values[i])) {
            i = j + 1;
            continue;
        }
        const std::size_t top = (i + j) / 2;
        const double h = values[top];

        double left_min = h;
        for (std::size_t k = i; k-- > 0;) {
            if (values[k] > h) break;
            left_min = std::min(left_min, values[k]);
        }
        double right_min = h;
        for (std::size_t k = j + 1; k < n; ++k) {
            if (values[k] > h) break;
            right_min = std::min(right_min, values[k]);
        }
        const double prominence = h - std::max(left_min, right_min);
        if (prominence >= out.threshold) {
            Peak p;
            p.index = top;
            p.prominence = prominence;
            if (i == j) {
                const auto [x, y] = parabola_vertex(grid[top - 1], values[top - 1], grid[top], h, grid[top + 1],
                                                    values[top + 1]);
                p.location = x;
                p.height = y;
            } else {
                p.location = 0.5 * (grid[i] + grid[j]);
                p.height = h;
            }
            out.peaks.push_back(p);
        }
        i = j + 1;
    }
    return out;
}

}  // namespace omspec
