#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "omspec/peaks.hpp"
#include "omspec/spectrum.hpp"

using namespace omspec;

TEST_CASE("single Lorentzian") {
    std::vector<double> x, y;
    for (int i = 0; i <= 1000; ++i) {
        x.push_back(-5.0 + 0.01 * i);
        const double d = x.back() - 0.337;
        y.push_back(1.0 / (d * d + 0.01));
    }
    const PeakSet ps = find_peaks(x, y, 0.05);
    REQUIRE(ps.peaks.size() == 1);
    CHECK(std::abs(ps.peaks[0].location - 0.337) < 0.01);
    const double ymax = *std::max_element(y.begin(), y.end());
    CHECK(ps.peaks[0].height >= ymax);
    CHECK(ps.peaks[0].height < 1.01 * ymax);
    CHECK(ps.threshold == doctest::Approx(0.05 * ymax));
}

TEST_CASE("prominence threshold and plateaus") {
    const std::vector<double> x{0, 1, 2, 3, 4, 5, 6, 7, 8};
    const std::vector<double> y{0, 1, 0.9, 0.95, 0.1, 2, 2, 0, 0};
    const PeakSet low = find_peaks(x, y, 0.01);
    REQUIRE(low.peaks.size() == 3);
    CHECK(low.peaks[2].index == 5);  // left end of the plateau
    CHECK(low.peaks[1].prominence == doctest::Approx(0.05));
    const PeakSet high = find_peaks(x, y, 0.1);
    CHECK(high.peaks.size() == 2);
}

TEST_CASE("edges are never peaks") {
    const std::vector<double> x{0, 1, 2, 3};
    const std::vector<double> y{5, 1, 1, 5};
    CHECK(find_peaks(x, y, 0.05).peaks.empty());
}

TEST_CASE("bad input") {
    const std::vector<double> x{0, 1, 2};
    const std::vector<double> y{0, 1, 0};
    CHECK_THROWS(find_peaks(x, y, 0.0));
    CHECK_THROWS(find_peaks(x, y, 1.0));
    CHECK_THROWS(find_peaks(std::vector<double>{0, 1}, std::vector<double>{0, 1}, 0.1));
    CHECK_THROWS(find_peaks(x, std::vector<double>{0, 1}, 0.1));
}

TEST_CASE("Jaynes-Cummings doublet") {
    SystemParams p;
    p.g_m = 0.0;
    const FilterSpec f = FilterSpec::default_grid();
    const auto n = ew_counts_closed(p, make_initial_state({Branch::AtomExcited, 0}, p), f, 20.0,
                                    SpectrumMode::Incoherent);
    const PeakSet ps = find_peaks(f.delta_grid, n, 0.05);
    REQUIRE(ps.peaks.size() == 2);
    CHECK(std::abs(std::abs(ps.peaks[0].location) - 4.0) < 0.02);
    CHECK(std::abs(std::abs(ps.peaks[1].location) - 4.0) < 0.02);
}
