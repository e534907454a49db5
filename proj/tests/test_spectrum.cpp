#include <doctest.h>

#include <random>

#include "omspec/errors.hpp"
#include "omspec/peaks.hpp"
#include "omspec/spectrum.hpp"
#include "oracles.hpp"

using namespace omspec;

namespace {

double rel_diff(const std::vector<double>& a, const std::vector<double>& b, double floor = 1e-12) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double scale = std::max(std::abs(a[i]), std::abs(b[i]));
        if (scale > floor) worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
    }
    return worst;
}

}  // namespace

TEST_CASE("single decaying photon matches the analytic filter response") {
    SystemParams p;
    p.g_a = 0.0;
    p.g_m = 0.0;
    p.m_max = 1;
    const PureState psi0 = make_initial_state({Branch::PhotonInCavity, 0}, p);
    const FilterSpec f = FilterSpec::uniform(0.1, -3.0, 3.0, 61);
    for (double t : {5.0, 40.0}) {
        for (auto mode : {SpectrumMode::Incoherent, SpectrumMode::CoherentAsPrinted}) {
            const std::vector<double> n = ew_counts_closed(p, psi0, f, t, mode);
            for (std::size_t j = 0; j < n.size(); ++j) {
                const double ref = oracle::single_pole_counts(0.5, 0.1, f.delta_grid[j], t);
                CHECK(n[j] == doctest::Approx(ref).epsilon(1e-7));
            }
            for (std::size_t j = 0; j < n.size(); ++j) CHECK(std::abs(n[j] - n[n.size() - 1 - j]) < 1e-9);
        }
    }
    const std::vector<double> stat = ew_counts_closed(p, psi0, f, 40.0, SpectrumMode::Incoherent);
    const PeakSet ps = find_peaks(f.delta_grid, stat, 0.05);
    REQUIRE(ps.peaks.size() == 1);
    CHECK(std::abs(ps.peaks[0].location) < 1e-6);
}

TEST_CASE("t = 0 gives an empty spectrum") {
    SystemParams p;
    const PureState psi0 = make_initial_state({Branch::AtomExcited, 0}, p);
    const FilterSpec f = FilterSpec::uniform(0.1, -8.0, 8.0, 21);
    for (double v : ew_counts_closed(p, psi0, f, 0.0, SpectrumMode::Incoherent)) CHECK(v == 0.0);
    for (double v : ew_counts_quadrature(p, psi0, f, 0.0, SpectrumMode::Incoherent)) CHECK(v == 0.0);
}

TEST_CASE("no photon, no counts") {
    SystemParams p;
    p.g_a = 0.0;
    p.gamma_a = 0.3;
    const PureState psi0 = make_initial_state({Branch::AtomExcited, 0}, p);
    const FilterSpec f = FilterSpec::uniform(0.1, -8.0, 8.0, 17);
    for (double v : ew_counts_closed(p, psi0, f, 10.0, SpectrumMode::Incoherent)) CHECK(v == 0.0);
    for (double v : ew_counts_quadrature(p, psi0, f, 10.0, SpectrumMode::Incoherent)) CHECK(v == 0.0);
}

TEST_CASE("correlation kernel") {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int trial = 0; trial < 10; ++trial) {
        const SystemParams p = oracle::random_params(rng, 2 + trial % 5);
        const PropagatorCache c = decompose(build_h_dnh(p));
        const PureState psi0 = make_initial_state({Branch::AtomExcited, 0}, p);
        const double t1 = u(rng), t2 = u(rng);
        CHECK(std::abs(correlation_kernel(p, c, psi0, t1, t2) - std::conj(correlation_kernel(p, c, psi0, t2, t1))) <
              1e-14);
        const PureState s = propagate(c, psi0, t1);
        const double rate = p.kappa * s.amps.tail(p.m_max + 1).squaredNorm();
        CHECK(std::abs(correlation_kernel(p, c, psi0, t1, t1) - rate) < 1e-13);
    }

    SystemParams jc;
    jc.g_m = 0.0;
    const PropagatorCache c = decompose(build_h_dnh(jc));
    const PureState psi0 = make_initial_state({Branch::AtomExcited, 0}, jc);
    const cplx b1 = propagate(c, psi0, 3.0).amps(11);
    const cplx b2 = propagate(c, psi0, 1.2).amps(11);
    CHECK(std::abs(correlation_kernel(jc, c, psi0, 3.0, 1.2) - 0.5 * std::conj(b1) * b2) < 1e-14);
}

TEST_CASE("backends agree") {
    SystemParams p;
    const PureState psi0 = make_initial_state({Branch::AtomExcited, 0}, p);
    const FilterSpec f = FilterSpec::uniform(0.1, -8.0, 8.0, 33);
    for (auto mode : {SpectrumMode::Incoherent, SpectrumMode::CoherentAsPrinted}) {
        const auto a = ew_counts_closed(p, psi0, f, 10.0, mode);
        const auto b = ew_counts_quadrature(p, psi0, f, 10.0, mode);
        CHECK(rel_diff(a, b) < 1e-6);
    }

    SystemParams lossy;
    lossy.gamma_a = 0.4;
    lossy.gamma_m = 0.1;
    lossy.m_max = 4;
    const PureState e1 = make_initial_state({Branch::AtomExcited, 1}, lossy);
    CHECK(rel_diff(ew_counts_closed(lossy, e1, f, 6.0, SpectrumMode::Incoherent),
                   ew_counts_quadrature(lossy, e1, f, 6.0, SpectrumMode::Incoherent)) < 1e-6);
}

TEST_CASE("counts are cumulative, non-negative and bounded") {
    SystemParams p;
    const PureState psi0 = make_initial_state({Branch::AtomExcited, 0}, p);
    const FilterSpec f = FilterSpec::uniform(0.1, -8.0, 8.0, 81);
    const SpectrumResult r =
        compute_spectrum(p, psi0, f, {1, 2, 4, 7, 10, 20}, SpectrumMode::Incoherent, Backend::ClosedForm);
    CHECK(r.values.rows() == 6);
    CHECK(r.values.cols() == 81);
    CHECK(r.values.minCoeff() >= 0.0);
    CHECK(r.values.maxCoeff() <= 1.0);
    for (Eigen::Index i = 1; i < r.values.rows(); ++i)
        for (Eigen::Index j = 0; j < r.values.cols(); ++j) CHECK(r.values(i, j) >= r.values(i - 1, j));
}

TEST_CASE("modes coincide when one phonon branch is populated") {
    SystemParams p;
    p.g_m = 0.0;
    p.m_max = 3;
    const PureState psi0 = make_initial_state({Branch::AtomExcited, 0}, p);
    const FilterSpec f = FilterSpec::uniform(0.1, -6.0, 6.0, 61);
    CHECK(rel_diff(ew_counts_closed(p, psi0, f, 20.0, SpectrumMode::Incoherent),
                   ew_counts_closed(p, psi0, f, 20.0, SpectrumMode::CoherentAsPrinted)) < 1e-12);
    // resonant JC: symmetric in detuning
    const auto n = ew_counts_closed(p, psi0, f, 20.0, SpectrumMode::Incoherent);
    for (std::size_t j = 0; j < n.size(); ++j) CHECK(std::abs(n[j] - n[n.size() - 1 - j]) < 1e-9);
}

TEST_CASE("strong-coupling spectrum at t = 20 has a doublet with sidebands") {
    SystemParams p;
    const PureState psi0 = make_initial_state({Branch::AtomExcited, 0}, p);
    const FilterSpec f = FilterSpec::default_grid();
    const auto n = ew_counts_closed(p, psi0, f, 20.0, SpectrumMode::Incoherent);
    const PeakSet ps = find_peaks(f.delta_grid, n, 0.05);
    CHECK(ps.peaks.size() >= 4);
    std::vector<Peak> byheight = ps.peaks;
    std::sort(byheight.begin(), byheight.end(), [](const Peak& a, const Peak& b) { return a.height > b.height; });
    // the two tallest peaks straddle zero detuning
    CHECK(byheight[0].location * byheight[1].location < 0.0);
}

TEST_CASE("results do not depend on the thread count") {
    SystemParams p;
    p.m_max = 4;
    const PureState psi0 = make_initial_state({Branch::AtomExcited, 0}, p);
    const FilterSpec f = FilterSpec::uniform(0.1, -8.0, 8.0, 41);
    SpectrumOptions one, many;
    one.threads = 1;
    many.threads = 3;
    CHECK(ew_counts_closed(p, psi0, f, 7.0, SpectrumMode::Incoherent, one) ==
          ew_counts_closed(p, psi0, f, 7.0, SpectrumMode::Incoherent, many));
}

TEST_CASE("thermal weights") {
    const ThermalWeights cold = thermal_weights(0.0, 10);
    CHECK(cold.p[0] == 1.0);
    for (int m = 1; m <= 10; ++m) CHECK(cold.p[m] == 0.0);
    CHECK(cold.tail_mass == 0.0);

    const ThermalWeights one = thermal_weights(1.0, 10);
    for (int m = 0; m <= 10; ++m) CHECK(std::abs(one.p[m] - std::ldexp(1.0, -(m + 1))) < 1e-15);

    const ThermalWeights w = thermal_weights(0.1, 10);
    CHECK(std::abs(w.p[0] - 1.0 / 1.1) < 1e-15);
    CHECK(std::abs(w.p[1] - 0.1 / 1.21) < 1e-15);
    CHECK(std::abs(w.p[2] - 0.01 / 1.331) < 1e-15);
    double sum = 0.0;
    for (double v : w.p) sum += v;
    CHECK(sum >= 0.999);
    CHECK(std::abs(w.tail_mass - (1.0 - sum)) < 1e-15);

    CHECK_THROWS(thermal_weights(-0.1, 3));
}

TEST_CASE("thermal spectrum") {
    SystemParams p;
    p.m_max = 4;
    const FilterSpec f = FilterSpec::uniform(0.1, -8.0, 8.0, 41);
    const SpectrumResult cold = thermal_spectrum(p, f, {5.0}, SpectrumMode::Incoherent, Backend::ClosedForm);
    const SpectrumResult single = compute_spectrum(p, make_initial_state({Branch::AtomExcited, 0}, p), f, {5.0},
                                                   SpectrumMode::Incoherent, Backend::ClosedForm);
    CHECK(cold.thermal);
    CHECK((cold.values - single.values).cwiseAbs().maxCoeff() < 1e-15);

    SystemParams hot = p;
    hot.mbar = 0.5;
    const SpectrumResult r = thermal_spectrum(hot, f, {5.0}, SpectrumMode::Incoherent, Backend::ClosedForm);
    CHECK(r.thermal_weights.size() == 5);
    CHECK_FALSE(r.warnings.empty());  // the tail beyond m_max = 4 is not negligible at mbar = 0.5
}

TEST_CASE("filter validation") {
    CHECK_THROWS(validate_filter(FilterSpec::uniform(0.0, -1.0, 1.0, 5)));
    FilterSpec unsorted{0.1, {1.0, 0.0}};
    CHECK_THROWS(validate_filter(unsorted));
    FilterSpec empty{0.1, {}};
    CHECK_THROWS(validate_filter(empty));
    CHECK(FilterSpec::default_grid().delta_grid.size() == 801);
}
