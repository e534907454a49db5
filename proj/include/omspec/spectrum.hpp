// spectrum.hpp - time-dependent filtered single-photon spectrum
//
// N(t; Delta) counts photons that pass a Lorentzian filter of bandwidth Gamma
// tuned to Delta = omega - omega_c before time t:
//
//   N = kappa Gamma^2 int_0^t dt' exp(-Gamma t') F(t')
//   A_m(t') = int_0^t' exp[(i Delta + Gamma/2 + i m + m gamma_m/2) s] b_m(s) ds
//
// F sums the phonon branches either in probability (Incoherent) or inside the
// modulus (CoherentAsPrinted). Each branch carries the post-emission mechanical
// no-jump factor exp(-m gamma_m t'/2) on its amplitude, which is 1 at gamma_m = 0.

#pragma once

#include <string>
#include <vector>

#include "omspec/propagator.hpp"

namespace omspec {

struct FilterSpec {
    double gamma{0.1};
    std::vector<double> delta_grid;

    /// `points` evenly spaced detunings on [lo, hi].
    static FilterSpec uniform(double gamma, double lo, double hi, int points);
    /// 801 points on [-8, 8].
    static FilterSpec default_grid(double gamma = 0.1);
};

void validate_filter(const FilterSpec& filter);

enum class SpectrumMode { Incoherent, CoherentAsPrinted };
enum class Backend { ClosedForm, Quadrature };

std::string to_string(SpectrumMode m);
std::string to_string(Backend b);

struct SpectrumOptions {
    int outer_steps{4000};          // Simpson intervals for the outer time integral (rounded up to even)
    double quadrature_step{0.005};  // largest inner step of the quadrature backend
    unsigned threads{0};            // 0 picks the hardware concurrency
};

struct SpectrumResult {
    std::vector<double> times;
    std::vector<double> delta_grid;
    Eigen::MatrixXd values;  // values(i, j) = N(times[i]; delta_grid[j])
    SpectrumMode mode{SpectrumMode::Incoherent};
    Backend backend{Backend::ClosedForm};
    SystemParams params;
    double filter_gamma{0.1};
    bool thermal{false};
    std::vector<double> thermal_weights;  // weights per initial phonon number when thermal
    std::vector<std::string> warnings;

    std::vector<double> row(std::size_t time_index) const;
};

/// <a^dagger(t1) a(t2)> restricted to the single-excitation no-jump sector,
/// scaled by kappa. Conjugate-symmetric in (t1, t2).
cplx correlation_kernel(const SystemParams& params, const PropagatorCache& cache, const PureState& psi0,
                        double t1, double t2);

/// Closed-form backend: inner integrals from the eigen-expansion.
/// Throws NonDiagonalizable when the generator cannot be decomposed.
std::vector<double> ew_counts_closed(const SystemParams& params, const PureState& psi0, const FilterSpec& filter,
                                     double t, SpectrumMode mode, const SpectrumOptions& options = {});
std::vector<double> ew_counts_closed(const SystemParams& params, const PropagatorCache& cache,
                                     const PureState& psi0, const FilterSpec& filter, double t, SpectrumMode mode,
                                     const SpectrumOptions& options = {});

/// Quadrature backend: amplitudes stepped with the exact short-time
/// propagator exp(-i H h), inner integrals by cumulative Simpson.
std::vector<double> ew_counts_quadrature(const SystemParams& params, const PureState& psi0,
                                         const FilterSpec& filter, double t, SpectrumMode mode,
                                         const SpectrumOptions& options = {});

/// One initial state, several observation times.
SpectrumResult compute_spectrum(const SystemParams& params, const PureState& psi0, const FilterSpec& filter,
                                const std::vector<double>& times, SpectrumMode mode, Backend backend,
                                const SpectrumOptions& options = {});

struct ThermalWeights {
    std::vector<double> p;  // p_m = mbar^m / (1 + mbar)^(m+1), m = 0..m_max
    double tail_mass{0.0};  // 1 - sum p_m
};

ThermalWeights thermal_weights(double mbar, int m_max);

/// Boltzmann-weighted average of spectra started from |e,0,m0>.
SpectrumResult thermal_spectrum(const SystemParams& params, const FilterSpec& filter,
                                const std::vector<double>& times, SpectrumMode mode, Backend backend,
                                const SpectrumOptions& options = {});

}  // namespace omspec
