// propagator.hpp - exact no-jump evolution through an eigendecomposition of the
// non-Hermitian generator, plus closed-form weighted time integrals and the
// norm/flux bookkeeping of the loss channels.

#pragma once

#include <vector>

#include "omspec/hamiltonian.hpp"

namespace omspec {

/// H = V diag(lambda) V^-1. A mode evolves as exp(-i lambda t), so decaying
/// modes have Im(lambda) < 0.
struct PropagatorCache {
    CVector eigenvalues;
    CMatrix right_vectors;
    CMatrix inverse_vectors;
    OperatorMatrix source;
    double condition_estimate{1.0};

    Eigen::Index dimension() const { return eigenvalues.size(); }
};

/// Throws NonDiagonalizable when V is numerically singular or the
/// reconstruction residual exceeds 1e-9 relative.
PropagatorCache decompose(const OperatorMatrix& h);

PureState propagate(const PropagatorCache& cache, const PureState& psi0, double t);

/// Row i holds the amplitudes at t_grid[i]; every row is evaluated exactly.
CMatrix amplitude_series(const PropagatorCache& cache, const PureState& psi0,
                         const std::vector<double>& t_grid);

/// One basis amplitude written as sum_k coeffs[k] exp(-i lambda_k t).
struct ModalExpansion {
    CVector coeffs;
    CVector eigenvalues;

    cplx operator()(double t) const;
};

ModalExpansion modal_expansion(const PropagatorCache& cache, const PureState& psi0, BasisIndex component);

/// int_0^T exp(alpha s) amps_component(s) ds in closed form.
cplx weighted_time_integral(const PropagatorCache& cache, const PureState& psi0,
                            BasisIndex component, cplx alpha, double T);

/// Where the probability that leaves the no-jump state goes.
struct FluxLedger {
    std::vector<double> times;
    std::vector<double> norm_squared;
    std::vector<double> detected_photon;   // int kappa sum |b_m|^2
    std::vector<double> spontaneous;       // int gamma_a sum |a_m|^2
    std::vector<double> phonon_loss;       // int gamma_m sum m (|a_m|^2 + |b_m|^2), bath-enhanced when mbar terms are on
    std::vector<double> thermal_feed;      // int gamma_m mbar sum (m+1)(...), zero unless mbar terms are on
    double truncation_leak{0.0};           // g_m sqrt(m_max+1) int |b_{m_max}|^2
    double balance_residual{0.0};          // norm^2(T) + channels(T) - norm^2(0)
};

FluxLedger flux_ledger(const PropagatorCache& cache, const PureState& psi0, const SystemParams& params,
                       double T, int n_steps = 4000);

}  // namespace omspec
