// propagator.cpp

#include "omspec/propagator.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "omspec/errors.hpp"
#include "omspec/quadrature.hpp"

namespace omspec {

namespace {

void check_dims(const PropagatorCache& cache, const PureState& psi0) {
    if (psi0.amps.size() != cache.dimension()) {
        throw InvalidArgument("state dimension does not match the generator");
    }
}

CVector phase_factors(const CVector& eigenvalues, double t) {
    CVector f(eigenvalues.size());
    for (Eigen::Index k = 0; k < f.size(); ++k) f(k) = std::exp(cplx(0.0, -1.0) * eigenvalues(k) * t);
    return f;
}

}  // namespace

PropagatorCache decompose(const OperatorMatrix& h) {
    if (h.kind == OperatorKind::Jump) throw InvalidArgument("cannot propagate with a jump operator");
    if (h.entries.rows() != h.entries.cols() || h.entries.rows() == 0) {
        throw InvalidArgument("generator must be a non-empty square matrix");
    }

    Eigen::ComplexEigenSolver<CMatrix> solver(h.entries, true);
    if (solver.info() != Eigen::Success) throw NonDiagonalizable("eigensolver did not converge; use the quadrature backend");

    PropagatorCache cache;
    cache.eigenvalues = solver.eigenvalues();
    cache.right_vectors = solver.eigenvectors();
    cache.source = h;

    Eigen::PartialPivLU<CMatrix> lu(cache.right_vectors);
    const double rcond = lu.rcond();
    if (!(rcond > 1e3 * std::numeric_limits<double>::epsilon())) {
        std::ostringstream os;
        os << "eigenvector matrix is numerically singular (rcond " << rcond << "); use the quadrature backend";
        throw NonDiagonalizable(os.str());
    }
    cache.inverse_vectors = lu.inverse();
    cache.condition_estimate = 1.0 / rcond;

    const CMatrix rebuilt = cache.right_vectors * cache.eigenvalues.asDiagonal() * cache.inverse_vectors;
    const double scale = std::max(1.0, h.entries.norm());
    const double residual = (rebuilt - h.entries).norm() / scale;
    if (residual > 1e-9) {
        std::ostringstream os;
        os << "eigendecomposition residual " << residual << " exceeds 1e-9; use the quadrature backend";
        throw NonDiagonalizable(os.str());
    }
    return cache;
}

PureState propagate(const PropagatorCache& cache, const PureState& psi0, double t) {
    if (!(t >= 0.0)) throw InvalidArgument("propagation time must be non-negative");
    check_dims(cache, psi0);
    PureState out;
    if (t == 0.0) {
        out.amps = psi0.amps;  // exact, no round trip through V and V^-1
        return out;
    }
    out.amps = cache.right_vectors * (phase_factors(cache.eigenvalues, t).asDiagonal() * (cache.inverse_vectors * psi0.amps));
    out.time = t;
    return out;
}

CMatrix amplitude_series(const PropagatorCache& cache, const PureState& psi0, const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw InvalidArgument("time grid is empty");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] >= 0.0)) throw InvalidArgument("time grid must be non-negative");
        if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw InvalidArgument("time grid must be strictly increasing");
    }
    check_dims(cache, psi0);
    const CVector modal = cache.inverse_vectors * psi0.amps;
    CMatrix rows(static_cast<Eigen::Index>(t_grid.size()), cache.dimension());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (t_grid[i] == 0.0) {
            rows.row(static_cast<Eigen::Index>(i)) = psi0.amps.transpose();
            continue;
        }
        const CVector phases = phase_factors(cache.eigenvalues, t_grid[i]);
        rows.row(static_cast<Eigen::Index>(i)) = (cache.right_vectors * phases.cwiseProduct(modal)).transpose();
    }
    return rows;
}

cplx ModalExpansion::operator()(double t) const {
    cplx sum = 0.0;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) sum += coeffs(k) * std::exp(cplx(0.0, -1.0) * eigenvalues(k) * t);
    return sum;
}

ModalExpansion modal_expansion(const PropagatorCache& cache, const PureState& psi0, BasisIndex component) {
    check_dims(cache, psi0);
    const int m_max = static_cast<int>(cache.dimension() / 2) - 1;
    const auto row = static_cast<Eigen::Index>(flat_index(component, m_max));
    const CVector modal = cache.inverse_vectors * psi0.amps;
    ModalExpansion e;
    e.coeffs = cache.right_vectors.row(row).transpose().cwiseProduct(modal);
    e.eigenvalues = cache.eigenvalues;
    return e;
}

cplx weighted_time_integral(const PropagatorCache& cache, const PureState& psi0, BasisIndex component,
                            cplx alpha, double T) {
    if (!(T >= 0.0)) throw InvalidArgument("integration limit must be non-negative");
    const ModalExpansion e = modal_expansion(cache, psi0, component);
    cplx sum = 0.0;
    for (Eigen::Index k = 0; k < e.coeffs.size(); ++k) {
        sum += e.coeffs(k) * integrate_exponential(alpha - cplx(0.0, 1.0) * e.eigenvalues(k), T);
    }
    return sum;
}

FluxLedger flux_ledger(const PropagatorCache& cache, const PureState& psi0, const SystemParams& p, double T,
                       int n_steps) {
    if (n_steps < 2) throw InvalidArgument("ledger needs at least two steps");
    if (!(T > 0.0)) throw InvalidArgument("ledger horizon must be positive");
    check_dims(cache, psi0);
    if (cache.dimension() != static_cast<Eigen::Index>(p.dimension())) {
        throw InvalidArgument("parameter cutoff does not match the generator");
    }

    const double h = T / n_steps;
    std::vector<double> grid(static_cast<std::size_t>(n_steps) + 1);
    for (int i = 0; i <= n_steps; ++i) grid[static_cast<std::size_t>(i)] = h * i;
    const CMatrix amps = amplitude_series(cache, psi0, grid);

    const int mm = p.m_max;
    const bool with_mbar = p.include_mbar_terms;
    const std::size_t npts = grid.size();
    std::vector<double> norm(npts), photon(npts), atom(npts), phonon(npts), thermal(npts), top(npts);
    for (std::size_t i = 0; i < npts; ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        double pa = 0.0, pb = 0.0, nm = 0.0, nm1 = 0.0;
        for (int m = 0; m <= mm; ++m) {
            const double a2 = std::norm(amps(r, static_cast<Eigen::Index>(flat_index({Branch::AtomExcited, m}, mm))));
            const double b2 = std::norm(amps(r, static_cast<Eigen::Index>(flat_index({Branch::PhotonInCavity, m}, mm))));
            pa += a2;
            pb += b2;
            nm += m * (a2 + b2);
            nm1 += (m + 1) * (a2 + b2);
        }
        norm[i] = pa + pb;
        photon[i] = p.kappa * pb;
        atom[i] = p.gamma_a * pa;
        phonon[i] = (with_mbar ? (p.mbar + 1.0) : 1.0) * p.gamma_m * nm;
        thermal[i] = with_mbar ? p.mbar * p.gamma_m * nm1 : 0.0;
        top[i] = std::norm(amps(r, static_cast<Eigen::Index>(flat_index({Branch::PhotonInCavity, mm}, mm))));
    }

    FluxLedger led;
    led.times = grid;
    led.norm_squared = norm;
    led.detected_photon = cumulative_simpson(photon, h);
    led.spontaneous = cumulative_simpson(atom, h);
    led.phonon_loss = cumulative_simpson(phonon, h);
    led.thermal_feed = cumulative_simpson(thermal, h);
    led.truncation_leak = p.g_m * std::sqrt(static_cast<double>(mm + 1)) * simpson(top, h);
    const std::size_t last = npts - 1;
    led.balance_residual = norm[last] + led.detected_photon[last] + led.spontaneous[last] + led.phonon_loss[last] +
                           led.thermal_feed[last] - norm[0];
    return led;
}

}  // namespace omspec
