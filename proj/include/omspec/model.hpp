// model.hpp - physical parameters, single-excitation basis and no-jump state
//
// Frequencies are in units of the mechanical frequency and times in units of
// its inverse, so the mechanical frequency itself is never stored.

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace omspec {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Couplings and rates of the atom + optomechanical cavity system.
/// Defaults reproduce the lossless strong-strong coupling parameter set.
struct SystemParams {
    double delta_a{0.0};   // atom-cavity detuning (may be negative)
    double g_a{4.0};       // atom-cavity coupling
    double g_m{1.2};       // single-photon optomechanical coupling
    double kappa{0.5};     // cavity leak rate
    double gamma_a{0.0};   // spontaneous emission rate
    double gamma_m{0.0};   // mechanical damping rate
    double mbar{0.0};      // mean bath phonon number
    int m_max{10};         // phonon truncation
    bool include_mbar_terms{false};

    /// Number of amplitudes in the single-excitation sector, 2 (m_max + 1).
    std::size_t dimension() const { return 2 * static_cast<std::size_t>(m_max + 1); }

    bool operator==(const SystemParams&) const = default;
};

enum class Branch { AtomExcited, PhotonInCavity };

/// Label of a single-excitation basis ket: |e,0,m> or |g,1,m>.
struct BasisIndex {
    Branch branch{Branch::AtomExcited};
    int phonons{0};

    bool operator==(const BasisIndex&) const = default;
};

/// |e,0,m> -> m, |g,1,m> -> (m_max + 1) + m.
std::size_t flat_index(BasisIndex b, int m_max);
BasisIndex basis_index(std::size_t flat, int m_max);

std::string to_string(Branch b);
std::string to_string(BasisIndex b);

/// Conditional (unnormalized) no-jump state.
struct PureState {
    CVector amps;
    double time{0.0};

    double norm_squared() const { return amps.squaredNorm(); }
    cplx amplitude(BasisIndex b, int m_max) const { return amps(static_cast<Eigen::Index>(flat_index(b, m_max))); }
};

PureState make_initial_state(BasisIndex kind, const SystemParams& params);

enum class Severity { Warning, Error };

struct Diagnostic {
    Severity severity;
    std::string code;
    std::string message;
};

/// Checks a parameter set. Never throws; hard violations come back with
/// Severity::Error, regime assumptions that are merely stretched as warnings.
std::vector<Diagnostic> validate(const SystemParams& params);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// Throws InvalidParams listing every error-level diagnostic.
void require_valid(const SystemParams& params);

}  // namespace omspec
