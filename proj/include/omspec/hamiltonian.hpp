// hamiltonian.hpp - system Hamiltonian, jump operators and no-jump generators
//
// All operators are dense matrices over the single-excitation basis of
// model.hpp, with hbar = 1 and the mechanical frequency as the unit.

#pragma once

#include "omspec/model.hpp"

namespace omspec {

enum class OperatorKind { Hermitian, NonHermitian, Jump };

/// Sector an operator maps into. Optical and atomic jumps remove the single
/// excitation, so their rows are labelled by the phonon number m of |g,0,m>.
enum class Sector { SingleExcitation, ZeroExcitation };

struct OperatorMatrix {
    CMatrix entries;
    OperatorKind kind{OperatorKind::Hermitian};
    Sector codomain{Sector::SingleExcitation};
};

enum class JumpChannel { Optical, Atomic, Mechanical };

/// Rotating-frame Hamiltonian. The atomic detuning sits on the |e,0,m> branch;
/// the photon-number-conditioned mirror displacement couples |g,1,m> and
/// |g,1,m+1> with -g_m sqrt(m+1).
OperatorMatrix build_h_sys(const SystemParams& params);

/// sqrt(kappa) a, sqrt(gamma_a) sigma_-, sqrt(gamma_m) b.
OperatorMatrix jump_operator(JumpChannel which, const SystemParams& params);

/// H_sys - (i/2) sum_j J_j^dagger J_j with the mechanical bath at zero temperature.
OperatorMatrix build_h_nh(const SystemParams& params);

/// Finite-temperature generator. With include_mbar_terms the mechanical part is
/// -(i/2) gamma_m [(mbar + 1) b^dagger b + mbar b b^dagger]; without it the mbar
/// terms are dropped (weak damping) and the result equals build_h_nh.
OperatorMatrix build_h_dnh(const SystemParams& params);

}  // namespace omspec
