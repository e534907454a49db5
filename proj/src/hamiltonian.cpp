// hamiltonian.cpp

#include "omspec/hamiltonian.hpp"

#include <cmath>

namespace omspec {

namespace {

Eigen::Index idx(Branch b, int m, int m_max) {
    return static_cast<Eigen::Index>(flat_index({b, m}, m_max));
}

// Diagonal of the anti-Hermitian part, as the positive decay rates Gamma_i with
// H = H_sys - (i/2) diag(Gamma).
Eigen::VectorXd loss_diagonal(const SystemParams& p, bool thermal) {
    const int mm = p.m_max;
    Eigen::VectorXd rates = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p.dimension()));
    const bool with_mbar = thermal && p.include_mbar_terms;
    for (int m = 0; m <= mm; ++m) {
        double mech = p.gamma_m * m;
        if (with_mbar) mech = (p.mbar + 1.0) * p.gamma_m * m + p.mbar * p.gamma_m * (m + 1);
        rates(idx(Branch::AtomExcited, m, mm)) = p.gamma_a + mech;
        rates(idx(Branch::PhotonInCavity, m, mm)) = p.kappa + mech;
    }
    return rates;
}

OperatorMatrix with_losses(const SystemParams& p, bool thermal) {
    OperatorMatrix h = build_h_sys(p);
    const Eigen::VectorXd rates = loss_diagonal(p, thermal);
    for (Eigen::Index i = 0; i < rates.size(); ++i) h.entries(i, i) -= cplx(0.0, 0.5 * rates(i));
    h.kind = OperatorKind::NonHermitian;
    return h;
}

}  // namespace

OperatorMatrix build_h_sys(const SystemParams& p) {
    require_valid(p);
    const int mm = p.m_max;
    const auto n = static_cast<Eigen::Index>(p.dimension());
    CMatrix h = CMatrix::Zero(n, n);
    for (int m = 0; m <= mm; ++m) {
        const auto e = idx(Branch::AtomExcited, m, mm);
        const auto g = idx(Branch::PhotonInCavity, m, mm);
        h(e, e) = p.delta_a + m;
        h(g, g) = static_cast<double>(m);
        h(e, g) = p.g_a;
        h(g, e) = p.g_a;
        if (m < mm) {
            const auto up = idx(Branch::PhotonInCavity, m + 1, mm);
            const double c = -p.g_m * std::sqrt(static_cast<double>(m + 1));
            h(g, up) = c;
            h(up, g) = c;
        }
    }
    return {std::move(h), OperatorKind::Hermitian, Sector::SingleExcitation};
}

OperatorMatrix jump_operator(JumpChannel which, const SystemParams& p) {
    require_valid(p);
    const int mm = p.m_max;
    const auto n = static_cast<Eigen::Index>(p.dimension());
    const auto block = static_cast<Eigen::Index>(mm + 1);
    OperatorMatrix j;
    j.kind = OperatorKind::Jump;
    switch (which) {
    case JumpChannel::Optical:
        j.codomain = Sector::ZeroExcitation;
        j.entries = CMatrix::Zero(block, n);
        for (int m = 0; m <= mm; ++m) j.entries(m, idx(Branch::PhotonInCavity, m, mm)) = std::sqrt(p.kappa);
        break;
    case JumpChannel::Atomic:
        j.codomain = Sector::ZeroExcitation;
        j.entries = CMatrix::Zero(block, n);
        for (int m = 0; m <= mm; ++m) j.entries(m, idx(Branch::AtomExcited, m, mm)) = std::sqrt(p.gamma_a);
        break;
    case JumpChannel::Mechanical:
        j.codomain = Sector::SingleExcitation;
        j.entries = CMatrix::Zero(n, n);
        for (int m = 1; m <= mm; ++m) {
            const double amp = std::sqrt(p.gamma_m * m);
            for (Branch b : {Branch::AtomExcited, Branch::PhotonInCavity}) {
                j.entries(idx(b, m - 1, mm), idx(b, m, mm)) = amp;
            }
        }
        break;
    }
    return j;
}

OperatorMatrix build_h_nh(const SystemParams& p) { return with_losses(p, false); }

OperatorMatrix build_h_dnh(const SystemParams& p) { return with_losses(p, true); }

}  // namespace omspec
