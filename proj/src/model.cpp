// model.cpp - basis indexing, initial states and parameter validation

#include "omspec/model.hpp"

#include <cmath>
#include <sstream>

#include "omspec/errors.hpp"

namespace omspec {

std::size_t flat_index(BasisIndex b, int m_max) {
    if (m_max < 0 || b.phonons < 0 || b.phonons > m_max) {
        std::ostringstream os;
        os << "phonon number " << b.phonons << " outside [0, " << m_max << "]";
        throw IndexError(os.str());
    }
    const auto m = static_cast<std::size_t>(b.phonons);
    return b.branch == Branch::AtomExcited ? m : static_cast<std::size_t>(m_max + 1) + m;
}

BasisIndex basis_index(std::size_t flat, int m_max) {
    const auto block = static_cast<std::size_t>(m_max + 1);
    if (m_max < 0 || flat >= 2 * block) {
        std::ostringstream os;
        os << "flat index " << flat << " outside a basis of size " << 2 * (m_max + 1);
        throw IndexError(os.str());
    }
    if (flat < block) return {Branch::AtomExcited, static_cast<int>(flat)};
    return {Branch::PhotonInCavity, static_cast<int>(flat - block)};
}

std::string to_string(Branch b) {
    return b == Branch::AtomExcited ? "atom_excited" : "photon_in_cavity";
}

std::string to_string(BasisIndex b) {
    std::ostringstream os;
    os << (b.branch == Branch::AtomExcited ? "|e,0," : "|g,1,") << b.phonons << ">";
    return os.str();
}

PureState make_initial_state(BasisIndex kind, const SystemParams& params) {
    PureState psi;
    psi.amps = CVector::Zero(static_cast<Eigen::Index>(params.dimension()));
    psi.amps(static_cast<Eigen::Index>(flat_index(kind, params.m_max))) = 1.0;
    psi.time = 0.0;
    return psi;
}

std::vector<Diagnostic> validate(const SystemParams& p) {
    std::vector<Diagnostic> out;
    auto error = [&](std::string code, std::string msg) {
        out.push_back({Severity::Error, std::move(code), std::move(msg)});
    };
    auto warning = [&](std::string code, std::string msg) {
        out.push_back({Severity::Warning, std::move(code), std::move(msg)});
    };

    if (!std::isfinite(p.delta_a)) error("non_finite", "delta_a must be finite");
    const struct {
        const char* name;
        double value;
    } rates[] = {{"g_a", p.g_a},         {"g_m", p.g_m},         {"kappa", p.kappa},
                 {"gamma_a", p.gamma_a}, {"gamma_m", p.gamma_m}, {"mbar", p.mbar}};
    for (const auto& r : rates) {
        if (!std::isfinite(r.value)) {
            error("non_finite", std::string(r.name) + " must be finite");
        } else if (r.value < 0.0) {
            error("negative_rate", std::string(r.name) + " must be non-negative");
        }
    }
    if (p.m_max < 0) error("negative_cutoff", "m_max must be non-negative");
    if (p.g_m > 0.0 && p.m_max == 0) {
        error("inert_cutoff", "m_max must be at least 1 when g_m > 0");
    }

    if (p.kappa >= 1.0) {
        warning("good_cavity_violated",
                "kappa >= mechanical frequency; sidebands will not be resolved");
    }
    const double thermal_rate = p.gamma_m * p.mbar;
    if (thermal_rate > 0.0 && thermal_rate >= p.kappa) {
        warning("weak_damping_violated",
                "gamma_m * mbar >= kappa; thermal phonon feeding is not negligible");
    }
    return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    for (const auto& d : diagnostics) {
        if (d.severity == Severity::Error) return true;
    }
    return false;
}

void require_valid(const SystemParams& params) {
    const auto diags = validate(params);
    if (!has_errors(diags)) return;
    std::string msg;
    for (const auto& d : diags) {
        if (d.severity != Severity::Error) continue;
        if (!msg.empty()) msg += "; ";
        msg += d.message;
    }
    throw InvalidParams(msg);
}

}  // namespace omspec
