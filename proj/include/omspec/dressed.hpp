// dressed.hpp - dressed states of the lossless system and the transition
// table that predicts where spectral peaks sit and how tall they are

#pragma once

#include <array>
#include <string>
#include <vector>

#include "omspec/model.hpp"

namespace omspec {

/// Eigenstates of the lossless Hamiltonian in the single-excitation sector,
/// plus the zero-excitation ground ladder |g,0,m> with energies omega_g + m.
struct DressedSystem {
    std::vector<double> levels;      // ascending, rotating frame
    Eigen::MatrixXd vectors;         // column k is the eigenvector of levels[k]
    std::vector<double> ground_levels;
    double omega_g{0.0};
    int m_max{0};
};

DressedSystem diagonalize_truncated(const SystemParams& params, int m_max);

/// One of the four single-phonon excited levels E_{s1 s2}, where s1 is the sign
/// in front of the outer square root and s2 the sign inside it.
struct LabeledLevel {
    int outer_sign{1};
    int inner_sign{1};
    double energy{0.0};
    std::string label;  // "E_{-+}" etc.
    std::string name;   // E1..E4, numbered from the bottom
};

struct ClosedFormLevels {
    std::array<LabeledLevel, 4> excited;  // ascending in energy
    std::array<double, 2> ground{0.0, 1.0};
};

/// Resonant single-phonon levels in closed form. Throws UnsupportedRegime off resonance.
ClosedFormLevels closed_form_levels(const SystemParams& params);

struct ClosedFormVector {
    LabeledLevel level;
    double a_printed{0.0};  // a_{+-+}-type coefficient evaluated as printed
    double a{0.0};          // x(g,1,0) / x(e,0,1)
    double b{0.0};          // x(g,1,1) / x(e,0,1)
    double c_printed{0.0};  // c_{(s1 s2)(s1 s2)} evaluated as printed
    Eigen::Vector4d normalized;  // basis order |e,0,0>, |e,0,1>, |g,1,0>, |g,1,1>
};

struct ClosedFormVectors {
    std::array<ClosedFormVector, 4> states;
    bool numerical_fallback{false};
    std::vector<std::string> diagnostics;
};

ClosedFormVectors closed_form_vectors(const SystemParams& params);

struct Transition {
    std::size_t upper{0};  // index into DressedSystem::levels
    int lower{0};          // phonon number of the ground state |g,0,m>
    double frequency{0.0}; // E_upper - (omega_g + m), i.e. a detuning from the cavity
    double weight{0.0};    // |<k|psi0>|^2 |<g,0,m| a |k>|^2, max-normalized
};

struct TransitionTable {
    std::vector<Transition> rows;
};

TransitionTable transition_table(const DressedSystem& dressed, const PureState& psi0);

struct ConvergenceRow {
    int m_max{0};
    std::vector<double> levels;
};

/// Excited levels for each cutoff in `cutoffs`, to watch them settle as phonons are added.
std::vector<ConvergenceRow> level_convergence(const SystemParams& params, const std::vector<int>& cutoffs);

}  // namespace omspec
