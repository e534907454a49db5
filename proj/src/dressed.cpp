// dressed.cpp

#include "omspec/dressed.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "omspec/errors.hpp"
#include "omspec/hamiltonian.hpp"

namespace omspec {

namespace {

struct Roots {
    double inner;  // sqrt(4 g_a^2 g_m^2 + g_m^4 + 4 g_a^2 w^2)
    double outer_plus;
    double outer_minus;

    double outer(int inner_sign) const { return inner_sign > 0 ? outer_plus : outer_minus; }
};

Roots roots(double ga, double gm) {
    constexpr double w = 1.0;
    Roots r{};
    r.inner = std::sqrt(4.0 * ga * ga * gm * gm + gm * gm * gm * gm + 4.0 * ga * ga * w * w);
    const double base = 4.0 * ga * ga + 2.0 * gm * gm + w * w;
    r.outer_plus = std::sqrt(base + 2.0 * r.inner);
    r.outer_minus = std::sqrt(std::max(0.0, base - 2.0 * r.inner));
    return r;
}

std::string sign_char(int s) { return s > 0 ? "+" : "-"; }

}  // namespace

DressedSystem diagonalize_truncated(const SystemParams& params, int m_max) {
    if (m_max < 0) throw InvalidArgument("m_max must be non-negative");
    SystemParams p = params;
    p.m_max = m_max;
    p.kappa = p.gamma_a = p.gamma_m = p.mbar = 0.0;
    if (m_max == 0) p.g_m = 0.0;  // no |g,1,1> to couple to
    const Eigen::MatrixXd h = build_h_sys(p).entries.real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);

    DressedSystem d;
    d.m_max = m_max;
    d.levels.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    d.vectors = solver.eigenvectors();
    for (int m = 0; m <= m_max; ++m) d.ground_levels.push_back(d.omega_g + m);
    return d;
}

ClosedFormLevels closed_form_levels(const SystemParams& p) {
    if (p.delta_a != 0.0) throw UnsupportedRegime("closed-form dressed levels require delta_a = 0");
    if (!(p.g_a >= 0.0) || !(p.g_m >= 0.0)) throw InvalidParams("couplings must be non-negative");
    const Roots r = roots(p.g_a, p.g_m);
    ClosedFormLevels out;
    // bottom to top: E_{-+} = E1, E_{--} = E2, E_{+-} = E3, E_{++} = E4
    const int order[4][2] = {{-1, +1}, {-1, -1}, {+1, -1}, {+1, +1}};
    for (int i = 0; i < 4; ++i) {
        LabeledLevel& l = out.excited[static_cast<std::size_t>(i)];
        l.outer_sign = order[i][0];
        l.inner_sign = order[i][1];
        l.energy = 0.5 * (1.0 + l.outer_sign * r.outer(l.inner_sign));
        l.label = "E_{" + sign_char(l.outer_sign) + sign_char(l.inner_sign) + "}";
        l.name = "E" + std::to_string(i + 1);
    }
    std::sort(out.excited.begin(), out.excited.end(),
              [](const LabeledLevel& a, const LabeledLevel& b) { return a.energy < b.energy; });
    return out;
}

ClosedFormVectors closed_form_vectors(const SystemParams& p) {
    const ClosedFormLevels levels = closed_form_levels(p);
    const double ga = p.g_a;
    const double gm = p.g_m;
    constexpr double w = 1.0;
    const Roots r = roots(ga, gm);

    ClosedFormVectors out;
    if (ga * gm == 0.0) {
        out.numerical_fallback = true;
        out.diagnostics.push_back("g_a * g_m = 0: printed coefficients are singular, using numerical eigenvectors");
        const DressedSystem d = diagonalize_truncated(p, 1);
        for (std::size_t i = 0; i < 4; ++i) {
            ClosedFormVector& v = out.states[i];
            v.level = levels.excited[i];
            // pick the numerical level closest to the closed-form one
            std::size_t best = 0;
            for (std::size_t k = 1; k < d.levels.size(); ++k) {
                if (std::abs(d.levels[k] - v.level.energy) < std::abs(d.levels[best] - v.level.energy)) best = k;
            }
            v.normalized = d.vectors.col(static_cast<Eigen::Index>(best));
            v.a_printed = v.a = v.b = v.c_printed = std::numeric_limits<double>::quiet_NaN();
        }
        return out;
    }

    for (std::size_t i = 0; i < 4; ++i) {
        ClosedFormVector& v = out.states[i];
        v.level = levels.excited[i];
        const int s1 = v.level.outer_sign;
        const int s2 = v.level.inner_sign;
        const double S = r.outer(s2);
        const double E = v.level.energy;

        // Printed a_{t1 t2 t3} = (-g_m^2 + w^2 + t1 R + t2 w S_{t3}) / (2 g_a g_m). The
        // eigenvector ratio x(g,1,0)/x(e,0,1) has the same shape with -w^2 and the
        // pairing t1 = -s2, t2 = s1, t3 = s2 (checked against numerical vectors).
        v.a_printed = (-gm * gm + w * w - s2 * r.inner + s1 * w * S) / (2.0 * ga * gm);
        v.a = (-gm * gm - w * w - s2 * r.inner + s1 * w * S) / (2.0 * ga * gm);

        // b_{s1 s2} = (-w + s1 S_{s2}) / (2 g_a) = x(g,1,1)/x(e,0,1) as printed.
        v.b = (-w + s1 * S) / (2.0 * ga);

        // c_{(s1 s2)(s1 s2)} as printed; its second factor reduces to E_{s1 s2}.
        const double num = -2.0 * (ga * ga * ga - (0.5 * ga * w + s1 * 0.5 * ga * S));
        const double den = -0.5 * ga * gm * w + s1 * ga * gm * S;
        v.c_printed = num / den * (w + 0.5 * (-w + s1 * S));

        // |e,0,0> row of H: E x(e,0,0) = g_a x(g,1,0)
        const double x_e1 = 1.0;
        const double x_g10 = v.a;
        const double x_g11 = v.b;
        const double x_e0 = ga * x_g10 / E;
        v.normalized = Eigen::Vector4d(x_e0, x_e1, x_g10, x_g11).normalized();
    }
    return out;
}

TransitionTable transition_table(const DressedSystem& d, const PureState& psi0) {
    const auto dim = static_cast<Eigen::Index>(2 * (d.m_max + 1));
    if (psi0.amps.size() != dim || d.vectors.rows() != dim) {
        throw InvalidArgument("initial state and dressed basis differ in dimension");
    }
    TransitionTable t;
    double wmax = 0.0;
    for (std::size_t k = 0; k < d.levels.size(); ++k) {
        const auto col = d.vectors.col(static_cast<Eigen::Index>(k));
        const double overlap = std::norm(col.cast<cplx>().dot(psi0.amps));
        for (int m = 0; m <= d.m_max; ++m) {
            const auto row = static_cast<Eigen::Index>(flat_index({Branch::PhotonInCavity, m}, d.m_max));
            Transition tr;
            tr.upper = k;
            tr.lower = m;
            tr.frequency = d.levels[k] - (d.omega_g + m);
            tr.weight = overlap * col(row) * col(row);
            wmax = std::max(wmax, tr.weight);
            t.rows.push_back(tr);
        }
    }
    if (wmax > 0.0) {
        for (auto& tr : t.rows) tr.weight /= wmax;
    }
    return t;
}

std::vector<ConvergenceRow> level_convergence(const SystemParams& params, const std::vector<int>& cutoffs) {
    std::vector<ConvergenceRow> out;
    for (int m : cutoffs) out.push_back({m, diagonalize_truncated(params, m).levels});
    return out;
}

}  // namespace omspec
