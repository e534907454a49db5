// spectrum.cpp

#include "omspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include <unsupported/Eigen/MatrixFunctions>

#include "omspec/errors.hpp"
#include "omspec/quadrature.hpp"

namespace omspec {

namespace {

constexpr cplx I{0.0, 1.0};

int even_steps(int n) {
    if (n < 2) throw InvalidArgument("outer_steps must be at least 2");
    return n % 2 == 0 ? n : n + 1;
}

// Splits [0, n) into contiguous chunks, one per worker. Each index is written
// by exactly one worker, so the result does not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
    if (workers <= 1) {
        fn(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

struct BranchFactors {
    // beta_m = Gamma/2 + i m + m gamma_m / 2, the Delta-independent part of alpha_m
    std::vector<cplx> beta;
    // exp(-m gamma_m t / 2): post-emission damping of branch m's filter amplitude
    std::vector<double> damping_rate;
};

BranchFactors branch_factors(const SystemParams& p, double gamma) {
    BranchFactors f;
    for (int m = 0; m <= p.m_max; ++m) {
        f.beta.push_back(cplx(0.5 * gamma + 0.5 * m * p.gamma_m, static_cast<double>(m)));
        f.damping_rate.push_back(0.5 * m * p.gamma_m);
    }
    return f;
}

// Outer integrand F(t_j) from the branch amplitudes A(j, m).
double branch_sum(const CMatrix& A, Eigen::Index j, const std::vector<double>& damping, double t,
                  SpectrumMode mode) {
    if (mode == SpectrumMode::Incoherent) {
        double s = 0.0;
        for (Eigen::Index m = 0; m < A.cols(); ++m) {
            s += std::norm(A(j, m)) * std::exp(-2.0 * damping[static_cast<std::size_t>(m)] * t);
        }
        return s;
    }
    cplx s = 0.0;
    for (Eigen::Index m = 0; m < A.cols(); ++m) s += A(j, m) * std::exp(-damping[static_cast<std::size_t>(m)] * t);
    return std::norm(s);
}

double outer_integral(const CMatrix& A, const std::vector<double>& grid, const std::vector<double>& weights,
                      const BranchFactors& bf, double gamma, double kappa, SpectrumMode mode) {
    double sum = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double t = grid[j];
        sum += weights[j] * std::exp(-gamma * t) * branch_sum(A, static_cast<Eigen::Index>(j), bf.damping_rate, t, mode);
    }
    return kappa * gamma * gamma * sum;
}

std::vector<double> uniform_grid(double t, int n) {
    std::vector<double> g(static_cast<std::size_t>(n) + 1);
    const double h = t / n;
    for (int i = 0; i <= n; ++i) g[static_cast<std::size_t>(i)] = h * i;
    g.back() = t;
    return g;
}

void check_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("observation time must be finite and non-negative");
}

}  // namespace

FilterSpec FilterSpec::uniform(double gamma, double lo, double hi, int points) {
    if (points < 1) throw InvalidArgument("filter grid needs at least one point");
    if (points > 1 && !(hi > lo)) throw InvalidArgument("filter grid needs hi > lo");
    FilterSpec f;
    f.gamma = gamma;
    f.delta_grid.resize(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        f.delta_grid[static_cast<std::size_t>(i)] =
            points == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return f;
}

FilterSpec FilterSpec::default_grid(double gamma) { return uniform(gamma, -8.0, 8.0, 801); }

void validate_filter(const FilterSpec& filter) {
    if (!(filter.gamma > 0.0) || !std::isfinite(filter.gamma)) throw InvalidArgument("filter bandwidth must be positive");
    if (filter.delta_grid.empty()) throw InvalidArgument("detuning grid is empty");
    for (std::size_t i = 0; i < filter.delta_grid.size(); ++i) {
        if (!std::isfinite(filter.delta_grid[i])) throw InvalidArgument("detuning grid must be finite");
        if (i > 0 && filter.delta_grid[i] < filter.delta_grid[i - 1]) throw InvalidArgument("detuning grid must be sorted");
    }
}

std::string to_string(SpectrumMode m) { return m == SpectrumMode::Incoherent ? "incoherent" : "coherent"; }
std::string to_string(Backend b) { return b == Backend::ClosedForm ? "closed" : "quadrature"; }

std::vector<double> SpectrumResult::row(std::size_t time_index) const {
    std::vector<double> r(static_cast<std::size_t>(values.cols()));
    for (Eigen::Index j = 0; j < values.cols(); ++j) r[static_cast<std::size_t>(j)] = values(static_cast<Eigen::Index>(time_index), j);
    return r;
}

cplx correlation_kernel(const SystemParams& p, const PropagatorCache& cache, const PureState& psi0, double t1,
                        double t2) {
    if (!(t1 >= 0.0) || !(t2 >= 0.0)) throw InvalidArgument("kernel times must be non-negative");
    if (t1 < t2) return std::conj(correlation_kernel(p, cache, psi0, t2, t1));
    const PureState s1 = propagate(cache, psi0, t1);
    const PureState s2 = propagate(cache, psi0, t2);
    const double tau = t1 - t2;
    cplx sum = 0.0;
    for (int m = 0; m <= p.m_max; ++m) {
        const BasisIndex b{Branch::PhotonInCavity, m};
        const cplx free = std::exp(cplx(-0.5 * m * p.gamma_m * tau, m * tau));
        sum += std::conj(s1.amplitude(b, p.m_max)) * s2.amplitude(b, p.m_max) * free;
    }
    return p.kappa * sum;
}

std::vector<double> ew_counts_closed(const SystemParams& p, const PureState& psi0, const FilterSpec& filter, double t,
                                     SpectrumMode mode, const SpectrumOptions& options) {
    return ew_counts_closed(p, decompose(build_h_dnh(p)), psi0, filter, t, mode, options);
}

std::vector<double> ew_counts_closed(const SystemParams& p, const PropagatorCache& cache, const PureState& psi0,
                                     const FilterSpec& filter, double t, SpectrumMode mode,
                                     const SpectrumOptions& options) {
    require_valid(p);
    validate_filter(filter);
    check_time(t);
    if (cache.dimension() != static_cast<Eigen::Index>(p.dimension()) || psi0.amps.size() != cache.dimension()) {
        throw InvalidArgument("state, generator and parameters disagree on the basis size");
    }
    std::vector<double> out(filter.delta_grid.size(), 0.0);
    if (t == 0.0) return out;

    const int n = even_steps(options.outer_steps);
    const std::vector<double> grid = uniform_grid(t, n);
    const std::vector<double> weights = simpson_weights(n, t / n);
    const auto npts = static_cast<Eigen::Index>(grid.size());
    const Eigen::Index dim = cache.dimension();
    const int mm = p.m_max;
    const auto nb = static_cast<Eigen::Index>(mm + 1);
    const BranchFactors bf = branch_factors(p, filter.gamma);

    // C(k, m): weight of mode k in b_m(s)
    const CVector modal = cache.inverse_vectors * psi0.amps;
    CMatrix C(dim, nb);
    for (int m = 0; m <= mm; ++m) {
        const auto row = static_cast<Eigen::Index>(flat_index({Branch::PhotonInCavity, m}, mm));
        C.col(m) = cache.right_vectors.row(row).transpose().cwiseProduct(modal);
    }
    CMatrix E(npts, dim);  // exp(-i lambda_k t_j)
    CMatrix B(npts, nb);   // exp(beta_m t_j)
    for (Eigen::Index j = 0; j < npts; ++j) {
        const double tj = grid[static_cast<std::size_t>(j)];
        for (Eigen::Index k = 0; k < dim; ++k) E(j, k) = std::exp(-I * cache.eigenvalues(k) * tj);
        for (Eigen::Index m = 0; m < nb; ++m) B(j, m) = std::exp(bf.beta[static_cast<std::size_t>(m)] * tj);
    }

    parallel_for(filter.delta_grid.size(), options.threads, [&](std::size_t lo, std::size_t hi) {
        CMatrix W(dim, nb);
        CMatrix A(npts, nb);
        CVector phase(npts);
        std::vector<std::pair<Eigen::Index, Eigen::Index>> small;  // (k, m) pairs integrated by series
        for (std::size_t d = lo; d < hi; ++d) {
            const double delta = filter.delta_grid[d];
            small.clear();
            for (Eigen::Index m = 0; m < nb; ++m) {
                const cplx alpha = I * delta + bf.beta[static_cast<std::size_t>(m)];
                for (Eigen::Index k = 0; k < dim; ++k) {
                    const cplx z = alpha - I * cache.eigenvalues(k);
                    if (std::abs(z) * t < 0.125) {
                        W(k, m) = 0.0;
                        small.emplace_back(k, m);
                    } else {
                        W(k, m) = C(k, m) / z;
                    }
                }
            }
            for (Eigen::Index j = 0; j < npts; ++j) phase(j) = std::exp(I * delta * grid[static_cast<std::size_t>(j)]);

            // A(j, m) = exp(alpha_m t_j) sum_k W(k,m) exp(-i lambda_k t_j) - sum_k W(k,m)
            A.noalias() = E * W;
            const Eigen::RowVectorXcd offset = W.colwise().sum();
            for (Eigen::Index m = 0; m < nb; ++m) {
                for (Eigen::Index j = 0; j < npts; ++j) A(j, m) = phase(j) * B(j, m) * A(j, m) - offset(m);
            }
            for (const auto& [k, m] : small) {
                const cplx z = I * delta + bf.beta[static_cast<std::size_t>(m)] - I * cache.eigenvalues(k);
                for (Eigen::Index j = 0; j < npts; ++j) {
                    A(j, m) += C(k, m) * integrate_exponential(z, grid[static_cast<std::size_t>(j)]);
                }
            }
            out[d] = outer_integral(A, grid, weights, bf, filter.gamma, p.kappa, mode);
        }
    });
    return out;
}

std::vector<double> ew_counts_quadrature(const SystemParams& p, const PureState& psi0, const FilterSpec& filter,
                                         double t, SpectrumMode mode, const SpectrumOptions& options) {
    require_valid(p);
    validate_filter(filter);
    check_time(t);
    if (!(options.quadrature_step > 0.0) || !std::isfinite(options.quadrature_step)) {
        throw InvalidArgument("quadrature step must be positive");
    }
    if (psi0.amps.size() != static_cast<Eigen::Index>(p.dimension())) {
        throw InvalidArgument("state and parameters disagree on the basis size");
    }
    std::vector<double> out(filter.delta_grid.size(), 0.0);
    if (t == 0.0) return out;

    const int n = even_steps(options.outer_steps);
    const double h_outer = t / n;
    // an even number of inner sub-steps per outer interval, each <= quadrature_step
    const int sub = 2 * std::max(1, static_cast<int>(std::ceil(h_outer / (2.0 * options.quadrature_step))));
    const double h_in = h_outer / sub;
    const std::vector<double> grid = uniform_grid(t, n);
    const std::vector<double> weights = simpson_weights(n, h_outer);
    const std::vector<double> sub_weights = simpson_weights(sub, h_in);
    const int mm = p.m_max;
    const auto nb = static_cast<Eigen::Index>(mm + 1);
    const auto n_in = static_cast<Eigen::Index>(n) * sub + 1;
    const BranchFactors bf = branch_factors(p, filter.gamma);

    // photon-branch amplitudes on the inner grid
    const CMatrix step = (CMatrix(-I * build_h_dnh(p).entries * h_in)).exp();
    CMatrix b(n_in, nb);
    CVector psi = psi0.amps;
    const auto first_b = static_cast<Eigen::Index>(flat_index({Branch::PhotonInCavity, 0}, mm));
    for (Eigen::Index i = 0; i < n_in; ++i) {
        if (i > 0) psi = step * psi;
        b.row(i) = psi.segment(first_b, nb).transpose();
    }
    CMatrix B(n_in, nb);
    for (Eigen::Index i = 0; i < n_in; ++i) {
        const double s = h_in * static_cast<double>(i);
        for (Eigen::Index m = 0; m < nb; ++m) B(i, m) = std::exp(bf.beta[static_cast<std::size_t>(m)] * s) * b(i, m);
    }

    const auto npts = static_cast<Eigen::Index>(grid.size());
    parallel_for(filter.delta_grid.size(), options.threads, [&](std::size_t lo, std::size_t hi) {
        CMatrix A(npts, nb);
        CVector phase(n_in);
        for (std::size_t d = lo; d < hi; ++d) {
            const double delta = filter.delta_grid[d];
            for (Eigen::Index i = 0; i < n_in; ++i) phase(i) = std::exp(I * delta * (h_in * static_cast<double>(i)));
            for (Eigen::Index m = 0; m < nb; ++m) {
                A(0, m) = 0.0;
                for (Eigen::Index j = 1; j < npts; ++j) {
                    cplx block = 0.0;
                    const Eigen::Index base = (j - 1) * sub;
                    for (int q = 0; q <= sub; ++q) {
                        block += sub_weights[static_cast<std::size_t>(q)] * phase(base + q) * B(base + q, m);
                    }
                    A(j, m) = A(j - 1, m) + block;
                }
            }
            out[d] = outer_integral(A, grid, weights, bf, filter.gamma, p.kappa, mode);
        }
    });
    return out;
}

SpectrumResult compute_spectrum(const SystemParams& p, const PureState& psi0, const FilterSpec& filter,
                                const std::vector<double>& times, SpectrumMode mode, Backend backend,
                                const SpectrumOptions& options) {
    require_valid(p);
    validate_filter(filter);
    for (std::size_t i = 0; i < times.size(); ++i) {
        check_time(times[i]);
        if (i > 0 && !(times[i] > times[i - 1])) throw InvalidArgument("observation times must be strictly increasing");
    }
    SpectrumResult r;
    r.times = times;
    r.delta_grid = filter.delta_grid;
    r.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(times.size()),
                                     static_cast<Eigen::Index>(filter.delta_grid.size()));
    r.mode = mode;
    r.backend = backend;
    r.params = p;
    r.filter_gamma = filter.gamma;

    PropagatorCache cache;
    if (backend == Backend::ClosedForm) cache = decompose(build_h_dnh(p));
    for (std::size_t i = 0; i < times.size(); ++i) {
        const std::vector<double> v = backend == Backend::ClosedForm
                                          ? ew_counts_closed(p, cache, psi0, filter, times[i], mode, options)
                                          : ew_counts_quadrature(p, psi0, filter, times[i], mode, options);
        for (std::size_t j = 0; j < v.size(); ++j) r.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v[j];
    }
    return r;
}

ThermalWeights thermal_weights(double mbar, int m_max) {
    if (!(mbar >= 0.0) || !std::isfinite(mbar)) throw InvalidArgument("mean phonon number must be non-negative");
    if (m_max < 0) throw InvalidArgument("m_max must be non-negative");
    ThermalWeights w;
    double sum = 0.0;
    for (int m = 0; m <= m_max; ++m) {
        const double pm = std::pow(mbar, m) / std::pow(1.0 + mbar, m + 1);
        w.p.push_back(pm);
        sum += pm;
    }
    w.tail_mass = 1.0 - sum;
    return w;
}

SpectrumResult thermal_spectrum(const SystemParams& p, const FilterSpec& filter, const std::vector<double>& times,
                                SpectrumMode mode, Backend backend, const SpectrumOptions& options) {
    require_valid(p);
    const ThermalWeights w = thermal_weights(p.mbar, p.m_max);
    SpectrumResult total;
    bool first = true;
    for (int m0 = 0; m0 <= p.m_max; ++m0) {
        const double weight = w.p[static_cast<std::size_t>(m0)];
        if (weight == 0.0) continue;
        const PureState psi0 = make_initial_state({Branch::AtomExcited, m0}, p);
        SpectrumResult one = compute_spectrum(p, psi0, filter, times, mode, backend, options);
        if (first) {
            total = std::move(one);
            total.values *= weight;
            first = false;
        } else {
            total.values += weight * one.values;
        }
    }
    total.thermal = true;
    total.thermal_weights = w.p;
    if (w.tail_mass >= 1e-3) {
        std::ostringstream os;
        os << "thermal tail mass " << w.tail_mass << " beyond m_max=" << p.m_max << " exceeds 1e-3";
        total.warnings.push_back(os.str());
    }
    if (p.include_mbar_terms) {
        total.warnings.push_back("mbar terms kept in the generator; weak-damping averaging normally drops them");
    }
    return total;
}

}  // namespace omspec
