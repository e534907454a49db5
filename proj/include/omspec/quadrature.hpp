// quadrature.hpp - uniform-grid integration rules used by the ledger and spectra

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace omspec {

/// Composite Simpson weights for n (even, >= 2) intervals of width h.
std::vector<double> simpson_weights(int n, double h);

/// Composite Simpson over uniformly spaced samples. An odd number of
/// intervals closes with a three-point end correction.
double simpson(std::span<const double> f, double h);

/// Running integral F[i] = int_0^{t_i} f. Even nodes use plain Simpson; odd
/// nodes add the quadratic partial-interval rule h/12 (5 f0 + 8 f1 - f2).
std::vector<double> cumulative_simpson(std::span<const double> f, double h);

/// int_0^T exp(z s) ds. Uses a Taylor series when |z T| is small so the
/// removable singularity at z = 0 never cancels catastrophically.
std::complex<double> integrate_exponential(std::complex<double> z, double T);

}  // namespace omspec
