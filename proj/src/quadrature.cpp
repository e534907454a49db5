// quadrature.cpp

#include "omspec/quadrature.hpp"

#include <cmath>

#include "omspec/errors.hpp"

namespace omspec {

std::vector<double> simpson_weights(int n, double h) {
    if (n < 2 || n % 2 != 0) throw InvalidArgument("Simpson rule needs an even number of intervals >= 2");
    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        double c = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        w[static_cast<std::size_t>(i)] = c * h / 3.0;
    }
    return w;
}

double simpson(std::span<const double> f, double h) {
    const auto n = static_cast<int>(f.size()) - 1;
    if (n < 1) return 0.0;
    if (n == 1) return 0.5 * h * (f[0] + f[1]);
    double sum = 0.0;
    const int even = n % 2 == 0 ? n : n - 1;
    for (int i = 0; i < even; i += 2) sum += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    if (even != n) {
        // last interval [n-1, n] from the parabola through n-2, n-1, n
        sum += h / 12.0 * (5.0 * f[n] + 8.0 * f[n - 1] - f[n - 2]);
    }
    return sum;
}

std::vector<double> cumulative_simpson(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    if (n < 2) return out;
    if (n == 2) {
        out[1] = 0.5 * h * (f[0] + f[1]);
        return out;
    }
    for (std::size_t i = 2; i < n; i += 2) {
        out[i] = out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
    }
    for (std::size_t i = 1; i < n; i += 2) {
        if (i + 1 < n) {
            out[i] = out[i - 1] + h / 12.0 * (5.0 * f[i - 1] + 8.0 * f[i] - f[i + 1]);
        } else {
            out[i] = out[i - 1] + h / 12.0 * (5.0 * f[i] + 8.0 * f[i - 1] - f[i - 2]);
        }
    }
    return out;
}

std::complex<double> integrate_exponential(std::complex<double> z, double T) {
    const std::complex<double> x = z * T;
    if (std::abs(x) < 0.125) {
        // T * sum_k x^k / (k+1)!; 14 terms reach machine precision for |x| < 1/8
        std::complex<double> term = 1.0;
        std::complex<double> sum = 1.0;
        for (int k = 1; k <= 14; ++k) {
            term *= x / static_cast<double>(k + 1);
            sum += term;
        }
        return T * sum;
    }
    return (std::exp(x) - 1.0) / z;
}

}  // namespace omspec
