#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "latmax/errors.hpp"

namespace latmax {

inline constexpr double pi = std::numbers::pi;

inline double euclid_norm(const std::vector<double>& xi) {
    double s = 0.0;
    for (double c : xi) s += c * c;
    return std::sqrt(s);
}

// sin((2N+1) pi u) / ((2N+1) sin(pi u)): the 1-d multiplier of the uniform
// average over {-N, ..., N}. Near integer u the quotient is evaluated by its
// quadratic Taylor branch; both numerator and denominator vanish there.
inline double dirichlet_factor(std::int64_t N, double u) {
    const double m = 2.0 * static_cast<double>(N) + 1.0;
    const double s = std::sin(pi * u);
    if (std::abs(s) < 1e-8) {
        const double z = pi * (u - std::round(u));
        return 1.0 - (m * m - 1.0) * z * z / 6.0;
    }
    return std::sin(m * pi * u) / (m * s);
}

// Multiplier of the discrete cube average at integer radius N:
// m_N(xi) = prod_k sin((2N+1) pi xi_k) / ((2N+1) sin(pi xi_k)).
inline double eval_cube_symbol(std::int64_t N, const std::vector<double>& xi) {
    if (N < 0) throw std::invalid_argument("eval_cube_symbol: N must be >= 0");
    double p = 1.0;
    for (double u : xi) p *= dirichlet_factor(N, u);
    return p;
}

inline double sinc_factor(double y) {
    const double z = pi * y;
    if (std::abs(z) < 1e-8) return 1.0 - z * z / 6.0;
    return std::sin(z) / z;
}

// Multiplier of the continuous box average [-t-1/2, t+1/2]^d:
// nu_t(xi) = prod_k sin((2t+1) pi xi_k) / ((2t+1) pi xi_k).
inline double eval_box_symbol(double t, const std::vector<double>& xi) {
    if (t < 0.0) throw std::invalid_argument("eval_box_symbol: t must be >= 0");
    double p = 1.0;
    for (double u : xi) p *= sinc_factor((2.0 * t + 1.0) * u);
    return p;
}

// |xi|_sin = (sum_k sin^2(pi xi_k))^{1/2}; satisfies |xi| <= |xi|_sin <= pi|xi|
// on [-1/2, 1/2)^d and is the symbol of the square root of the discrete
// Laplacian.
inline double xi_sin_norm(const std::vector<double>& xi) {
    double s = 0.0;
    for (double u : xi) {
        const double w = std::sin(pi * u);
        s += w * w;
    }
    return std::sqrt(s);
}

// Subordinated Poisson semigroup symbol exp(-t |xi|_sin).
inline double eval_poisson_symbol(double t, const std::vector<double>& xi) {
    if (t < 0.0) throw std::invalid_argument("eval_poisson_symbol: t must be >= 0");
    return std::exp(-t * xi_sin_norm(xi));
}

// Riesz transform symbol r_j(xi) = (1 - e^{-2 pi i xi_j}) / (2 |xi|_sin).
// The family satisfies sum_j |r_j|^2 = 1 away from xi = 0.
inline std::complex<double> eval_riesz_symbol(int j, const std::vector<double>& xi) {
    if (j < 0 || j >= static_cast<int>(xi.size()))
        throw std::invalid_argument("eval_riesz_symbol: axis out of range");
    const double s = xi_sin_norm(xi);
    if (s == 0.0)
        throw singularity_error("eval_riesz_symbol: |xi|_sin vanishes at this frequency");
    const double a = 2.0 * pi * xi[static_cast<std::size_t>(j)];
    const std::complex<double> num = 1.0 - std::complex<double>(std::cos(a), -std::sin(a));
    return num / (2.0 * s);
}

} // namespace latmax
