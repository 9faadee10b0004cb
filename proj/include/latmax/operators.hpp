#pragma once

// Lattice operators on periodic grids: body averages, maximal functions, the
// discrete Laplacian L = sum_k (1/4) D_k* D_k with D_k f(x) = f(x) - f(x+e_k),
// the Poisson semigroup P_t = e^{-t L^{1/2}}, Littlewood-Paley differences,
// the vertical square function, Riesz transforms R_j = (1/2) D_j L^{-1/2},
// and the half Laplacians L^{1/2}, L^{-1/2}.
//
// Semigroup and Riesz operators act spectrally: the forward transform here
// matches the convention hat f(xi) = sum f(x) e^{2 pi i <xi, x>}, under which
// L has symbol |xi|_sin^2 and D_j has symbol 1 - e^{-2 pi i xi_j}. Spectral
// application on the torus is exact up to FFT round-off.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <variant>
#include <vector>

#include "latmax/bodies.hpp"
#include "latmax/errors.hpp"
#include "latmax/fft.hpp"
#include "latmax/grid.hpp"
#include "latmax/symbols.hpp"

namespace latmax {

// Grid means at or below this are treated as zero when an operator needs a
// mean-zero input (the xi = 0 mode of L^{-1/2} must be removed explicitly on
// a finite grid).
inline constexpr double kMeanZeroTol = 1e-12;

// ---------------------------------------------------------------------------
// Scale sets.

struct ScaleSet {
    enum class Kind { full, lacunary, dyadic_block };
    Kind kind = Kind::full;
    double lacunarity = 0.0; // geometric base for Kind::lacunary
    int block = 0;           // n for Kind::dyadic_block
    std::vector<double> scales;
};

inline void validate(const ScaleSet& s) {
    if (s.scales.empty()) throw std::invalid_argument("ScaleSet: empty");
    for (std::size_t i = 0; i < s.scales.size(); ++i) {
        if (!(s.scales[i] > 0.0)) throw std::invalid_argument("ScaleSet: scales must be positive");
        if (i > 0 && !(s.scales[i] > s.scales[i - 1]))
            throw std::invalid_argument("ScaleSet: scales must be strictly increasing");
    }
    if (s.kind == ScaleSet::Kind::lacunary) {
        if (!(s.lacunarity > 1.0)) throw std::invalid_argument("ScaleSet: lacunarity must exceed 1");
        for (std::size_t i = 1; i < s.scales.size(); ++i) {
            const double ratio = s.scales[i] / s.scales[i - 1];
            // ratio within [a, a^2], with a hair of slack for FP powers
            if (ratio < s.lacunarity * (1.0 - 1e-12) ||
                ratio > s.lacunarity * s.lacunarity * (1.0 + 1e-12))
                throw std::invalid_argument("ScaleSet: lacunary ratio out of [a, a^2]");
        }
    }
}

inline ScaleSet full_scales(std::vector<double> scales) {
    ScaleSet s;
    s.kind = ScaleSet::Kind::full;
    s.scales = std::move(scales);
    validate(s);
    return s;
}

inline ScaleSet lacunary_scales(double a, int n_min, int n_max) {
    if (n_min > n_max) throw std::invalid_argument("lacunary_scales: empty range");
    ScaleSet s;
    s.kind = ScaleSet::Kind::lacunary;
    s.lacunarity = a;
    for (int n = n_min; n <= n_max; ++n) s.scales.push_back(std::pow(a, n));
    validate(s);
    return s;
}

// Integer scales of the dyadic block [2^n, 2^{n+1}], endpoints included.
inline ScaleSet dyadic_block_scales(int n) {
    if (n < 0 || n > 30) throw std::invalid_argument("dyadic_block_scales: n out of range");
    ScaleSet s;
    s.kind = ScaleSet::Kind::dyadic_block;
    s.block = n;
    for (std::int64_t t = std::int64_t{1} << n; t <= std::int64_t{1} << (n + 1); ++t)
        s.scales.push_back(static_cast<double>(t));
    validate(s);
    return s;
}

// ---------------------------------------------------------------------------
// Spectral application.

// Calls fn(flat_index, xi) for every grid frequency, with xi recycled in
// place; indices run row-major so only the fastest axes change per step.
template <class Fn>
void for_each_frequency(const GridFunction& f, Fn&& fn) {
    const int d = f.dim();
    const std::int64_t side = f.side();
    std::vector<std::int64_t> digits(static_cast<std::size_t>(d), 0);
    std::vector<double> xi(static_cast<std::size_t>(d), f.freq(0));
    const std::size_t n = f.size();
    for (std::size_t idx = 0; idx < n; ++idx) {
        fn(idx, xi);
        for (int ax = d - 1; ax >= 0; --ax) {
            auto& dig = digits[static_cast<std::size_t>(ax)];
            if (++dig < side) {
                xi[static_cast<std::size_t>(ax)] = f.freq(dig);
                break;
            }
            dig = 0;
            xi[static_cast<std::size_t>(ax)] = f.freq(0);
        }
    }
}

// Multiplies the Fourier transform of f by symbol(xi) and transforms back.
template <class Symbol>
GridFunction apply_symbol(const GridFunction& f, Symbol&& symbol) {
    GridFunction hat = f;
    fft_forward(hat);
    for_each_frequency(hat,
                       [&](std::size_t idx, const std::vector<double>& xi) { hat[idx] *= symbol(xi); });
    fft_inverse(hat);
    return hat;
}

// ---------------------------------------------------------------------------
// Body averages.

enum class Padding { strict, wrap };

// Uniform kernel of the body at scale t, periodized onto a side^dim grid.
inline GridFunction kernel_grid(const Body& body, double t, int dim, int side,
                                std::size_t cap = kDefaultLatticeCap) {
    const SparseFunction k = kernel(body, t, dim, cap);
    GridFunction K(dim, side);
    for (const auto& [pt, w] : k) K[K.flat(pt)] += w;
    return K;
}

// Average of f over the body's lattice points at scale t. Padding::strict
// demands that the true (unwrapped) support of the result fits the grid;
// Padding::wrap computes the periodized average without that guard.
inline GridFunction average(const GridFunction& f, const Body& body, double t,
                            Padding padding = Padding::strict,
                            std::size_t cap = kDefaultLatticeCap) {
    const SparseFunction k = kernel(body, t, f.dim(), cap);
    if (padding == Padding::strict) {
        const std::int64_t rf = f.support_radius();
        const std::int64_t rk = k.radius();
        const std::int64_t limit = f.side() / 2 - 1;
        if (rf >= 0 && rf + rk > limit) {
            throw padding_error("average: support radius " + std::to_string(rf) +
                                " plus kernel radius " + std::to_string(rk) +
                                " exceeds the aliasing-free limit " + std::to_string(limit) +
                                " for side " + std::to_string(f.side()));
        }
    }
    GridFunction K(f.dim(), f.side());
    for (const auto& [pt, w] : k) K[K.flat(pt)] += w;
    return circular_convolve(f, K);
}

// Cube average through the Fourier side: multiply by the cube symbol at
// integer scale N. Identical (to FFT accuracy) to average(f, Cube{}, N).
inline GridFunction average_spectral(const GridFunction& f, std::int64_t N) {
    if (N < 0) throw std::invalid_argument("average_spectral: N must be nonnegative");
    if (N == 0) return f;
    return apply_symbol(f, [N](const std::vector<double>& xi) { return eval_cube_symbol(N, xi); });
}

// Pointwise max of |average| over the scale set. Cube scales deduplicate
// through floor(t) since the cube average only sees the integer part.
inline GridFunction maximal(const GridFunction& f, const Body& body, const ScaleSet& scales,
                            Padding padding = Padding::strict,
                            std::size_t cap = kDefaultLatticeCap) {
    validate(scales);
    std::vector<double> ts = scales.scales;
    if (std::holds_alternative<Cube>(body)) {
        std::vector<double> dedup;
        for (double t : ts)
            if (dedup.empty() || std::floor(t) != std::floor(dedup.back())) dedup.push_back(t);
        ts = std::move(dedup);
    }
    GridFunction out(f.dim(), f.side());
    bool first = true;
    for (double t : ts) {
        const GridFunction avg = average(f, body, t, padding, cap);
        for (std::size_t i = 0; i < out.size(); ++i) {
            const double mag = std::abs(avg[i]);
            if (first || mag > out[i].real()) out[i] = mag;
        }
        first = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Laplacian, semigroup, square function, Riesz.

// Spatial stencil (d/2) f(x) - (1/4) sum_k [f(x+e_k) + f(x-e_k)], periodic.
inline GridFunction laplacian(const GridFunction& f) {
    const int d = f.dim();
    const std::int64_t side = f.side();
    GridFunction out(d, f.side());
    std::vector<std::int64_t> strides(static_cast<std::size_t>(d));
    std::int64_t stride = 1;
    for (int ax = d - 1; ax >= 0; --ax) {
        strides[static_cast<std::size_t>(ax)] = stride;
        stride *= side;
    }
    std::vector<std::int64_t> digits(static_cast<std::size_t>(d), 0);
    const std::size_t n = f.size();
    for (std::size_t idx = 0; idx < n; ++idx) {
        cplx acc = (static_cast<double>(d) / 2.0) * f[idx];
        for (int ax = 0; ax < d; ++ax) {
            const std::int64_t s = strides[static_cast<std::size_t>(ax)];
            const std::int64_t pos = digits[static_cast<std::size_t>(ax)];
            const std::size_t up =
                idx + static_cast<std::size_t>(pos + 1 == side ? s * (1 - side) : s);
            const std::size_t dn =
                idx + static_cast<std::size_t>(pos == 0 ? s * (side - 1) : -s);
            acc -= 0.25 * (f[up] + f[dn]);
        }
        out[idx] = acc;
        for (int ax = d - 1; ax >= 0; --ax) {
            auto& dig = digits[static_cast<std::size_t>(ax)];
            if (++dig < side) break;
            dig = 0;
        }
    }
    return out;
}

inline GridFunction laplacian_spectral(const GridFunction& f) {
    return apply_symbol(f, [](const std::vector<double>& xi) {
        const double s = xi_sin_norm(xi);
        return s * s;
    });
}

// Forward difference along one axis: out(x) = f(x) - f(x + e_axis), periodic.
inline GridFunction forward_difference(const GridFunction& f, int axis) {
    const int d = f.dim();
    if (axis < 0 || axis >= d)
        throw std::invalid_argument("forward_difference: axis out of range");
    const std::int64_t side = f.side();
    std::int64_t stride = 1;
    for (int ax = d - 1; ax > axis; --ax) stride *= side;
    GridFunction out(d, side);
    const std::size_t n = f.size();
    for (std::size_t idx = 0; idx < n; ++idx) {
        const std::int64_t pos = (static_cast<std::int64_t>(idx) / stride) % side;
        const std::size_t up =
            idx + static_cast<std::size_t>(pos + 1 == side ? stride * (1 - side) : stride);
        out[idx] = f[idx] - f[up];
    }
    return out;
}

inline GridFunction poisson(const GridFunction& f, double t) {
    if (t < 0.0) throw std::invalid_argument("poisson: t must be nonnegative");
    if (t == 0.0) return f;
    return apply_symbol(f,
                        [t](const std::vector<double>& xi) { return eval_poisson_symbol(t, xi); });
}

// Spatial kernel of P_t on the grid (P_t applied to the delta at 0).
inline GridFunction poisson_kernel(int dim, int side, double t) {
    GridFunction delta(dim, side);
    delta[0] = 1.0;
    return poisson(delta, t);
}

// S_n f = P_{a^n} f - P_{a^{n-1}} f for a lacunary scale set with base a.
inline GridFunction littlewood_paley(const GridFunction& f, int n, const ScaleSet& scales) {
    if (scales.kind != ScaleSet::Kind::lacunary)
        throw std::invalid_argument("littlewood_paley: scale set must be lacunary");
    const double a = scales.lacunarity;
    GridFunction hi = poisson(f, std::pow(a, n));
    const GridFunction lo = poisson(f, std::pow(a, n - 1));
    for (std::size_t i = 0; i < hi.size(); ++i) hi[i] -= lo[i];
    return hi;
}

struct QuadratureSpec {
    double t_min = 1e-4;
    double t_max = 1e4;
    int nodes = 400;
};

// Vertical square function g(f)(x) = (int_0^infty t |d/dt P_t f(x)|^2 dt)^{1/2}.
// The t-derivative is exact on the symbol side (-|xi|_sin e^{-t|xi|_sin}); the
// integral is a trapezoid rule on log-spaced nodes, which for this integrand
// (exponentially small at both ends in log t) converges spectrally. The tail
// beyond t_max is bounded by e^{-2 t_max s}(t_max s / 2 + 1/4) per mode and is
// checked against the smallest nonzero |xi|_sin on the grid.
inline GridFunction square_function(const GridFunction& f, QuadratureSpec quad = {}) {
    if (!(quad.t_min > 0.0) || !(quad.t_max > quad.t_min) || quad.nodes < 8)
        throw std::invalid_argument("square_function: malformed quadrature");
    GridFunction hat = f;
    fft_forward(hat);
    double s_min = std::numeric_limits<double>::infinity();
    for_each_frequency(hat, [&](std::size_t, const std::vector<double>& xi) {
        const double s = xi_sin_norm(xi);
        if (s > 0.0 && s < s_min) s_min = s;
    });
    if (std::isfinite(s_min)) {
        const double x = quad.t_max * s_min;
        const double tail = std::exp(-2.0 * x) * (x / 2.0 + 0.25);
        if (!(tail < 1e-8))
            throw convergence_error("square_function: quadrature tail bound " +
                                    std::to_string(tail) + " is not below 1e-8");
    }
    const double du = std::log(quad.t_max / quad.t_min) / (quad.nodes - 1);
    std::vector<double> accum(f.size(), 0.0);
    GridFunction work(f.dim(), f.side());
    for (int i = 0; i < quad.nodes; ++i) {
        const double t = quad.t_min * std::exp(du * i);
        const double weight = (i == 0 || i == quad.nodes - 1 ? 0.5 : 1.0) * du * t;
        for_each_frequency(hat, [&](std::size_t idx, const std::vector<double>& xi) {
            const double s = xi_sin_norm(xi);
            work[idx] = hat[idx] * (-s * std::exp(-t * s));
        });
        GridFunction dPt = work;
        fft_inverse(dPt);
        for (std::size_t k = 0; k < accum.size(); ++k)
            accum[k] += weight * t * std::norm(dPt[k]);
    }
    GridFunction g(f.dim(), f.side());
    for (std::size_t k = 0; k < accum.size(); ++k) g[k] = std::sqrt(accum[k]);
    return g;
}

namespace detail {
inline void require_mean_zero(const GridFunction& f, const char* who) {
    if (std::abs(f.mean()) > kMeanZeroTol)
        throw singularity_error(std::string(who) +
                                ": input must be mean-zero (|mean| <= 1e-12) to invert at xi = 0");
}
} // namespace detail

// R_axis f via the symbol (1 - e^{-2 pi i xi_axis}) / (2 |xi|_sin); the xi = 0
// mode is annihilated, which is consistent only for mean-zero input.
inline GridFunction riesz(const GridFunction& f, int axis) {
    if (axis < 0 || axis >= f.dim()) throw std::invalid_argument("riesz: axis out of range");
    detail::require_mean_zero(f, "riesz");
    return apply_symbol(f, [axis](const std::vector<double>& xi) -> cplx {
        if (xi_sin_norm(xi) == 0.0) return 0.0;
        return eval_riesz_symbol(axis, xi);
    });
}

// L^{1/2} (sign +1) or L^{-1/2} (sign -1); the inverse root needs mean-zero
// input for the same reason as riesz.
inline GridFunction half_laplacian(const GridFunction& f, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("half_laplacian: sign must be +-1");
    if (sign == -1) detail::require_mean_zero(f, "half_laplacian");
    return apply_symbol(f, [sign](const std::vector<double>& xi) {
        const double s = xi_sin_norm(xi);
        if (s == 0.0) return 0.0;
        return sign == 1 ? s : 1.0 / s;
    });
}

// ---------------------------------------------------------------------------
// Subordination identity. For a = ts/2 the substitution u = w^2 turns
//   int_0^infty e^{-t^2 s^2/(4u)} (pi u)^{-1/2} e^{-u} du
// into (2/sqrt(pi)) int_0^infty e^{-a^2/w^2 - w^2} dw = e^{-2a} = e^{-ts}.
// Returns |quadrature - e^{-ts}| with composite Simpson on w in [0, w_max].
inline double subordination_gap(double t, double s, double step = 1e-3, double w_max = 9.0) {
    if (t < 0.0 || s < 0.0) throw std::invalid_argument("subordination_gap: t, s >= 0 required");
    const double a = t * s / 2.0;
    const auto integrand = [a](double w) {
        if (w == 0.0) return a == 0.0 ? 1.0 : 0.0;
        return std::exp(-a * a / (w * w) - w * w);
    };
    std::int64_t panels = static_cast<std::int64_t>(std::ceil(w_max / step));
    if (panels % 2 == 1) ++panels; // Simpson needs an even panel count
    const double h = w_max / static_cast<double>(panels);
    double sum = integrand(0.0) + integrand(w_max);
    for (std::int64_t i = 1; i < panels; ++i)
        sum += integrand(h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
    const double integral = 2.0 / std::sqrt(pi) * sum * h / 3.0;
    return std::abs(integral - std::exp(-t * s));
}

} // namespace latmax
