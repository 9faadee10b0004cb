#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include "latmax/grid.hpp"

namespace latmax {
namespace detail {

// Iterative radix-2 transform of a contiguous line. tw[k] = exp(sign*2*pi*i*k/n),
// k < n/2, shared by every stage through stride subsampling.
inline void fft_line(cplx* a, std::size_t n, const std::vector<cplx>& tw) {
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx w = tw[k * step];
                const cplx u = a[i + k];
                const cplx t = a[i + k + len / 2] * w;
                a[i + k] = u + t;
                a[i + k + len / 2] = u - t;
            }
        }
    }
}

inline std::vector<cplx> twiddles(std::size_t n, int sign) {
    std::vector<cplx> tw(n / 2);
    const double base = static_cast<double>(sign) * 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t k = 0; k < n / 2; ++k)
        tw[k] = std::polar(1.0, base * static_cast<double>(k));
    return tw;
}

// Applies fft_line along every axis of the row-major grid.
inline void fft_all_axes(GridFunction& f, int sign) {
    const std::size_t n = static_cast<std::size_t>(f.side());
    const std::size_t total = f.size();
    const std::vector<cplx> tw = twiddles(n, sign);
    std::vector<cplx> line(n);
    std::size_t stride = total / n; // axis 0 first
    for (int axis = 0; axis < f.dim(); ++axis) {
        const std::size_t block = stride * n;
        for (std::size_t base = 0; base < total; base += block) {
            for (std::size_t off = 0; off < stride; ++off) {
                cplx* p = f.data() + base + off;
                for (std::size_t k = 0; k < n; ++k) line[k] = p[k * stride];
                fft_line(line.data(), n, tw);
                for (std::size_t k = 0; k < n; ++k) p[k * stride] = line[k];
            }
        }
        stride /= n;
    }
}

} // namespace detail

// Forward transform with the analyst's sign: fhat(j) = sum_x f(x) e^{+2 pi i <j/side, x>}.
// Sampling j/side in [-1/2,1/2) via the shared index convention makes this the
// restriction of the Fourier series on the torus to the grid frequencies.
inline void fft_forward(GridFunction& f) { detail::fft_all_axes(f, +1); }

// Inverse of fft_forward, including the 1/side^dim normalization.
inline void fft_inverse(GridFunction& f) {
    detail::fft_all_axes(f, -1);
    const double scale = 1.0 / static_cast<double>(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] *= scale;
}

// Periodic convolution (f*g)(x) = sum_y f(y) g(x-y) over the grid.
inline GridFunction circular_convolve(const GridFunction& f, const GridFunction& g) {
    if (f.dim() != g.dim() || f.side() != g.side())
        throw std::invalid_argument("circular_convolve: grid shapes differ");
    GridFunction a = f;
    GridFunction b = g;
    fft_forward(a);
    fft_forward(b);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
    fft_inverse(a);
    return a;
}

} // namespace latmax
