#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "latmax/coord.hpp"
#include "latmax/errors.hpp"
#include "latmax/sparse.hpp"

namespace latmax {

using cplx = std::complex<double>;

// Complex function on the periodic grid (Z / side Z)^dim, side a power of
// two. Array index i along an axis represents the integer coordinate i for
// i < side/2 and i - side otherwise; the same mapping sends a frequency
// index j to xi = j/side in [-1/2, 1/2). Row-major layout, axis 0 slowest.
class GridFunction {
public:
    static constexpr std::size_t kDefaultMaxPoints = std::size_t{1} << 24;

    GridFunction(int dim, int side, std::size_t max_points = kDefaultMaxPoints)
        : dim_(dim), side_(side) {
        if (dim < 1) throw std::invalid_argument("GridFunction: dim must be >= 1");
        if (side < 2 || !std::has_single_bit(static_cast<unsigned>(side)))
            throw std::invalid_argument("GridFunction: side must be a power of two >= 2");
        std::size_t n = 1;
        for (int k = 0; k < dim; ++k) {
            if (n > max_points / static_cast<std::size_t>(side))
                throw capacity_error("GridFunction: side^dim exceeds the configured point cap of " +
                                     std::to_string(max_points));
            n *= static_cast<std::size_t>(side);
        }
        v_.assign(n, cplx{});
    }

    int dim() const { return dim_; }
    int side() const { return side_; }
    std::size_t size() const { return v_.size(); }

    cplx* data() { return v_.data(); }
    const cplx* data() const { return v_.data(); }
    cplx& operator[](std::size_t i) { return v_[i]; }
    const cplx& operator[](std::size_t i) const { return v_[i]; }

    std::size_t flat(const Coord& x) const {
        std::size_t idx = 0;
        for (int k = 0; k < dim_; ++k) {
            std::int64_t w = x[static_cast<std::size_t>(k)] % side_;
            if (w < 0) w += side_;
            idx = idx * static_cast<std::size_t>(side_) + static_cast<std::size_t>(w);
        }
        return idx;
    }

    cplx& at(const Coord& x) { return v_[flat(x)]; }
    const cplx& at(const Coord& x) const { return v_[flat(x)]; }

    Coord coord_of(std::size_t idx) const {
        Coord x(static_cast<std::size_t>(dim_));
        for (int k = dim_ - 1; k >= 0; --k) {
            std::int64_t i = static_cast<std::int64_t>(idx % static_cast<std::size_t>(side_));
            idx /= static_cast<std::size_t>(side_);
            x[static_cast<std::size_t>(k)] = i < side_ / 2 ? i : i - side_;
        }
        return x;
    }

    // Frequency represented by array index j along one axis.
    double freq(std::int64_t j) const {
        const std::int64_t c = j < side_ / 2 ? j : j - side_;
        return static_cast<double>(c) / static_cast<double>(side_);
    }

    cplx mean() const {
        cplx s{};
        for (const cplx& z : v_) s += z;
        return s / static_cast<double>(v_.size());
    }

    double lp_norm(double p) const {
        if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
        if (std::isinf(p)) {
            double m = 0.0;
            for (const cplx& z : v_) m = std::max(m, std::abs(z));
            return m;
        }
        double s = 0.0;
        for (const cplx& z : v_) s += std::pow(std::abs(z), p);
        return std::pow(s, 1.0 / p);
    }

    // Largest sup-norm over exactly nonzero entries; -1 for the zero function.
    std::int64_t support_radius() const {
        std::int64_t r = -1;
        for (std::size_t i = 0; i < v_.size(); ++i)
            if (v_[i] != cplx{}) r = std::max(r, linf_norm(coord_of(i)));
        return r;
    }

private:
    int dim_;
    int side_;
    std::vector<cplx> v_;
};

inline cplx inner(const GridFunction& f, const GridFunction& g) {
    cplx s{};
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * std::conj(g[i]);
    return s;
}

// Places a finitely supported function at the center of a periodic grid.
// The margin reserves extra headroom for later convolutions: the support
// must fit in the centered box of radius side/2 - 1 - margin.
inline GridFunction embed(const SparseFunction& f, int side, int margin = 0,
                          std::size_t max_points = GridFunction::kDefaultMaxPoints) {
    const std::int64_t r = f.radius();
    const std::int64_t limit = static_cast<std::int64_t>(side) / 2 - 1 - margin;
    if (r > limit) {
        std::int64_t need = 2 * (r + 1 + margin);
        int s = 2;
        while (s < need) s *= 2;
        throw padding_error("embed: support radius " + std::to_string(r) +
                            " exceeds box radius " + std::to_string(limit) +
                            " on side " + std::to_string(side) +
                            "; smallest admissible side is " + std::to_string(s));
    }
    GridFunction g(f.dim(), side, max_points);
    for (const auto& [x, value] : f) g.at(x) = value;
    return g;
}

} // namespace latmax
