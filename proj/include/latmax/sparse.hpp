#pragma once

#include <cmath>
#include <map>
#include <stdexcept>

#include "latmax/coord.hpp"

namespace latmax {

// Finitely supported real function on Z^d. The map keeps points in
// lexicographic order, so every iteration (norms, convolutions, kernel
// serialization) is deterministic.
class SparseFunction {
public:
    explicit SparseFunction(int dim) : dim_(dim) {
        if (dim < 1) throw std::invalid_argument("SparseFunction: dim must be >= 1");
    }

    int dim() const { return dim_; }

    void set(const Coord& x, double value) {
        check(x);
        if (value == 0.0) v_.erase(x); else v_[x] = value;
    }

    void add(const Coord& x, double value) {
        check(x);
        double& slot = v_[x];
        slot += value;
        if (slot == 0.0) v_.erase(x);
    }

    double at(const Coord& x) const {
        auto it = v_.find(x);
        return it == v_.end() ? 0.0 : it->second;
    }

    std::size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }

    // Largest sup-norm over the support; -1 for the zero function.
    std::int64_t radius() const {
        std::int64_t r = -1;
        for (const auto& [x, value] : v_) r = std::max(r, linf_norm(x));
        return r;
    }

    double mass() const {
        double s = 0.0;
        for (const auto& [x, value] : v_) s += value;
        return s;
    }

    double lp_norm(double p) const {
        if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
        if (std::isinf(p)) {
            double m = 0.0;
            for (const auto& [x, value] : v_) m = std::max(m, std::abs(value));
            return m;
        }
        double s = 0.0;
        for (const auto& [x, value] : v_) s += std::pow(std::abs(value), p);
        return std::pow(s, 1.0 / p);
    }

    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }

    static SparseFunction delta(int dim) {
        SparseFunction f(dim);
        f.set(zero_coord(dim), 1.0);
        return f;
    }

private:
    void check(const Coord& x) const {
        if (static_cast<int>(x.size()) != dim_)
            throw std::invalid_argument("SparseFunction: coordinate dimension mismatch");
    }

    int dim_;
    std::map<Coord, double> v_;
};

// Direct convolution (f*g)(x) = sum_y f(y) g(x-y). Quadratic in support
// size; used as the exact cross-check for the FFT path.
inline SparseFunction convolve(const SparseFunction& f, const SparseFunction& g) {
    if (f.dim() != g.dim()) throw std::invalid_argument("convolve: dimension mismatch");
    SparseFunction h(f.dim());
    for (const auto& [y, fy] : f)
        for (const auto& [z, gz] : g)
            h.add(add(y, z), fy * gz);
    return h;
}

} // namespace latmax
