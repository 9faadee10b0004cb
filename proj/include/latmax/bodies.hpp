#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "latmax/coord.hpp"
#include "latmax/errors.hpp"
#include "latmax/sparse.hpp"

namespace latmax {

using bigint = boost::multiprecision::cpp_int;

// Symmetric convex bodies G in R^d, each described by its Minkowski gauge
// |x|_G = inf { t > 0 : x/t in G }. The dilate G_t is { gauge <= t } (G is
// closed, so the boundary is included).
struct Cube {}; // [-1,1]^d, gauge = sup norm

struct LqBall { // { sum |x_k|^q <= 1 }, q in [1, inf]
    double q;
};

struct Ellipsoid { // { sum lambda_k^2 x_k^2 <= 1 }, 1 <= l_1 < ... < l_d < sqrt(2)
    std::vector<double> lambda;
};

using Body = std::variant<Cube, LqBall, Ellipsoid>;

// Eigenvalue schedule lambda_j = sqrt(2 - 1/j): strictly increasing from 1,
// bounded by sqrt(2), so every lattice section lambda_j G meets Z^d in
// exactly {0, +-e_1, ..., +-e_j}.
inline Ellipsoid default_ellipsoid(int dim) {
    Ellipsoid e;
    e.lambda.reserve(static_cast<std::size_t>(dim));
    for (int j = 1; j <= dim; ++j)
        e.lambda.push_back(std::sqrt(2.0 - 1.0 / static_cast<double>(j)));
    return e;
}

inline void validate(const Body& body, int dim) {
    if (dim < 1) throw std::invalid_argument("body: dim must be >= 1");
    if (const auto* ball = std::get_if<LqBall>(&body)) {
        if (!(ball->q >= 1.0)) throw std::invalid_argument("LqBall: q must be >= 1");
    } else if (const auto* ell = std::get_if<Ellipsoid>(&body)) {
        if (static_cast<int>(ell->lambda.size()) != dim)
            throw std::invalid_argument("Ellipsoid: lambda size must equal dim");
        const double root2 = std::sqrt(2.0);
        double prev = 1.0;
        for (std::size_t j = 0; j < ell->lambda.size(); ++j) {
            const double l = ell->lambda[j];
            if (!(l >= prev && (j == 0 ? l >= 1.0 : l > prev)) || !(l < root2))
                throw std::invalid_argument("Ellipsoid: need 1 <= l_1 < ... < l_d < sqrt(2)");
            prev = l;
        }
    }
}

inline std::string body_name(const Body& body) {
    if (std::holds_alternative<Cube>(body)) return "cube";
    if (const auto* ball = std::get_if<LqBall>(&body))
        return std::isinf(ball->q) ? "linf-ball" : "l" + std::to_string(ball->q) + "-ball";
    return "ellipsoid";
}

inline double gauge(const Body& body, const std::vector<double>& x) {
    if (std::holds_alternative<Cube>(body)) {
        double m = 0.0;
        for (double c : x) m = std::max(m, std::abs(c));
        return m;
    }
    if (const auto* ball = std::get_if<LqBall>(&body)) {
        if (std::isinf(ball->q)) {
            double m = 0.0;
            for (double c : x) m = std::max(m, std::abs(c));
            return m;
        }
        double s = 0.0;
        for (double c : x) s += std::pow(std::abs(c), ball->q);
        return std::pow(s, 1.0 / ball->q);
    }
    const auto& ell = std::get<Ellipsoid>(body);
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double w = ell.lambda[k] * x[k];
        s += w * w;
    }
    return std::sqrt(s);
}

inline double gauge(const Body& body, const Coord& x) {
    std::vector<double> xd(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) xd[k] = static_cast<double>(x[k]);
    return gauge(body, xd);
}

// |Q_t cap Z^d| = (2 floor(t) + 1)^d, exactly.
inline bigint count_cube(double t, int dim) {
    if (t < 0.0 || dim < 1) throw std::invalid_argument("count_cube: need t >= 0, dim >= 1");
    const bigint edge = 2 * static_cast<std::int64_t>(std::floor(t)) + 1;
    return boost::multiprecision::pow(edge, static_cast<unsigned>(dim));
}

// c(G) = sup over corners s of Q_{1/2} of |s|_G; the gauges here are
// monotone in each |x_k|, so the sup sits at (1/2, ..., 1/2).
inline double comparison_constant(const Body& body, int dim) {
    validate(body, dim);
    if (std::holds_alternative<Cube>(body)) return 0.5;
    if (const auto* ball = std::get_if<LqBall>(&body)) {
        if (std::isinf(ball->q)) return 0.5;
        return 0.5 * std::pow(static_cast<double>(dim), 1.0 / ball->q);
    }
    const auto& ell = std::get<Ellipsoid>(body);
    double s = 0.0;
    for (double l : ell.lambda) s += l * l;
    return 0.5 * std::sqrt(s);
}

namespace detail {

// Relative slack for boundary membership: points whose gauge equals t up to
// rounding are included, matching the closed dilate G_t.
inline bool inside(double g, double t) { return g <= t + 4e-12 * std::max(1.0, t); }

struct LatticeEnum {
    const Body& body;
    double t;
    int dim;
    std::size_t cap;
    std::vector<Coord>* out;
    Coord point;

    void run() {
        point = zero_coord(dim);
        descend(0);
    }

    // Conservative per-axis half-width at the current prefix; may overshoot
    // by one, the leaf gauge test decides membership.
    std::int64_t half_width(int axis, double used) const {
        if (std::holds_alternative<Cube>(body))
            return static_cast<std::int64_t>(std::floor(t));
        if (const auto* ball = std::get_if<LqBall>(&body)) {
            if (std::isinf(ball->q)) return static_cast<std::int64_t>(std::floor(t));
            const double rem = std::pow(t, ball->q) - used;
            if (rem < 0.0) return -1;
            return static_cast<std::int64_t>(std::floor(std::pow(rem, 1.0 / ball->q))) + 1;
        }
        const auto& ell = std::get<Ellipsoid>(body);
        const double rem = t * t - used;
        if (rem < 0.0) return -1;
        return static_cast<std::int64_t>(std::floor(std::sqrt(rem) / ell.lambda[static_cast<std::size_t>(axis)])) + 1;
    }

    double axis_cost(int axis, std::int64_t c) const {
        if (const auto* ball = std::get_if<LqBall>(&body)) {
            if (std::isinf(ball->q)) return 0.0;
            return std::pow(std::abs(static_cast<double>(c)), ball->q);
        }
        if (const auto* ell = std::get_if<Ellipsoid>(&body)) {
            const double w = ell->lambda[static_cast<std::size_t>(axis)] * static_cast<double>(c);
            return w * w;
        }
        return 0.0;
    }

    void descend(int axis, double used = 0.0) {
        if (axis == dim) {
            if (inside(gauge(body, point), t)) {
                if (out->size() >= cap)
                    throw capacity_error("lattice_points: count exceeds cap of " + std::to_string(cap));
                out->push_back(point);
            }
            return;
        }
        const std::int64_t w = half_width(axis, used);
        for (std::int64_t c = -w; c <= w; ++c) {
            point[static_cast<std::size_t>(axis)] = c;
            descend(axis + 1, used + axis_cost(axis, c));
        }
        point[static_cast<std::size_t>(axis)] = 0;
    }
};

} // namespace detail

inline constexpr std::size_t kDefaultLatticeCap = 10'000'000;

// G_t cap Z^d in lexicographic order. Recursive box pruning keeps the visit
// count within a constant factor of the output size.
inline std::vector<Coord> lattice_points(const Body& body, double t, int dim,
                                         std::size_t cap = kDefaultLatticeCap) {
    validate(body, dim);
    if (t < 0.0) throw std::invalid_argument("lattice_points: t must be >= 0");
    if (std::holds_alternative<Cube>(body)) {
        const bigint n = count_cube(t, dim);
        if (n > bigint(cap))
            throw capacity_error("lattice_points: cube count " + n.str() +
                                 " exceeds cap of " + std::to_string(cap));
    }
    std::vector<Coord> pts;
    detail::LatticeEnum e{body, t, dim, cap, &pts, {}};
    e.run();
    return pts;
}

// Uniform probability kernel K_t^G on G_t cap Z^d.
inline SparseFunction kernel(const Body& body, double t, int dim,
                             std::size_t cap = kDefaultLatticeCap) {
    const std::vector<Coord> pts = lattice_points(body, t, dim, cap);
    SparseFunction k(dim);
    const double w = 1.0 / static_cast<double>(pts.size());
    for (const Coord& p : pts) k.set(p, w);
    return k;
}

} // namespace latmax
