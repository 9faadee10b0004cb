#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "latmax/bodies.hpp"
#include "latmax/coord.hpp"
#include "latmax/errors.hpp"
#include "latmax/fft.hpp"
#include "latmax/grid.hpp"
#include "latmax/operators.hpp"
#include "latmax/rng.hpp"
#include "latmax/sparse.hpp"
#include "latmax/symbols.hpp"
#include "latmax/variation.hpp"

namespace latmax {

using bigrat = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Adversarial product construction.
//
// Dimension d = 2^{r+1} - 1 splits into blocks of sizes 2^0, ..., 2^r. Block
// s carries the set A_s of points of [-M, M]^{2^s} with odd coordinate sum
// (A_s' is the even-sum complement). The indicator of A_0 x ... x A_r spreads
// its mass so unevenly across the nested kernels K_1, ..., K_d (uniform on
// {0, +-e_1, ..., +-e_j}) that max_j |K_j * f| picks up a factor that grows
// like a power of the number of blocks.

struct CounterexampleSpec {
    int r = 1;       // number of blocks minus one; dim = 2^{r+1} - 1
    int M = 1;       // box radius per coordinate
    double p = 1.5;  // norm exponent, must be > 1
};

inline void validate(const CounterexampleSpec& spec) {
    if (spec.r < 1) throw std::invalid_argument("counterexample: r must be >= 1");
    if (spec.M < 1) throw std::invalid_argument("counterexample: M must be >= 1");
    if (!(spec.p > 1.0)) throw std::invalid_argument("counterexample: p must be > 1");
}

namespace detail {

// Counts points of [-M, M]^len by parity of the coordinate sum, by direct
// enumeration. Guard only; cost (2M+1)^len.
inline std::pair<bigint, bigint> parity_counts_enumerated(int M, int len) {
    std::vector<int> x(static_cast<std::size_t>(len), -M);
    bigint odd = 0, even = 0;
    for (;;) {
        long long s = 0;
        for (int v : x) s += v;
        ((s % 2 + 2) % 2 == 1 ? odd : even) += 1;
        int k = len - 1;
        while (k >= 0 && x[static_cast<std::size_t>(k)] == M) {
            x[static_cast<std::size_t>(k)] = -M;
            --k;
        }
        if (k < 0) break;
        ++x[static_cast<std::size_t>(k)];
    }
    return {odd, even};
}

} // namespace detail

// Exact block cardinalities: with T = (2M+1)^{2^s} and sigma = (-1)^{M 2^s},
// |A_s| = (T - sigma)/2 odd-sum points and |A_s'| = (T + sigma)/2 even-sum
// points. Cross-checked against enumeration whenever that is affordable.
inline std::pair<bigint, bigint> counterexample_block_counts(int M, int s) {
    if (M < 1 || s < 0) throw std::invalid_argument("block counts need M >= 1, s >= 0");
    const unsigned len = 1u << static_cast<unsigned>(s);
    const bigint T = boost::multiprecision::pow(bigint(2 * M + 1), len);
    const int sigma = (M % 2 == 1 && s == 0) ? -1 : 1;
    const bigint odd = (T - sigma) / 2;
    const bigint even = (T + sigma) / 2;
    if (M <= 2 && s <= 2) {
        const auto [odd_ref, even_ref] = detail::parity_counts_enumerated(M, static_cast<int>(len));
        if (odd != odd_ref || even != even_ref)
            throw std::logic_error("block count closed form disagrees with enumeration");
    }
    return {odd, even};
}

struct CounterexampleExact {
    int dim = 0;                    // 2^{r+1} - 1
    std::vector<bigint> odd;        // |A_s|, s = 0..r
    std::vector<bigint> even;       // |A_s'|, s = 0..r
    bigint support = 1;             // product of |A_s| = number of points where f = 1
    double block_sum = 0.0;         // sum over s < r of |A_s'| / |A_s|, exact until cast
    double ratio_lower = 0.0;       // (1/5) * block_sum^{1/p}
};

// Disjoint-support lower bound on ||max_j |K_j * f|||_p / ||f||_p for the
// product construction, in exact integer arithmetic until the final root.
inline CounterexampleExact counterexample_exact_ratio(const CounterexampleSpec& spec) {
    validate(spec);
    CounterexampleExact out;
    out.dim = (1 << (spec.r + 1)) - 1;
    bigrat sum = 0;
    for (int s = 0; s <= spec.r; ++s) {
        const auto [odd, even] = counterexample_block_counts(spec.M, s);
        out.odd.push_back(odd);
        out.even.push_back(even);
        out.support *= odd;
        if (s < spec.r) sum += bigrat(even, odd);
    }
    out.block_sum = sum.convert_to<double>();
    out.ratio_lower = 0.2 * std::pow(out.block_sum, 1.0 / spec.p);
    return out;
}

namespace detail {

// All vectors of [-M, M]^len whose coordinate sum has the requested parity.
inline std::vector<std::vector<std::int64_t>> parity_vectors(int M, int len, bool odd) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> x(static_cast<std::size_t>(len), -M);
    for (;;) {
        long long s = 0;
        for (auto v : x) s += v;
        if (((s % 2 + 2) % 2 == 1) == odd) out.push_back(x);
        int k = len - 1;
        while (k >= 0 && x[static_cast<std::size_t>(k)] == M) {
            x[static_cast<std::size_t>(k)] = -M;
            --k;
        }
        if (k < 0) break;
        ++x[static_cast<std::size_t>(k)];
    }
    return out;
}

} // namespace detail

// Indicator of A_0 x ... x A_r as a sparse function on Z^d, d = 2^{r+1} - 1.
inline SparseFunction counterexample_support(const CounterexampleSpec& spec) {
    validate(spec);
    const int dim = (1 << (spec.r + 1)) - 1;
    std::vector<std::vector<std::vector<std::int64_t>>> blocks;
    for (int s = 0; s <= spec.r; ++s)
        blocks.push_back(detail::parity_vectors(spec.M, 1 << s, true));
    SparseFunction f(dim);
    std::vector<std::size_t> pick(blocks.size(), 0);
    for (;;) {
        Coord x;
        x.reserve(static_cast<std::size_t>(dim));
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            const auto& v = blocks[b][pick[b]];
            x.insert(x.end(), v.begin(), v.end());
        }
        f.set(x, 1.0);
        std::size_t b = blocks.size();
        while (b > 0 && ++pick[b - 1] == blocks[b - 1].size()) pick[--b] = 0;
        if (b == 0) break;
    }
    return f;
}

// Uniform kernel on {0, +-e_1, ..., +-e_j} in dimension dim, mass 1/(2j+1).
inline SparseFunction nested_axis_kernel(int dim, int j) {
    if (j < 1 || j > dim) throw std::invalid_argument("nested_axis_kernel: need 1 <= j <= dim");
    SparseFunction k(dim);
    const double w = 1.0 / (2.0 * j + 1.0);
    k.set(zero_coord(dim), w);
    for (int i = 0; i < j; ++i) {
        Coord e = unit_coord(dim, i);
        k.set(e, w);
        for (auto& c : e) c = -c;
        k.set(e, w);
    }
    return k;
}

struct CounterexampleDirect {
    int dim = 0;
    double ratio = 0.0;        // ||max_j |K_j * f|||_p / ||f||_p, spectral path
    double exact_lower = 0.0;  // disjoint-support bound the ratio must dominate
    double cross_check = 0.0;  // max |spectral - direct sparse convolution|
    bigint support = 0;        // number of points where f = 1
};

// Direct evaluation of the nested-kernel maximal function on a side-8 grid.
// Feasible only for the smallest cases; the exact path covers the rest.
inline CounterexampleDirect counterexample_direct(const CounterexampleSpec& spec) {
    validate(spec);
    if (spec.r > 2 || spec.M != 1)
        throw capacity_error("counterexample_direct handles r <= 2 with M = 1 only");
    const int side = 8;
    const CounterexampleExact exact = counterexample_exact_ratio(spec);
    const SparseFunction f = counterexample_support(spec);
    const GridFunction F = embed(f, side, /*margin=*/1);

    CounterexampleDirect out;
    out.dim = exact.dim;
    out.exact_lower = exact.ratio_lower;
    out.support = exact.support;

    GridFunction hat = F;
    fft_forward(hat);
    GridFunction best(F.dim(), side);
    // partial[i] accumulates 1 + 2 sum_{axis < j} cos(2 pi xi_axis) across j.
    std::vector<double> partial(hat.size(), 1.0);
    for (int j = 1; j <= exact.dim; ++j) {
        GridFunction conv = hat;
        for_each_frequency(conv, [&](std::size_t idx, const std::vector<double>& xi) {
            partial[idx] += 2.0 * std::cos(2.0 * pi * xi[static_cast<std::size_t>(j - 1)]);
            conv[idx] *= partial[idx] / (2.0 * j + 1.0);
        });
        fft_inverse(conv);
        for (std::size_t i = 0; i < best.size(); ++i) {
            const double mag = std::abs(conv[i]);
            if (mag > best[i].real()) best[i] = mag;
        }
    }
    out.ratio = best.lp_norm(spec.p) / F.lp_norm(spec.p);

    // Same maximal function through sparse direct convolution.
    GridFunction direct(F.dim(), side);
    for (int j = 1; j <= exact.dim; ++j) {
        const SparseFunction conv = convolve(f, nested_axis_kernel(exact.dim, j));
        for (const auto& [x, value] : conv) {
            auto& cell = direct[direct.flat(x)];
            if (std::abs(value) > cell.real()) cell = std::abs(value);
        }
    }
    double diff = 0.0;
    for (std::size_t i = 0; i < best.size(); ++i)
        diff = std::max(diff, std::abs(best[i] - direct[i]));
    out.cross_check = diff;
    return out;
}

// ---------------------------------------------------------------------------
// Lattice-to-continuum comparison for cube averages.
//
// For f >= 0 on Z^d, F its box extension (constant f(n) on n + Q_{1/2}), and
// t >= d/2, every x in n + Q_{1/2} satisfies
//     M_t f(n) <= (1 + 6/d)^d * (1/vol) integral of F over the cube x + Q_s,
// s = t + 1 (twice the gauge of the half-cell corner added to t). The right
// side is a closed-form product of per-axis overlap lengths.

struct ComparisonReport {
    int dim = 0;
    double t = 0.0;
    double factor = 0.0;  // (1 + 6/d)^d
    int trials = 0;
    long long points = 0;  // (n, x) pairs checked
    int violations = 0;
    double worst_slack = 0.0;  // min over checks of RHS - LHS
};

namespace detail {

inline double box_overlap(double n_k, double x_k, double s) {
    const double lo = std::max(n_k - 0.5, x_k - s);
    const double hi = std::min(n_k + 0.5, x_k + s);
    return std::max(0.0, hi - lo);
}

// Volume-normalized integral of the box extension of f over x + [-s, s]^d.
inline double continuous_cube_average(const SparseFunction& f, const std::vector<double>& x,
                                      double s) {
    double acc = 0.0;
    for (const auto& [m, value] : f) {
        double w = 1.0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            w *= box_overlap(static_cast<double>(m[k]), x[k], s);
            if (w == 0.0) break;
        }
        acc += value * w;
    }
    return acc / std::pow(2.0 * s, static_cast<double>(x.size()));
}

inline double lattice_cube_average(const SparseFunction& f, const Coord& n, std::int64_t radius) {
    double acc = 0.0;
    for (const auto& [m, value] : f)
        if (linf_norm(sub(n, m)) <= radius) acc += value;
    const double count = std::pow(2.0 * static_cast<double>(radius) + 1.0,
                                  static_cast<double>(n.size()));
    return acc / count;
}

} // namespace detail

// Checks the comparison inequality on random nonnegative sparse functions.
// Evaluation points x run over the center and the 2^d corners of n + Q_{1/2};
// n runs over every lattice point where the left side can be nonzero.
inline ComparisonReport comparison_check(const Body& body, int dim, double t, int trials,
                                         std::uint64_t seed) {
    if (!std::holds_alternative<Cube>(body))
        throw std::invalid_argument("comparison_check: continuous averages are implemented for the cube body");
    if (dim < 1) throw std::invalid_argument("comparison_check: dim must be >= 1");
    const double c = comparison_constant(body, dim);
    if (t < c * dim - 1e-12)
        throw std::invalid_argument("comparison_check: t must be at least c(G) * d");

    ComparisonReport rep;
    rep.dim = dim;
    rep.t = t;
    rep.factor = std::exp(static_cast<double>(dim) * std::log1p(6.0 / dim));
    rep.trials = trials;
    rep.worst_slack = std::numeric_limits<double>::infinity();

    const std::int64_t radius = static_cast<std::int64_t>(std::floor(t + 1e-12));
    const double s = t + 2.0 * c;

    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
        SparseFunction f(dim);
        const int points = static_cast<int>(rng.uniform_int(1, 8));
        for (int i = 0; i < points; ++i) {
            Coord x(static_cast<std::size_t>(dim));
            for (auto& c_k : x) c_k = rng.uniform_int(-3, 3);
            f.set(x, rng.uniform(0.125, 1.0));
        }
        if (f.empty()) f.set(zero_coord(dim), 1.0);

        std::set<Coord> centers;
        for (const auto& [m, value] : f) {
            (void)value;
            Coord n(m);
            std::vector<std::int64_t> off(static_cast<std::size_t>(dim), -radius);
            for (;;) {
                for (int k = 0; k < dim; ++k)
                    n[static_cast<std::size_t>(k)] = m[static_cast<std::size_t>(k)] + off[static_cast<std::size_t>(k)];
                centers.insert(n);
                int k = dim - 1;
                while (k >= 0 && off[static_cast<std::size_t>(k)] == radius) off[static_cast<std::size_t>(k--)] = -radius;
                if (k < 0) break;
                ++off[static_cast<std::size_t>(k)];
            }
        }

        for (const Coord& n : centers) {
            const double lhs = detail::lattice_cube_average(f, n, radius);
            // x = center, then all corners of n + Q_{1/2}.
            for (int corner = -1; corner < (1 << dim); ++corner) {
                std::vector<double> x(static_cast<std::size_t>(dim));
                for (int k = 0; k < dim; ++k) {
                    double delta = 0.0;
                    if (corner >= 0) delta = ((corner >> k) & 1) ? 0.5 : -0.5;
                    x[static_cast<std::size_t>(k)] = static_cast<double>(n[static_cast<std::size_t>(k)]) + delta;
                }
                const double rhs = rep.factor * detail::continuous_cube_average(f, x, s);
                const double slack = rhs - lhs;
                ++rep.points;
                if (slack < rep.worst_slack) rep.worst_slack = slack;
                if (slack < -1e-12) ++rep.violations;
            }
        }
    }
    return rep;
}

// (1 + 6/d)^d increases to e^6; verifies the bound on a dense sweep.
inline bool comparison_factor_bounded(std::int64_t d_max) {
    const double limit = std::exp(6.0) * (1.0 + 1e-12);
    for (std::int64_t d = 1; d <= d_max; ++d) {
        const double factor = std::exp(static_cast<double>(d) * std::log1p(6.0 / static_cast<double>(d)));
        if (!(factor <= limit)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Operator-norm growth scans.

struct GrowthCurve {
    std::vector<double> xs;  // dimensions
    std::vector<double> ys;  // norm-ratio lower bounds
    double fit = 0.0;        // least-squares slope of ys against log(xs)
};

inline void validate(const GrowthCurve& curve) {
    if (curve.xs.empty() || curve.xs.size() != curve.ys.size())
        throw std::invalid_argument("growth curve needs matching nonempty xs/ys");
    for (double y : curve.ys)
        if (!(y > 0.0)) throw std::invalid_argument("growth curve needs ys > 0");
}

namespace detail {

inline double slope_vs_log(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n < 2) return 0.0;
    double mu = 0.0, mv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mu += std::log(xs[i]);
        mv += ys[i];
    }
    mu /= static_cast<double>(n);
    mv /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double du = std::log(xs[i]) - mu;
        num += du * (ys[i] - mv);
        den += du * du;
    }
    return den > 0.0 ? num / den : 0.0;
}

} // namespace detail

// Empirical lower bound on the maximal-operator norm per dimension. Cube and
// q-ball bodies run a seeded random-sparse ensemble on grids; the ellipsoid
// family uses the exact product-construction ratio (its dimensions must be of
// the form 2^{r+1} - 1), which needs no grid and scales to any d.
inline GrowthCurve norm_growth_scan(const Body& body, double p, const std::vector<int>& dims,
                                    int trials, std::uint64_t seed, int side = 16,
                                    const ScaleSet& scales = full_scales({1.0, 2.0, 4.0})) {
    if (dims.empty()) throw std::invalid_argument("norm_growth_scan: dims must be nonempty");
    GrowthCurve curve;
    if (std::holds_alternative<Ellipsoid>(body)) {
        for (int d : dims) {
            int r = 0;
            while ((1 << (r + 2)) - 1 <= d) ++r;
            if ((1 << (r + 1)) - 1 != d || r < 1)
                throw std::invalid_argument("ellipsoid scan needs dims of the form 2^{r+1} - 1, r >= 1");
            CounterexampleSpec spec;
            spec.r = r;
            spec.p = p;
            curve.xs.push_back(static_cast<double>(d));
            curve.ys.push_back(counterexample_exact_ratio(spec).ratio_lower);
        }
    } else {
        validate(scales);
        for (std::size_t di = 0; di < dims.size(); ++di) {
            const int d = dims[di];
            double best = 0.0;
            for (int trial = 0; trial < trials; ++trial) {
                Rng rng = Rng::stream(seed, di * 100003ull + static_cast<std::uint64_t>(trial));
                SparseFunction f(d);
                const int points = static_cast<int>(rng.uniform_int(1, 6));
                for (int i = 0; i < points; ++i) {
                    Coord x(static_cast<std::size_t>(d));
                    for (auto& c_k : x) c_k = rng.uniform_int(-2, 2);
                    f.set(x, rng.uniform(-1.0, 1.0));
                }
                if (f.empty()) f.set(zero_coord(d), 1.0);
                const GridFunction F = embed(f, side);
                const GridFunction m = maximal(F, body, scales);
                best = std::max(best, m.lp_norm(p) / F.lp_norm(p));
            }
            curve.xs.push_back(static_cast<double>(d));
            curve.ys.push_back(best);
        }
    }
    curve.fit = detail::slope_vs_log(curve.xs, curve.ys);
    validate(curve);
    return curve;
}

// ---------------------------------------------------------------------------
// Riesz vector square function growth.
//
// With G the delta at 0 and f = L^{1/2} G, each R_j f equals half the forward
// difference of G along axis j, so the vector square function is exact:
// ||(sum_j |R_j f|^2)^{1/2}||_q = (1/2)(d^{q/2} + d)^{1/q}. The denominator
// ||L^{1/2} G||_q is a grid truncation, refined by doubling the side.

struct RieszGrowthPoint {
    int dim = 0;
    int side = 0;              // finest side reached
    double numerator = 0.0;    // exact closed form
    double denominator = 0.0;  // grid value at the finest side
    double ratio = 0.0;
    double previous_ratio = 0.0;  // at half the side; 0 if only one side ran
    bool stabilized = false;      // relative change below tolerance
    double lower_bound = 0.0;     // B * d^{1/q - 1/2}
    double green_bound = 0.0;     // d^{1/2} (2^q + 2)^{1/(2q)}, must dominate denominator
};

struct RieszGrowthReport {
    double q = 0.0;
    double B = 0.0;  // (2^q + 2)^{-1/(2q)}
    double rel_tol = 0.0;
    std::vector<RieszGrowthPoint> points;
    GrowthCurve curve;
    bool all_stabilized = false;
    bool pass = false;  // every ratio >= its lower bound and every denominator <= its Green bound
};

inline RieszGrowthReport riesz_growth(double q, const std::vector<int>& dims,
                                      double rel_tol = 0.01,
                                      std::size_t max_points = GridFunction::kDefaultMaxPoints) {
    if (!(q > 1.0) || !(q < 2.0)) throw std::domain_error("riesz_growth: q must lie in (1, 2)");
    if (dims.empty()) throw std::invalid_argument("riesz_growth: dims must be nonempty");
    RieszGrowthReport rep;
    rep.q = q;
    rep.B = std::pow(std::pow(2.0, q) + 2.0, -1.0 / (2.0 * q));
    rep.rel_tol = rel_tol;
    rep.all_stabilized = true;
    rep.pass = true;
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument("riesz_growth: dims must be positive");
        RieszGrowthPoint pt;
        pt.dim = d;
        pt.numerator = 0.5 * std::pow(std::pow(static_cast<double>(d), q / 2.0) + d, 1.0 / q);
        pt.lower_bound = rep.B * std::pow(static_cast<double>(d), 1.0 / q - 0.5);
        pt.green_bound = std::sqrt(static_cast<double>(d)) *
                         std::pow(std::pow(2.0, q) + 2.0, 1.0 / (2.0 * q));
        double prev = 0.0;
        for (int side = 4;; side *= 2) {
            if (static_cast<double>(d) * std::log2(static_cast<double>(side)) >
                std::log2(static_cast<double>(max_points)) + 1e-9)
                break;
            GridFunction delta(d, side, max_points);
            delta[0] = 1.0;
            const GridFunction g = half_laplacian(delta, +1);
            const double den = g.lp_norm(q);
            pt.side = side;
            pt.previous_ratio = prev;
            pt.denominator = den;
            pt.ratio = pt.numerator / den;
            if (prev != 0.0 && std::abs(pt.ratio - prev) <= rel_tol * std::abs(pt.ratio)) {
                pt.stabilized = true;
                break;
            }
            prev = pt.ratio;
        }
        if (pt.side == 0)
            throw capacity_error("riesz_growth: no admissible grid side for dim " + std::to_string(d));
        rep.all_stabilized = rep.all_stabilized && pt.stabilized;
        if (!(pt.ratio >= pt.lower_bound - 1e-12)) rep.pass = false;
        if (!(pt.denominator <= pt.green_bound + 1e-9)) rep.pass = false;
        rep.curve.xs.push_back(static_cast<double>(d));
        rep.curve.ys.push_back(pt.ratio);
        rep.points.push_back(std::move(pt));
    }
    rep.curve.fit = detail::slope_vs_log(rep.curve.xs, rep.curve.ys);
    validate(rep.curve);
    return rep;
}

// ---------------------------------------------------------------------------
// Short-variation square function of cube averages.

// SV f(x) = (sum over n in [n_lo, n_hi] of V_2(M_t f(x) : t integer in
// [2^n, 2^{n+1}))^2)^{1/2}. Blocks with a single scale contribute zero.
inline GridFunction short_variation_square_function(const GridFunction& f, int n_lo, int n_hi,
                                                    Padding padding = Padding::strict) {
    if (n_lo < 0 || n_hi < n_lo)
        throw std::invalid_argument("short variation needs 0 <= n_lo <= n_hi");
    GridFunction acc(f.dim(), f.side());
    for (int n = n_lo; n <= n_hi; ++n) {
        const std::int64_t t_lo = std::int64_t{1} << n;
        const std::int64_t t_hi = (std::int64_t{1} << (n + 1)) - 1;
        if (t_lo == t_hi) continue;
        std::vector<GridFunction> avgs;
        std::vector<double> times;
        for (std::int64_t t = t_lo; t <= t_hi; ++t) {
            avgs.push_back(average(f, Cube{}, static_cast<double>(t), padding));
            times.push_back(static_cast<double>(t));
        }
        ScalarPath path;
        path.times = times;
        path.values.resize(times.size());
        for (std::size_t i = 0; i < acc.size(); ++i) {
            for (std::size_t k = 0; k < avgs.size(); ++k) path.values[k] = avgs[k][i];
            const double v = v_r(path, 2.0).value;
            acc[i] += v * v;
        }
    }
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = std::sqrt(acc[i].real());
    return acc;
}

struct ShortVariationReport {
    double p = 0.0;
    int n_lo = 0;
    int n_hi = 0;
    std::vector<int> dims;
    std::vector<double> max_ratio;  // per dim, max over the ensemble of ||SV f||_p / ||f||_p
    double baseline_delta_1d = 0.0;

    bool stable_within(double factor) const {
        const auto [lo, hi] = std::minmax_element(max_ratio.begin(), max_ratio.end());
        return *lo > 0.0 && *hi <= factor * *lo;
    }
};

inline ShortVariationReport short_variation_bound(double p, int n_lo, int n_hi,
                                                  const std::vector<int>& dims, int trials,
                                                  std::uint64_t seed) {
    if (dims.empty()) throw std::invalid_argument("short_variation_bound: dims must be nonempty");
    ShortVariationReport rep;
    rep.p = p;
    rep.n_lo = n_lo;
    rep.n_hi = n_hi;
    rep.dims = dims;

    const std::int64_t t_max = (std::int64_t{1} << (n_hi + 1)) - 1;
    int side = 2;
    while (side / 2 - 1 < 2 + t_max) side *= 2;

    {
        SparseFunction d1 = SparseFunction::delta(1);
        const GridFunction F = embed(d1, side, static_cast<int>(t_max));
        rep.baseline_delta_1d = short_variation_square_function(F, n_lo, n_hi).lp_norm(p);
    }

    for (std::size_t di = 0; di < dims.size(); ++di) {
        const int d = dims[di];
        double best = 0.0;
        for (int trial = 0; trial < trials; ++trial) {
            Rng rng = Rng::stream(seed, di * 100003ull + static_cast<std::uint64_t>(trial));
            SparseFunction f(d);
            const int points = static_cast<int>(rng.uniform_int(1, 5));
            for (int i = 0; i < points; ++i) {
                Coord x(static_cast<std::size_t>(d));
                for (auto& c_k : x) c_k = rng.uniform_int(-2, 2);
                f.set(x, rng.uniform(-1.0, 1.0));
            }
            if (f.empty()) f.set(zero_coord(d), 1.0);
            const GridFunction F = embed(f, side, static_cast<int>(t_max));
            const GridFunction sv = short_variation_square_function(F, n_lo, n_hi);
            best = std::max(best, sv.lp_norm(p) / F.lp_norm(p));
        }
        rep.max_ratio.push_back(best);
    }
    return rep;
}

} // namespace latmax
