#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "latmax/operators.hpp"
#include "latmax/rng.hpp"

using namespace latmax;

namespace {

GridFunction random_real_grid(int dim, int side, Rng& rng) {
    GridFunction f(dim, side);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = rng.uniform(-1.0, 1.0);
    return f;
}

GridFunction subtract_mean(GridFunction f) {
    const cplx m = f.mean();
    for (std::size_t i = 0; i < f.size(); ++i) f[i] -= m;
    return f;
}

double max_abs_diff(const GridFunction& f, const GridFunction& g) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - g[i]));
    return m;
}

GridFunction translate(const GridFunction& f, const Coord& v) {
    GridFunction out(f.dim(), f.side());
    for (std::size_t i = 0; i < f.size(); ++i) out[out.flat(add(f.coord_of(i), v))] = f[i];
    return out;
}

} // namespace

TEST_CASE("scale sets validate") {
    REQUIRE_THROWS_AS(full_scales({}), std::invalid_argument);
    REQUIRE_THROWS_AS(full_scales({1.0, 1.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(full_scales({-1.0, 2.0}), std::invalid_argument);
    const ScaleSet lac = lacunary_scales(2.0, -3, 5);
    REQUIRE(lac.scales.size() == 9);
    REQUIRE(lac.scales.front() == Catch::Approx(0.125));
    REQUIRE(lac.scales.back() == Catch::Approx(32.0));
    // ratio outside [a, a^2] rejected
    ScaleSet bad = lac;
    bad.scales.push_back(bad.scales.back() * 8.0);
    REQUIRE_THROWS_AS(validate(bad), std::invalid_argument);
    const ScaleSet block = dyadic_block_scales(2);
    REQUIRE(block.scales.front() == 4.0);
    REQUIRE(block.scales.back() == 8.0);
    REQUIRE(block.scales.size() == 5);
}

TEST_CASE("average of a delta is the kernel") {
    GridFunction f(1, 16);
    f[f.flat({0})] = 1.0;
    const GridFunction a = average(f, Cube{}, 1.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Coord x = a.coord_of(i);
        const double expect = linf_norm(x) <= 1 ? 1.0 / 3.0 : 0.0;
        REQUIRE(std::abs(a[i] - expect) < 1e-14);
    }
}

TEST_CASE("averages preserve constants") {
    GridFunction f(2, 8);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = 1.0;
    const GridFunction a = average(f, LqBall{1.0}, 2.0, Padding::wrap);
    for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(std::abs(a[i] - 1.0) < 1e-13);
}

TEST_CASE("strict padding rejects aliasing") {
    GridFunction f(1, 16);
    f[f.flat({6})] = 1.0; // support radius 6, kernel radius 2, limit 16/2 - 1 = 7
    REQUIRE_THROWS_AS(average(f, Cube{}, 2.0), padding_error);
    REQUIRE_NOTHROW(average(f, Cube{}, 1.0));
    REQUIRE_NOTHROW(average(f, Cube{}, 2.0, Padding::wrap));
}

TEST_CASE("direct and spectral cube averages agree") {
    Rng rng(42);
    const GridFunction f = random_real_grid(2, 16, rng);
    const GridFunction direct = average(f, Cube{}, 2.0, Padding::wrap);
    const GridFunction spectral = average_spectral(f, 2);
    REQUIRE(max_abs_diff(direct, spectral) < 1e-10);
}

TEST_CASE("cube average only sees the integer part of t") {
    Rng rng(43);
    const GridFunction f = random_real_grid(1, 32, rng);
    const GridFunction a = average(f, Cube{}, 2.0, Padding::wrap);
    const GridFunction b = average(f, Cube{}, 2.9, Padding::wrap);
    REQUIRE(max_abs_diff(a, b) == 0.0);
}

TEST_CASE("averaging commutes with translation") {
    Rng rng(44);
    const GridFunction f = random_real_grid(2, 8, rng);
    const Coord v{3, -2};
    const GridFunction a = translate(average(f, Cube{}, 1.0, Padding::wrap), v);
    const GridFunction b = average(translate(f, v), Cube{}, 1.0, Padding::wrap);
    REQUIRE(max_abs_diff(a, b) < 1e-12);
}

TEST_CASE("maximal function") {
    GridFunction f(1, 16);
    f[f.flat({0})] = 1.0;
    const GridFunction m = maximal(f, Cube{}, full_scales({1.0, 2.0, 4.0}));
    REQUIRE(std::abs(m[m.flat({0})] - 1.0 / 3.0) < 1e-14);
    // maximal dominates each single average pointwise
    for (double t : {1.0, 2.0, 4.0}) {
        const GridFunction a = average(f, Cube{}, t);
        for (std::size_t i = 0; i < m.size(); ++i)
            REQUIRE(m[i].real() >= std::abs(a[i]) - 1e-14);
    }
    // cube scales with equal floor deduplicate to one application
    const GridFunction m2 = maximal(f, Cube{}, full_scales({1.0, 1.5, 1.9}));
    const GridFunction a1 = average(f, Cube{}, 1.0);
    for (std::size_t i = 0; i < m2.size(); ++i)
        REQUIRE(std::abs(m2[i].real() - std::abs(a1[i])) < 1e-14);
}

TEST_CASE("laplacian stencil") {
    GridFunction f(1, 8);
    f[f.flat({0})] = 1.0;
    const GridFunction L = laplacian(f);
    REQUIRE(std::abs(L[L.flat({0})] - 0.5) < 1e-15);
    REQUIRE(std::abs(L[L.flat({1})] + 0.25) < 1e-15);
    REQUIRE(std::abs(L[L.flat({-1})] + 0.25) < 1e-15);
    REQUIRE(std::abs(L[L.flat({2})]) < 1e-15);

    GridFunction c(2, 4);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = 3.25;
    const GridFunction Lc = laplacian(c);
    for (std::size_t i = 0; i < Lc.size(); ++i) REQUIRE(std::abs(Lc[i]) == 0.0);
}

TEST_CASE("laplacian stencil equals spectral multiply") {
    Rng rng(7);
    for (auto [d, side] : {std::pair{1, 64}, {2, 16}, {3, 8}}) {
        const GridFunction f = random_real_grid(d, side, rng);
        REQUIRE(max_abs_diff(laplacian(f), laplacian_spectral(f)) < 1e-12);
    }
}

TEST_CASE("poisson semigroup properties") {
    Rng rng(8);
    const GridFunction f = random_real_grid(3, 8, rng);
    REQUIRE(max_abs_diff(poisson(f, 0.0), f) == 0.0);

    GridFunction c(2, 8);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = 2.5;
    REQUIRE(max_abs_diff(poisson(c, 3.7), c) < 1e-13);

    // semigroup law
    const GridFunction two_step = poisson(poisson(f, 0.7), 1.6);
    const GridFunction one_step = poisson(f, 2.3);
    REQUIRE(max_abs_diff(two_step, one_step) < 1e-10);

    // kernel positivity (subordination to the positive heat kernel)
    for (double t : {0.1, 1.0, 4.0}) {
        const GridFunction k = poisson_kernel(3, 8, t);
        double kmin = 1.0, mass = 0.0;
        for (std::size_t i = 0; i < k.size(); ++i) {
            kmin = std::min(kmin, k[i].real());
            mass += k[i].real();
        }
        REQUIRE(kmin >= -1e-12);
        REQUIRE(mass == Catch::Approx(1.0).margin(1e-12));
    }

    // contraction on l^p
    for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
        REQUIRE(poisson(f, 1.3).lp_norm(p) <= f.lp_norm(p) * (1.0 + 1e-12));
    }

    // self-adjointness
    const GridFunction g = random_real_grid(3, 8, rng);
    const cplx lhs = inner(poisson(f, 0.9), g);
    const cplx rhs = inner(f, poisson(g, 0.9));
    REQUIRE(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("littlewood-paley differences") {
    const ScaleSet lac = lacunary_scales(2.0, -8, 8);
    GridFunction c(2, 8);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = 1.0;
    const GridFunction s0 = littlewood_paley(c, 0, lac);
    for (std::size_t i = 0; i < s0.size(); ++i) REQUIRE(std::abs(s0[i]) < 1e-13);

    REQUIRE_THROWS_AS(littlewood_paley(c, 0, full_scales({1.0, 2.0})), std::invalid_argument);

    // partial sums telescope
    Rng rng(9);
    const GridFunction f = random_real_grid(2, 8, rng);
    GridFunction sum(2, 8);
    for (int n = -3; n <= 4; ++n) {
        const GridFunction s = littlewood_paley(f, n, lac);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += s[i];
    }
    GridFunction expect = poisson(f, std::pow(2.0, 4));
    const GridFunction low = poisson(f, std::pow(2.0, -4));
    for (std::size_t i = 0; i < expect.size(); ++i) expect[i] -= low[i];
    REQUIRE(max_abs_diff(sum, expect) < 1e-12);

    // full resolution limit: sum over n of S_n f converges to -f for mean-zero f
    const GridFunction h = subtract_mean(random_real_grid(2, 8, rng));
    GridFunction total(2, 8);
    for (int n = -39; n <= 40; ++n) {
        const GridFunction s = littlewood_paley(h, n, lac);
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += s[i];
    }
    double err2 = 0.0;
    for (std::size_t i = 0; i < total.size(); ++i) err2 += std::norm(total[i] + h[i]);
    REQUIRE(std::sqrt(err2) < 1e-6);
}

TEST_CASE("square function on a single mode is half the magnitude") {
    GridFunction f(2, 16);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Coord x = f.coord_of(i);
        const double phase = 2.0 * pi * (static_cast<double>(x[0]) * 3.0 / 16.0);
        f[i] = cplx(std::cos(phase), std::sin(phase));
    }
    const GridFunction g = square_function(f);
    for (std::size_t i = 0; i < g.size(); ++i)
        REQUIRE(g[i].real() == Catch::Approx(0.5).margin(1e-6));

    GridFunction c(2, 8);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = 4.0;
    const GridFunction gc = square_function(c);
    for (std::size_t i = 0; i < gc.size(); ++i) REQUIRE(std::abs(gc[i]) < 1e-9);
}

TEST_CASE("square function halves the l2 norm of mean-zero input") {
    Rng rng(10);
    for (int trial = 0; trial < 5; ++trial) {
        const GridFunction f = subtract_mean(random_real_grid(2, 16, rng));
        const GridFunction g = square_function(f);
        REQUIRE(g.lp_norm(2.0) == Catch::Approx(0.5 * f.lp_norm(2.0)).margin(1e-6));
    }
}

TEST_CASE("square function tail guard") {
    GridFunction f(1, 16);
    f[1] = 1.0;
    QuadratureSpec quad;
    quad.t_max = 1.0; // tail bound e^{-2 s} (s/2 + 1/4) is far above 1e-8
    REQUIRE_THROWS_AS(square_function(f, quad), convergence_error);
}

TEST_CASE("riesz transforms") {
    Rng rng(11);
    GridFunction biased(2, 8);
    for (std::size_t i = 0; i < biased.size(); ++i) biased[i] = 1.0 + rng.uniform();
    REQUIRE_THROWS_AS(riesz(biased, 0), singularity_error);
    REQUIRE_THROWS_AS(riesz(subtract_mean(biased), 5), std::invalid_argument);

    // d = 1: |r_1| = 1, so R_1 is an l2 isometry on mean-zero input
    const GridFunction f1 = subtract_mean(random_real_grid(1, 32, rng));
    REQUIRE(riesz(f1, 0).lp_norm(2.0) == Catch::Approx(f1.lp_norm(2.0)).epsilon(1e-12));

    // partition of unity across axes
    const GridFunction f = subtract_mean(random_real_grid(3, 8, rng));
    double sum = 0.0;
    double max_imag = 0.0;
    for (int j = 0; j < 3; ++j) {
        const GridFunction r = riesz(f, j);
        const double n = r.lp_norm(2.0);
        sum += n * n;
        for (std::size_t i = 0; i < r.size(); ++i)
            max_imag = std::max(max_imag, std::abs(r[i].imag()));
    }
    const double n2 = f.lp_norm(2.0);
    REQUIRE(sum == Catch::Approx(n2 * n2).margin(1e-10));
    REQUIRE(max_imag < 1e-12); // real input, hermitian symbol
}

TEST_CASE("half laplacians compose") {
    Rng rng(12);
    const GridFunction f = subtract_mean(random_real_grid(2, 16, rng));
    const GridFunction LfromRoots = half_laplacian(half_laplacian(f, 1), 1);
    REQUIRE(max_abs_diff(LfromRoots, laplacian(f)) < 1e-10);
    const GridFunction round_trip = half_laplacian(half_laplacian(f, 1), -1);
    REQUIRE(max_abs_diff(round_trip, f) < 1e-10);
    REQUIRE_THROWS_AS(half_laplacian(f, 2), std::invalid_argument);

    // Parseval: ||L^{1/2} delta||_2^2 = mean over grid modes of sin^2(pi xi) = 1/2 in d = 1
    GridFunction delta(1, 64);
    delta[0] = 1.0;
    const GridFunction half = half_laplacian(delta, 1);
    REQUIRE(half.lp_norm(2.0) == Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("subordination identity") {
    REQUIRE(subordination_gap(0.0, 3.0) < 1e-10);
    REQUIRE(subordination_gap(2.0, 0.0) < 1e-10);
    Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const double t = rng.uniform(0.1, 5.0);
        const double s = rng.uniform(0.1, 5.0);
        REQUIRE(subordination_gap(t, s) < 1e-8);
    }
}
