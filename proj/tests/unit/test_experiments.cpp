#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "latmax/experiments.hpp"
#include "latmax/report.hpp"

using namespace latmax;

namespace {

// Midpoint-Riemann oracle for the volume-normalized integral of the box
// extension over x + [-s, s]^d.
double continuous_average_riemann(const SparseFunction& f, const std::vector<double>& x, double s,
                                  int cells_per_axis) {
    const int d = static_cast<int>(x.size());
    const double h = 2.0 * s / cells_per_axis;
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    double acc = 0.0;
    for (;;) {
        std::vector<double> u(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k)
            u[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)] - s + h * (idx[static_cast<std::size_t>(k)] + 0.5);
        // box extension value at u
        double val = 0.0;
        for (const auto& [m, w] : f) {
            bool inside = true;
            for (int k = 0; k < d; ++k) {
                const double delta = u[static_cast<std::size_t>(k)] - static_cast<double>(m[static_cast<std::size_t>(k)]);
                if (delta < -0.5 || delta >= 0.5) {
                    inside = false;
                    break;
                }
            }
            if (inside) val += w;
        }
        acc += val;
        int k = d - 1;
        while (k >= 0 && idx[static_cast<std::size_t>(k)] == cells_per_axis - 1) idx[static_cast<std::size_t>(k--)] = 0;
        if (k < 0) break;
        ++idx[static_cast<std::size_t>(k)];
    }
    return acc / std::pow(static_cast<double>(cells_per_axis), d);
}

} // namespace

TEST_CASE("block parity counts match enumeration and hand values") {
    // M=1, single coordinate: odd-sum points are -1 and +1, even-sum is 0.
    auto [odd0, even0] = counterexample_block_counts(1, 0);
    REQUIRE(odd0 == 2);
    REQUIRE(even0 == 1);
    // M=1, pair of coordinates: 9 points, 4 with odd sum.
    auto [odd1, even1] = counterexample_block_counts(1, 1);
    REQUIRE(odd1 == 4);
    REQUIRE(even1 == 5);
    // M=2: 5^4 = 625 points in the s=2 block, even-sum side larger by one.
    auto [odd2, even2] = counterexample_block_counts(2, 2);
    REQUIRE(odd2 == 312);
    REQUIRE(even2 == 313);
    // Counts always sum to the box cardinality.
    auto [o, e] = counterexample_block_counts(3, 3);
    REQUIRE(o + e == boost::multiprecision::pow(bigint(7), 8));
    REQUIRE(e - o == 1);
}

TEST_CASE("block counts stay within a third and the whole of the box") {
    for (int M = 1; M <= 4; ++M) {
        for (int s = 0; s <= 4; ++s) {
            const auto [odd, even] = counterexample_block_counts(M, s);
            const bigint box = boost::multiprecision::pow(bigint(2 * M + 1), 1u << s);
            REQUIRE(3 * odd >= box);
            REQUIRE(odd <= box);
            REQUIRE(3 * even >= box);
            REQUIRE(even <= box);
        }
    }
}

TEST_CASE("exact ratio lower bound: hand values and growth") {
    CounterexampleSpec spec;
    spec.p = 1.5;

    // Even M: every block ratio exceeds 1, so the bound dominates (1/5) r^{1/p}.
    spec.M = 2;
    for (int r = 1; r <= 4; ++r) {
        spec.r = r;
        const auto exact = counterexample_exact_ratio(spec);
        REQUIRE(exact.dim == (1 << (r + 1)) - 1);
        REQUIRE(exact.ratio_lower >= 0.2 * std::pow(static_cast<double>(r), 1.0 / spec.p) - 1e-15);
    }
    spec.r = 4;
    const auto exact_r4 = counterexample_exact_ratio(spec);
    REQUIRE(exact_r4.ratio_lower >= 0.2 * std::pow(4.0, 2.0 / 3.0) - 1e-15);
    REQUIRE(exact_r4.ratio_lower == Catch::Approx(0.2 * std::pow(exact_r4.block_sum, 2.0 / 3.0)));

    // M = 1: the first block contributes 1/2 and the rest more than 1, so the
    // bound dominates 3^{-1/p} 5^{-1} r^{1/p}.
    spec.M = 1;
    for (int r = 1; r <= 6; ++r) {
        spec.r = r;
        const auto exact = counterexample_exact_ratio(spec);
        REQUIRE(exact.block_sum >= r - 0.5);
        REQUIRE(exact.ratio_lower >=
                0.2 * std::pow(static_cast<double>(r) / 3.0, 1.0 / spec.p) - 1e-15);
    }

    // r=1, M=1 exactly: block sum 1/2.
    spec.r = 1;
    const auto exact_r1 = counterexample_exact_ratio(spec);
    REQUIRE(exact_r1.block_sum == Catch::Approx(0.5));
    REQUIRE(exact_r1.support == 2 * 4);

    SECTION("invalid specs throw") {
        CounterexampleSpec bad;
        bad.r = 0;
        REQUIRE_THROWS_AS(counterexample_exact_ratio(bad), std::invalid_argument);
        bad = CounterexampleSpec{};
        bad.M = 0;
        REQUIRE_THROWS_AS(counterexample_exact_ratio(bad), std::invalid_argument);
        bad = CounterexampleSpec{};
        bad.p = 1.0;
        REQUIRE_THROWS_AS(counterexample_exact_ratio(bad), std::invalid_argument);
    }
}

TEST_CASE("product support enumerates the blocks") {
    CounterexampleSpec spec;
    spec.r = 1;
    const SparseFunction f = counterexample_support(spec);
    REQUIRE(f.dim() == 3);
    REQUIRE(f.size() == 8);  // |A_0| * |A_1| = 2 * 4
    for (const auto& [x, v] : f) {
        REQUIRE(v == 1.0);
        REQUIRE((x[0] % 2 + 2) % 2 == 1);            // first block sum odd
        REQUIRE(((x[1] + x[2]) % 2 + 2) % 2 == 1);   // second block sum odd
        REQUIRE(linf_norm(x) <= 1);
    }
}

TEST_CASE("nested axis kernels") {
    const int d = 4;
    SECTION("mass and support") {
        for (int j = 1; j <= d; ++j) {
            const SparseFunction k = nested_axis_kernel(d, j);
            REQUIRE(k.size() == static_cast<std::size_t>(2 * j + 1));
            REQUIRE(k.mass() == Catch::Approx(1.0).margin(1e-15));
        }
        REQUIRE_THROWS_AS(nested_axis_kernel(d, 0), std::invalid_argument);
        REQUIRE_THROWS_AS(nested_axis_kernel(d, d + 1), std::invalid_argument);
    }
    SECTION("full kernel on a delta gives 1/(2d+1) at the origin") {
        const SparseFunction conv = convolve(SparseFunction::delta(d), nested_axis_kernel(d, d));
        REQUIRE(conv.at(zero_coord(d)) == Catch::Approx(1.0 / (2.0 * d + 1.0)).margin(1e-16));
        double max = 0.0;
        for (const auto& [x, v] : conv) max = std::max(max, std::abs(v));
        REQUIRE(max == Catch::Approx(1.0 / (2.0 * d + 1.0)).margin(1e-16));
    }
}

TEST_CASE("direct maximal ratio dominates the exact lower bound") {
    CounterexampleSpec spec;
    spec.r = 1;
    spec.M = 1;
    spec.p = 2.0;
    const CounterexampleDirect direct = counterexample_direct(spec);
    REQUIRE(direct.dim == 3);
    REQUIRE(direct.cross_check <= 1e-12);
    REQUIRE(direct.ratio >= direct.exact_lower - 1e-10);
    REQUIRE(direct.support == 8);

    SECTION("infeasible sizes are rejected") {
        CounterexampleSpec big;
        big.r = 3;
        REQUIRE_THROWS_AS(counterexample_direct(big), capacity_error);
        CounterexampleSpec wide;
        wide.M = 2;
        REQUIRE_THROWS_AS(counterexample_direct(wide), capacity_error);
    }
}

TEST_CASE("continuous cube average closed form") {
    SECTION("one dimension, exact overlap") {
        SparseFunction f(1);
        f.set({0}, 1.0);
        // Cell [-0.5, 0.5] sits inside [x-s, x+s] = [-0.9, 1.5] entirely.
        const double avg = detail::continuous_cube_average(f, {0.3}, 1.2);
        REQUIRE(avg == Catch::Approx(1.0 / 2.4).margin(1e-15));
    }
    SECTION("against a Riemann-sum oracle in two dimensions") {
        SparseFunction f(2);
        f.set({0, 0}, 1.0);
        f.set({2, 1}, 0.7);
        f.set({-1, 1}, 0.4);
        const std::vector<double> x = {0.3, -0.2};
        const double s = 1.6;
        const double closed = detail::continuous_cube_average(f, x, s);
        const double oracle = continuous_average_riemann(f, x, s, 800);
        REQUIRE(closed == Catch::Approx(oracle).margin(5e-3));
    }
}

TEST_CASE("comparison inequality for cube averages") {
    SECTION("delta in two dimensions at t = d/2 has strict slack") {
        SparseFunction f(2);
        f.set({0, 0}, 1.0);
        const double t = 1.0;
        const double lhs = detail::lattice_cube_average(f, {0, 0}, 1);
        REQUIRE(lhs == Catch::Approx(1.0 / 9.0).margin(1e-15));
        const double factor = std::exp(2.0 * std::log1p(3.0));
        const double rhs = factor * detail::continuous_cube_average(f, {0.0, 0.0}, 2.0);
        REQUIRE(rhs == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(rhs - lhs > 0.5);
    }
    SECTION("random nonnegative ensemble sees no violations") {
        for (int d = 1; d <= 3; ++d) {
            const double c = comparison_constant(Cube{}, d);
            for (double mult : {1.0, 2.0}) {
                const ComparisonReport rep = comparison_check(Cube{}, d, mult * c * d, 20, 99);
                INFO("d=" << d << " t=" << rep.t);
                REQUIRE(rep.violations == 0);
                REQUIRE(rep.worst_slack >= -1e-12);
                REQUIRE(rep.points > 0);
            }
        }
    }
    SECTION("preconditions") {
        REQUIRE_THROWS_AS(comparison_check(LqBall{2.0}, 2, 2.0, 1, 1), std::invalid_argument);
        REQUIRE_THROWS_AS(comparison_check(Cube{}, 2, 0.5, 1, 1), std::invalid_argument);
    }
    SECTION("growth factor stays below its limit") {
        REQUIRE(comparison_factor_bounded(10000));
    }
}

TEST_CASE("norm growth scan") {
    SECTION("cube ensemble is deterministic and flat-ish at small scale") {
        const std::vector<int> dims = {1, 2};
        const GrowthCurve a = norm_growth_scan(Cube{}, 2.0, dims, 5, 31);
        const GrowthCurve b = norm_growth_scan(Cube{}, 2.0, dims, 5, 31);
        REQUIRE(a.ys == b.ys);
        REQUIRE(a.xs == std::vector<double>{1.0, 2.0});
        for (double y : a.ys) {
            REQUIRE(y > 0.0);
            REQUIRE(y <= 1.0 + 1e-12);  // averages contract every l^p norm
        }
    }
    SECTION("ellipsoid family uses exact ratios and grows") {
        const std::vector<int> dims = {3, 7, 15, 31};
        const double p = 1.5;
        const GrowthCurve curve = norm_growth_scan(Ellipsoid{{1.0}}, p, dims, 0, 0);
        REQUIRE(curve.ys.size() == 4);
        for (std::size_t i = 1; i < curve.ys.size(); ++i) REQUIRE(curve.ys[i] > curve.ys[i - 1]);
        for (std::size_t i = 0; i < curve.ys.size(); ++i) {
            const double floor_i =
                0.2 * std::pow(std::log(curve.xs[i]) / 3.0, 1.0 / p);
            REQUIRE(curve.ys[i] >= floor_i - 1e-15);
        }
        REQUIRE(curve.fit > 0.0);
    }
    SECTION("ellipsoid dimensions must match the construction") {
        REQUIRE_THROWS_AS(norm_growth_scan(Ellipsoid{{1.0}}, 2.0, {4}, 0, 0),
                          std::invalid_argument);
    }
    SECTION("delta lower bound: ratio at least the best kernel norm") {
        const SparseFunction d1 = SparseFunction::delta(2);
        const GridFunction F = embed(d1, 16);
        const ScaleSet scales = full_scales({1.0, 2.0, 4.0});
        const GridFunction m = maximal(F, Cube{}, scales);
        double best_kernel = 0.0;
        for (double t : scales.scales)
            best_kernel = std::max(best_kernel, kernel(Cube{}, t, 2).lp_norm(2.0));
        REQUIRE(m.lp_norm(2.0) >= best_kernel - 1e-12);
    }
}

TEST_CASE("riesz vector square function growth") {
    SECTION("q outside (1,2) is rejected") {
        REQUIRE_THROWS_AS(riesz_growth(1.0, {1}), std::domain_error);
        REQUIRE_THROWS_AS(riesz_growth(2.0, {1}), std::domain_error);
    }
    SECTION("numerator closed form matches a grid construction") {
        const double q = 1.5;
        const int d = 3;
        GridFunction delta(d, 4);
        delta[0] = 1.0;
        GridFunction sq(d, 4);
        for (int j = 0; j < d; ++j) {
            const GridFunction g = forward_difference(delta, j);
            for (std::size_t i = 0; i < sq.size(); ++i) {
                const double half = 0.5 * std::abs(g[i]);
                sq[i] += half * half;
            }
        }
        for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = std::sqrt(sq[i].real());
        const double closed = 0.5 * std::pow(std::pow(3.0, q / 2.0) + 3.0, 1.0 / q);
        REQUIRE(sq.lp_norm(q) == Catch::Approx(closed).margin(1e-14));
    }
    SECTION("splitting identity: riesz of the half laplacian is half a difference") {
        GridFunction delta(3, 8);
        delta[0] = 1.0;
        const GridFunction lhalf = half_laplacian(delta, +1);
        for (int j = 0; j < 3; ++j) {
            const GridFunction lhs = riesz(lhalf, j);
            const GridFunction rhs = forward_difference(delta, j);
            double diff = 0.0;
            for (std::size_t i = 0; i < lhs.size(); ++i)
                diff = std::max(diff, std::abs(lhs[i] - 0.5 * rhs[i]));
            REQUIRE(diff <= 1e-12);
        }
    }
    SECTION("low dimensions stabilize and dominate the bound") {
        const RieszGrowthReport rep = riesz_growth(1.5, {1, 2});
        REQUIRE(rep.B == Catch::Approx(std::pow(std::pow(2.0, 1.5) + 2.0, -1.0 / 3.0)));
        REQUIRE(rep.all_stabilized);
        REQUIRE(rep.pass);
        for (const auto& pt : rep.points) {
            REQUIRE(pt.ratio >= pt.lower_bound - 1e-12);
            REQUIRE(pt.denominator <= pt.green_bound + 1e-9);
            REQUIRE(pt.previous_ratio > 0.0);
        }
    }
}

TEST_CASE("short variation square function") {
    SECTION("constant input gives zero") {
        GridFunction f(2, 16);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = 0.7;
        const GridFunction sv = short_variation_square_function(f, 0, 2, Padding::wrap);
        for (std::size_t i = 0; i < sv.size(); ++i) REQUIRE(std::abs(sv[i]) <= 1e-13);
    }
    SECTION("single-scale blocks contribute nothing") {
        SparseFunction d1 = SparseFunction::delta(1);
        const GridFunction F = embed(d1, 8, 1);
        const GridFunction sv = short_variation_square_function(F, 0, 0);
        for (std::size_t i = 0; i < sv.size(); ++i) REQUIRE(std::abs(sv[i]) == 0.0);
    }
    SECTION("ensemble ratios are finite, positive, and stable across dimension") {
        const ShortVariationReport rep = short_variation_bound(2.0, 0, 2, {1, 2}, 4, 11);
        // Deterministic point-mass baseline, pinned.
        REQUIRE(rep.baseline_delta_1d == Catch::Approx(0.33698449092648275).margin(1e-12));
        for (double r : rep.max_ratio) {
            REQUIRE(r > 0.0);
            REQUIRE(r < 2.0);  // variation of averages of a normalized input stays modest
        }
        // The ratios shrink slightly as d grows; what matters is the absence of growth.
        REQUIRE(rep.stable_within(2.5));
    }
}

TEST_CASE("csv serialization is stable") {
    std::vector<CsvRow> rows;
    rows.push_back({2, "ratio", 0.5, 1.0, true});
    rows.push_back({3, "slack", -0.25, 0.0, false});
    const std::string expect =
        "d,param,value,bound,pass\n"
        "2,ratio,0.5,1,1\n"
        "3,slack,-0.25,0,0\n";
    REQUIRE(to_csv(rows) == expect);
    // %.17g round-trips: parsing the printed value recovers the double.
    REQUIRE(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    REQUIRE(std::stod(format_double(-1.25e-7)) == -1.25e-7);
}

TEST_CASE("json summaries carry the envelope fields") {
    const json j = make_summary("demo", 42, json{{"d", 2}}, json{{"ratio", 0.5}}, true);
    REQUIRE(j["command"] == "demo");
    REQUIRE(j["seed"] == 42);
    REQUIRE(j["params"]["d"] == 2);
    REQUIRE(j["results"]["ratio"] == 0.5);
    REQUIRE(j["pass"] == true);
}
