#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "latmax/variation.hpp"

using namespace latmax;

TEST_CASE("v_r hand values") {
    const ScalarPath flat = integer_path({2.5, 2.5, 2.5});
    const VariationResult zero = v_r(flat, 2.0);
    REQUIRE(zero.value == 0.0);
    REQUIRE(zero.argmax_subsequence.size() == 1);

    const ScalarPath zigzag = integer_path({0.0, 1.0, 0.0, 1.0});
    REQUIRE(v_r(zigzag, 1.0).value == Catch::Approx(3.0).margin(1e-14));
    REQUIRE(v_r(zigzag, 2.0).value == Catch::Approx(std::sqrt(3.0)).margin(1e-14));
    REQUIRE(v_r_bruteforce(zigzag, 2.0) == Catch::Approx(std::sqrt(3.0)).margin(1e-14));
    REQUIRE(v_inf(zigzag) == 1.0);
}

TEST_CASE("v_r input validation") {
    const ScalarPath p = integer_path({0.0, 1.0});
    REQUIRE_THROWS_AS(v_r(p, 0.9), std::domain_error);
    REQUIRE_THROWS_AS(v_r(ScalarPath{}, 2.0), std::invalid_argument);
    ScalarPath bad = p;
    bad.times[1] = bad.times[0];
    REQUIRE_THROWS_AS(v_r(bad, 2.0), std::invalid_argument);
    bad.values.pop_back();
    REQUIRE_THROWS_AS(v_r(bad, 2.0), std::invalid_argument);
}

TEST_CASE("brute force oracle") {
    // monotone path, r = 1: telescoping gives last - first
    const ScalarPath mono = integer_path({-1.0, 0.25, 0.5, 2.0, 3.5});
    REQUIRE(v_r_bruteforce(mono, 1.0) == Catch::Approx(4.5).margin(1e-14));
    REQUIRE(v_r(mono, 1.0).value == Catch::Approx(4.5).margin(1e-14));

    ScalarPath big;
    for (int i = 0; i < 19; ++i) {
        big.times.push_back(i);
        big.values.push_back(i % 2);
    }
    REQUIRE_THROWS_AS(v_r_bruteforce(big, 2.0), capacity_error);
}

TEST_CASE("dp equals brute force on random paths") {
    const DpOracleReport rep = check_dp_against_bruteforce(500, 2024);
    REQUIRE(rep.trials == 500);
    REQUIRE(rep.max_abs_diff <= 1e-12);
    REQUIRE(rep.invariant_violations == 0);
    REQUIRE(rep.pass());

    // independent spot check, not through the helper
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        ScalarPath p;
        const int n = static_cast<int>(rng.uniform_int(2, 8));
        for (int i = 0; i < n; ++i) {
            p.times.push_back(i);
            p.values.emplace_back(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        }
        const double r = rng.uniform(1.0, 3.0);
        const VariationResult res = v_r(p, r);
        REQUIRE(res.value == Catch::Approx(v_r_bruteforce(p, r)).margin(1e-12));
        const double sum = increment_sum(p, res.argmax_subsequence, r);
        REQUIRE(sum == Catch::Approx(std::pow(res.value, r)).margin(1e-12 * (1.0 + sum)));
        REQUIRE(v_inf(p) <= res.value + 1e-12);
    }
}

TEST_CASE("calculus properties hold on random paths") {
    const auto reports = check_variation_calculus(1000, 77);
    REQUIRE(reports.size() == 5);
    for (const auto& rep : reports) {
        INFO(rep.property);
        REQUIRE(rep.trials == 1000);
        REQUIRE(rep.violations == 0);
        REQUIRE(rep.pass());
    }
}

TEST_CASE("long/short split") {
    Rng rng(31);

    // dyadic-times-only path: everything is long variation
    ScalarPath dyadic;
    for (double t : {1.0, 2.0, 4.0, 8.0, 16.0}) {
        dyadic.times.push_back(t);
        dyadic.values.push_back(rng.uniform(-1.0, 1.0));
    }
    const LongShortSplit only_long = long_short_split(dyadic, 2.0);
    REQUIRE(only_long.short_variation == 0.0);
    REQUIRE(only_long.long_variation == only_long.full);
    REQUIRE(only_long.bound_ok);

    // path inside one block [8, 16): everything is short variation
    ScalarPath inside;
    for (double t : {9.0, 10.5, 12.0, 15.0}) {
        inside.times.push_back(t);
        inside.values.push_back(rng.uniform(-1.0, 1.0));
    }
    const LongShortSplit only_short = long_short_split(inside, 2.0);
    REQUIRE(only_short.long_variation == 0.0);
    REQUIRE(only_short.short_variation ==
            Catch::Approx(only_short.full).epsilon(1e-15)); // pow round trip

    // integer paths contain every block boundary, so the reference constant holds
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> values;
        const int n = static_cast<int>(rng.uniform_int(2, 40));
        for (int i = 0; i < n; ++i) values.push_back(rng.uniform(-1.0, 1.0));
        const LongShortSplit split = long_short_split(integer_path(values), rng.uniform(1.0, 3.0));
        INFO("empirical constant " << split.empirical_constant);
        REQUIRE(split.bound_ok);
    }

    ScalarPath nonpositive = integer_path({0.0, 1.0}, 0.0);
    REQUIRE_THROWS_AS(long_short_split(nonpositive, 2.0), std::invalid_argument);
}

TEST_CASE("dyadic block bound hand example") {
    const ScalarPath flat = integer_path({1.0, 1.0, 1.0}, 2.0);
    REQUIRE(rademacher_menshov_rhs(flat, 2.0) == 0.0);

    // n = 1 block on [2, 4], values (0, 1, 1): RHS = 2 sqrt 2, V_2 = 1
    const ScalarPath block = integer_path({0.0, 1.0, 1.0}, 2.0);
    REQUIRE(rademacher_menshov_rhs(block, 2.0) ==
            Catch::Approx(2.0 * std::sqrt(2.0)).margin(1e-14));
    REQUIRE(v_r(block, 2.0).value == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("dyadic block bound structure checks") {
    REQUIRE_THROWS_AS(rademacher_menshov_rhs(integer_path({0.0, 1.0, 2.0}, 3.0), 2.0),
                      std::invalid_argument); // starts at 3, not a power of two
    REQUIRE_THROWS_AS(rademacher_menshov_rhs(integer_path({0.0, 1.0, 2.0, 3.0}, 2.0), 2.0),
                      std::invalid_argument); // length 4 is not 2^n + 1
    ScalarPath skewed = integer_path({0.0, 1.0, 2.0}, 2.0);
    skewed.times[1] = 2.5;
    REQUIRE_THROWS_AS(rademacher_menshov_rhs(skewed, 2.0), std::invalid_argument);
}

TEST_CASE("dyadic block bound on random blocks") {
    const PropertyRunReport rep = check_rademacher_menshov(1000, 404);
    REQUIRE(rep.trials == 1000);
    REQUIRE(rep.violations == 0);
    REQUIRE(rep.worst_slack >= -1e-12);
}
