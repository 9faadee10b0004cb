#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "latmax/ergodic.hpp"
#include "latmax/operators.hpp"
#include "latmax/rng.hpp"

using namespace latmax;

namespace {

CyclicSystem random_system(int dim, std::int64_t modulus, Rng& rng) {
    CyclicSystem f(dim, modulus);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = rng.uniform(-1.0, 1.0);
    return f;
}

} // namespace

TEST_CASE("cyclic system shape") {
    REQUIRE_THROWS_AS(CyclicSystem(0, 8), std::invalid_argument);
    REQUIRE_THROWS_AS(CyclicSystem(2, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(CyclicSystem(2, 64, 1000), capacity_error);

    CyclicSystem f(2, 6);
    REQUIRE(f.size() == 36);
    REQUIRE(f.flat({-1, 0}) == f.flat({5, 0}));
    REQUIRE(f.flat({7, -6}) == f.flat({1, 0}));
    for (std::size_t i = 0; i < f.size(); ++i) REQUIRE(f.flat(f.coord_of(i)) == i);
}

TEST_CASE("shifts commute and wrap") {
    Rng rng(1);
    const CyclicSystem f = random_system(2, 8, rng);
    const CyclicSystem ab = shift(shift(f, 0, 3), 1, -2);
    const CyclicSystem ba = shift(shift(f, 1, -2), 0, 3);
    for (std::size_t i = 0; i < f.size(); ++i) REQUIRE(ab[i] == ba[i]);

    const CyclicSystem full_turn = shift(f, 0, 8);
    for (std::size_t i = 0; i < f.size(); ++i) REQUIRE(full_turn[i] == f[i]);

    REQUIRE_THROWS_AS(shift(f, 2, 1), std::invalid_argument);
}

TEST_CASE("ergodic average basics") {
    Rng rng(2);
    const CyclicSystem f = random_system(2, 8, rng);

    // G_t cap Z^d = {0}: identity
    const CyclicSystem same = ergodic_average(f, LqBall{2.0}, 0.5);
    for (std::size_t i = 0; i < f.size(); ++i) REQUIRE(same[i] == f[i]);

    CyclicSystem c(2, 8);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = 1.75;
    const CyclicSystem ac = ergodic_average(c, Cube{}, 2.0);
    for (std::size_t i = 0; i < c.size(); ++i) REQUIRE(ac[i] == Catch::Approx(1.75).margin(1e-14));

    // measure preservation
    const CyclicSystem af = ergodic_average(f, Cube{}, 2.0);
    REQUIRE(af.mean() == Catch::Approx(f.mean()).margin(1e-13));

    // commutes with the group action, term for term
    const CyclicSystem lhs = ergodic_average(shift(f, 0, 3), Cube{}, 1.0);
    const CyclicSystem rhs = shift(ergodic_average(f, Cube{}, 1.0), 0, 3);
    for (std::size_t i = 0; i < f.size(); ++i) REQUIRE(lhs[i] == rhs[i]);
}

TEST_CASE("ergodic average matches the periodized lattice average") {
    Rng rng(3);
    const CyclicSystem f = random_system(2, 16, rng);
    GridFunction g(2, 16);
    for (std::size_t i = 0; i < f.size(); ++i) g[g.flat(f.coord_of(i))] = f[i];
    for (double t : {1.0, 2.0, 3.0}) {
        const CyclicSystem a = ergodic_average(f, Cube{}, t);
        const GridFunction b = average(g, Cube{}, t, Padding::wrap);
        for (std::size_t i = 0; i < f.size(); ++i)
            REQUIRE(a[i] == Catch::Approx(b[b.flat(f.coord_of(i))].real()).margin(1e-12));
    }
}

TEST_CASE("cube cover constants") {
    REQUIRE(cube_cover_constant(Cube{}) == 1);
    REQUIRE(cube_cover_constant(LqBall{1.5}) == 1);
    REQUIRE(cube_cover_constant(default_ellipsoid(4)) == 1);
}

TEST_CASE("transference identity for a point mass") {
    CyclicSystem f(2, 32);
    f[f.flat({0, 0})] = 1.0;
    const TransferenceReport rep =
        transference_check(f, Cube{}, full_scales({1.0, 2.0}), 3.0, 2.0, false);
    REQUIRE(rep.identity_error <= 1e-14);
    REQUIRE_FALSE(rep.ratio_checked);
    REQUIRE(rep.pass());
}

TEST_CASE("transference precondition rejects wrap interference") {
    CyclicSystem f(2, 8);
    f[0] = 1.0;
    REQUIRE_THROWS_AS(transference_check(f, Cube{}, full_scales({1.0, 2.0}), 3.0, 2.0, false),
                      padding_error);
}

TEST_CASE("transference inequality on random states") {
    Rng rng(4);
    for (int trial = 0; trial < 3; ++trial) {
        const CyclicSystem f = random_system(1, 16, rng);
        const TransferenceReport rep =
            transference_check(f, Cube{}, full_scales({1.0, 2.0}), 3.0, 2.0);
        INFO("cyclic " << rep.cyclic_ratio << " lattice " << rep.lattice_constant << " window "
                       << rep.window_factor);
        REQUIRE(rep.identity_error <= 1e-14);
        REQUIRE(rep.ratio_excess <= 1e-9);
        REQUIRE(rep.cyclic_ratio > 0.0);
        REQUIRE(rep.lattice_constant > 0.0);
        REQUIRE(rep.pass());
    }
}

TEST_CASE("transference on a constant state has zero variation") {
    CyclicSystem c(1, 16);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = 2.0;
    const TransferenceReport rep =
        transference_check(c, Cube{}, full_scales({1.0, 2.0}), 3.0, 2.0);
    REQUIRE(rep.identity_error <= 1e-14);
    REQUIRE(rep.cyclic_ratio <= 1e-14);
}
