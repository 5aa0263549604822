#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lawson/moduli.hpp"

#include <random>

using namespace lawson;

TEST_CASE("reduce to the fundamental cell") {
    CHECK(std::abs(reduce({0.6, 0.7}).x - cplx{0.1, 0.2}) < 1e-12);
    CHECK(std::abs(reduce(0.0).x) < 1e-15);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int k = 0; k < 50; ++k) {
        cplx x{u(rng), u(rng)};
        JacobianCoord r = reduce(x);
        CHECK(r.x.real() >= 0.0);
        CHECK(r.x.real() < 0.5);
        CHECK(r.x.imag() >= 0.0);
        CHECK(r.x.imag() < 0.5);
        CHECK(std::abs(reduce(r.x).x - r.x) < 1e-12);          // idempotent
        CHECK(dist_to_half_lattice(x - r.x) < 1e-12);          // lattice shift
    }
}

TEST_CASE("coupled lattice class equality") {
    AffineConnCoord p{{0.13, 0.21}, {0.4, -0.3}};
    CHECK(class_equal(p, {p.x + 0.5, p.a + 0.5}, 1e-9));
    CHECK(class_equal(p, {p.x + 0.5 * iu, p.a - 0.5 * iu}, 1e-9));
    CHECK(class_equal(p, coupled_shift(p, -3, 2), 1e-9));
    CHECK_FALSE(class_equal(p, {p.x, p.a + 0.3}, 1e-9));
}

TEST_CASE("pi projection is even with the stated branch locus") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        cplx x{u(rng), u(rng)};
        CHECK(std::abs(pi_project({x}).representative.x -
                       pi_project({-x}).representative.x) < 1e-12);
    }
    // Branch points: fixed points of negation mod Lambda'.
    const cplx branch[4] = {{0, 0}, {0.25, 0}, {0, 0.25}, {0.25, 0.25}};
    for (cplx b : branch) {
        cplx r1 = reduce(b).x, r2 = reduce(-b).x;
        CHECK(std::abs(r1 - r2) < 1e-12);
    }
    CHECK(std::abs(pi_project({0.0}).representative.x) < 1e-15);
}

TEST_CASE("trivialization conversion") {
    CHECK(std::abs(normalize_trivialization(0.0)) < 1e-15);
    CHECK(std::abs(normalize_trivialization(-pi * cplx{0.1, 0.2}) - cplx{0.1, 0.2}) < 1e-13);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 20; ++k) {
        cplx t{u(rng), u(rng)};
        CHECK(std::abs(normalize_trivialization(t) * (-pi) - t) < 1e-12);
    }
}

TEST_CASE("forbidden locus detection is lattice-action invariant") {
    CHECK(on_forbidden_locus(0.0));
    CHECK(on_forbidden_locus(0.5));
    CHECK(on_forbidden_locus(cplx{1.0, -0.5}));
    CHECK_FALSE(on_forbidden_locus(cplx{0.13, 0.07}));
    CHECK(on_forbidden_locus(cplx{0.5, 0.5} + cplx{0.0, 0.0}));
}
