#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lawson/theta.hpp"

#include <random>

using namespace lawson;

namespace {
const ThetaFn th;

cplx quasi_period_factor(cplx z) {
    return std::exp(-2.0 * pi * iu * (z - cplx{0.5, 0.5}) + pi);
}
}  // namespace

TEST_CASE("quasi-periodicity on 100 random points") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        cplx z{u(rng), u(rng)};
        cplx t = th.theta(z);
        CHECK(std::abs(th.theta(z + 1.0) - t) < 1e-12);
        CHECK(std::abs(th.theta(z + iu) - t * quasi_period_factor(z)) < 1e-12);
    }
}

TEST_CASE("simple zeros exactly on the lattice") {
    const cplx pts[4] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    for (cplx p : pts) {
        CHECK(std::abs(th.theta(p)) < 1e-12);
        CHECK(std::abs(th.theta_prime(p)) > 0.1);
    }
}

TEST_CASE("parity surrogate theta(-z) = theta(z+i)") {
    cplx z{0.37, -0.21};
    CHECK(std::abs(th.theta(-z) - th.theta(z + iu)) < 1e-12);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int k = 0; k < 20; ++k) {
        cplx w{u(rng), u(rng)};
        CHECK(std::abs(th.theta(-w) - th.theta(w + iu)) < 1e-11);
    }
}

TEST_CASE("derivative matches central differences") {
    cplx z{0.4, 0.3};
    double h = 1e-5;
    cplx fd = (th.theta(z + h) - th.theta(z - h)) / (2.0 * h);
    CHECK(std::abs(th.theta_prime(z) - fd) < 1e-8);
    CHECK(std::abs(th.theta_prime(z + 1.0) - th.theta_prime(z)) < 1e-12);
}

TEST_CASE("bundle section: periodicity, zero, dbar equation") {
    cplx x{0.2, 0.3};
    cplx z{0.5, 0.6};
    CHECK(std::abs(th.bundle_section(x, z + 1.0) - th.bundle_section(x, z)) < 1e-12);
    CHECK(std::abs(th.bundle_section(x, z + iu) - th.bundle_section(x, z)) < 1e-12);
    CHECK(std::abs(th.bundle_section(x, x)) < 1e-12);

    // Wirtinger dbar by central differences: dbar = (d/dRe + i d/dIm)/2.
    double h = 1e-5;
    cplx sx = (th.bundle_section(x, z + h) - th.bundle_section(x, z - h)) / (2.0 * h);
    cplx sy = (th.bundle_section(x, z + h * iu) - th.bundle_section(x, z - h * iu)) / (2.0 * h);
    cplx dbar = 0.5 * (sx + iu * sy);
    cplx expect = pi * x * th.bundle_section(x, z);
    CHECK(std::abs(dbar - expect) / std::abs(expect) < 1e-6);
}

TEST_CASE("pole exclusion radius enforced") {
    CHECK_THROWS_AS((void)th.bundle_section({0.2, 0.1}, {1e-4, 0.0}), std::domain_error);
}
