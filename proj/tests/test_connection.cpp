#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lawson/connection.hpp"

#include <random>

using namespace lawson;

namespace {
const ConnectionBuilder cb;

// Contour quadrature of (1/2pi i) * integral f(z) z dz on |z| = r: picks the
// 1/z^2 Laurent coefficient of f.
cplx second_order_residue(const std::function<cplx(cplx)>& f, double r, int nodes) {
    cplx sum = 0.0;
    for (int k = 0; k < nodes; ++k) {
        cplx z = r * std::exp(2.0 * pi * iu * (double(k) / nodes));
        sum += f(z) * z * z;  // f(z)*z * dz/(i dphi) = f z * i z; /(2pi i)
    }
    return sum / double(nodes);
}
}  // namespace

TEST_CASE("coeff_c squares to the residue normalization") {
    cplx y{0.3, 0.2};
    cplx c = cb.coeff_c(y);
    const ThetaFn& th = cb.theta();
    cplx tp0 = th.theta_prime(0.0);
    cplx val = c * c * th.theta(y) * th.theta(-y) / (tp0 * tp0);
    CHECK(std::abs(val - 1.0 / 36.0) < 1e-13);
}

TEST_CASE("coeff_c Laurent behavior at 0") {
    // theta(y)theta(-y) ~ -theta'(0)^2 y^2, so (y*c(y))^2 -> -1/36 and the
    // limit of y*c(y) along y = eps is +-i/6 (modulus 1/6).
    double eps = 5e-3;
    cplx v = cplx(eps) * cb.coeff_c(cplx(eps));
    CHECK(std::min(std::abs(v - iu / 6.0), std::abs(v + iu / 6.0)) < 1e-4);
    CHECK(std::abs(std::abs(v) - 1.0 / 6.0) < 1e-4);
}

TEST_CASE("coeff_c continuous on a circle (single-valued branch)") {
    cplx center{0.35, 0.35};
    double r = 0.3;
    int n = 400;
    cplx prev = cb.coeff_c(center + r);
    for (int k = 1; k <= n; ++k) {
        cplx y = center + r * std::exp(2.0 * pi * iu * (double(k) / n));
        cplx cur = cb.coeff_c(y);
        CHECK(std::abs(cur - prev) < 0.2);  // no sign jump (|2c| >= ~0.3 here)
        prev = cur;
    }
}

TEST_CASE("gamma pair zero location and periodicity") {
    cplx y{0.23, 0.11};
    auto [gp_at_y, gm_at_y] = cb.gamma_pair(y, y);
    CHECK(std::abs(gp_at_y) < 1e-12);
    (void)gm_at_y;
    cplx z{0.4, 0.3};
    auto [gp1, gm1] = cb.gamma_pair(y, z);
    auto [gp2, gm2] = cb.gamma_pair(y, z + 1.0);
    CHECK(std::abs(gp2 / gp1 - 1.0) < 1e-11);
    CHECK(std::abs(gm2 / gm1 - 1.0) < 1e-11);
}

TEST_CASE("residue of gamma^+ gamma^- at 0 is 1/36") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.1, 0.4);
    for (int k = 0; k < 5; ++k) {
        cplx y{u(rng), u(rng)};
        auto f = [&](cplx z) {
            auto [gp, gm] = cb.gamma_pair(y, z);
            return gp * gm;
        };
        cplx res = second_order_residue(f, 0.05, 256);
        CHECK(std::abs(res - 1.0 / 36.0) < 1e-8);
    }
}

TEST_CASE("build_form: trace-free, dzbar diagonal, forbidden locus") {
    AffineConnCoord p{{0.13, 0.21}, {0.3, -0.1}};
    MatrixOneForm f = cb.build_form(p);
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(0.25, 0.75);
    for (int k = 0; k < 5; ++k) {
        cplx z{u(rng), u(rng)};
        CHECK(std::abs(f.dz_part(z).trace()) < 1e-12);
        CHECK(std::abs(f.dzbar_part(z).trace()) < 1e-12);
        Mat2 db = f.dzbar_part(z);
        CHECK(std::abs(db(0, 1)) == 0.0);
        CHECK(std::abs(db(1, 0)) == 0.0);
        CHECK(std::abs(db(0, 0) + pi * p.x) < 1e-14);
    }
    // Off-diagonal product residue (entries (0,1)*(1,0)) equals 1/36.
    auto prod = [&](cplx z) {
        Mat2 m = f.dz_part(z);
        return m(0, 1) * m(1, 0);
    };
    CHECK(std::abs(second_order_residue(prod, 0.05, 256) - 1.0 / 36.0) < 1e-8);

    CHECK_THROWS_AS((void)cb.build_form({{0.5, 0.0}, {0.1, 0.1}}), std::domain_error);
}

TEST_CASE("exceptional family: pole coefficient and oddness") {
    ExceptionalFamily fam{-1, {cplx{0.2, 0.1}, cplx{-0.05, 0.0}}};
    for (double t : {1e-3, 1e-4}) {
        auto v = cb.exceptional_form(fam, t);
        CHECK(std::abs(t * v.dz_coeff - (-pi / 12.0)) < 1e-5);
    }
    ExceptionalFamily fam_plus{+1, {}};
    auto vp = cb.exceptional_form(fam_plus, 0.01);
    CHECK(std::abs(0.01 * vp.dz_coeff - pi / 12.0) < 1e-14);

    // Coefficientwise oddness of the full form value.
    cplx t{0.3, 0.4};
    auto v1 = cb.exceptional_form(fam, t);
    auto v2 = cb.exceptional_form(fam, -t);
    CHECK(std::abs(v1.dz_coeff + v2.dz_coeff) < 1e-14);
    CHECK(std::abs(v1.dzbar_coeff + v2.dzbar_coeff) < 1e-14);

    CHECK_THROWS_AS((void)cb.exceptional_form(fam, 0.0), std::domain_error);
}
