#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lawson/loopgroup.hpp"

#include <random>

using namespace lawson;

namespace {

// Smooth loop with geometrically decaying Fourier modes, close to Id.
LoopSample random_smooth_loop(int n, unsigned seed, double amp = 0.25, double decay = 0.4) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Mat2> coeffs;
    std::vector<int> modes;
    for (int j = -8; j <= 8; ++j) {
        Mat2 c;
        for (int r = 0; r < 2; ++r)
            for (int col = 0; col < 2; ++col) c(r, col) = cplx{u(rng), u(rng)};
        coeffs.push_back(amp * std::pow(decay, std::abs(j)) * c);
        modes.push_back(j);
    }
    LoopSample s;
    s.lambda_nodes = loop_nodes(n);
    for (cplx l : s.lambda_nodes) {
        Mat2 v = Mat2::Identity();
        for (size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * std::pow(l, modes[i]);
        s.frames.push_back(v);
    }
    return s;
}

}  // namespace

TEST_CASE("fft: roundtrip, delta, constant") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> v(32), orig;
    for (auto& z : v) z = cplx{u(rng), u(rng)};
    orig = v;
    fft(v, false);
    fft(v, true);
    for (size_t k = 0; k < v.size(); ++k) CHECK(std::abs(v[k] - orig[k]) < 1e-13);

    // Constant signal -> only mode 0.
    std::vector<cplx> c(16, cplx{2.0, -1.0});
    fft(c, false);
    CHECK(std::abs(c[0] - cplx{2.0, -1.0}) < 1e-14);
    for (size_t k = 1; k < c.size(); ++k) CHECK(std::abs(c[k]) < 1e-14);

    // Pure mode: samples of lambda^3 -> coefficient 1 at index 3.
    auto nodes = loop_nodes(16);
    std::vector<cplx> p(16);
    for (int k = 0; k < 16; ++k) p[k] = std::pow(nodes[k], 3);
    fft(p, false);
    CHECK(std::abs(p[3] - 1.0) < 1e-13);
    for (size_t k = 0; k < p.size(); ++k)
        if (k != 3) CHECK(std::abs(p[k]) < 1e-13);

    std::vector<cplx> bad(12);
    CHECK_THROWS_AS(fft(bad, false), std::invalid_argument);
    CHECK_THROWS_AS((void)loop_nodes(12), std::invalid_argument);
}

TEST_CASE("iwasawa: unitary input gives B = Id") {
    LoopSample s;
    s.lambda_nodes = loop_nodes(64);
    for (cplx l : s.lambda_nodes) {
        // Unitary loop: diag phases plus a constant rotation.
        Mat2 d;
        d << l, 0, 0, std::conj(l);
        Mat2 r;
        double c = std::cos(0.7), sn = std::sin(0.7);
        r << c, sn, -sn, c;
        s.frames.push_back(r * d);
    }
    IwasawaResult iw = unitarize_loop(s);
    for (const Mat2& b : iw.positive.frames)
        CHECK(max_abs(Mat2(b - Mat2::Identity())) < 1e-10);
    CHECK(iw.residual < 1e-10);
    CHECK(iw.unitarity < 1e-12);
}

TEST_CASE("iwasawa: constant upper-positive input gives F = Id") {
    Mat2 r;
    r << 2.0, cplx{0.3, 0.4}, 0.0, 0.5;
    LoopSample s;
    s.lambda_nodes = loop_nodes(64);
    s.frames.assign(64, r);
    IwasawaResult iw = unitarize_loop(s);
    for (const Mat2& f : iw.unitary.frames)
        CHECK(max_abs(Mat2(f - Mat2::Identity())) < 1e-10);
    CHECK(max_abs(Mat2(iw.b_coeffs[0] - r)) < 1e-10);
}

TEST_CASE("iwasawa: random smooth loops reconstruct to 1e-8") {
    for (unsigned seed : {1u, 2u, 3u}) {
        LoopSample s = random_smooth_loop(64, seed);
        IwasawaResult iw = unitarize_loop(s);
        CHECK(iw.residual < 1e-8);
        CHECK(iw.unitarity < 1e-10);
        // B(0) upper triangular with positive diagonal.
        CHECK(std::abs(iw.b_coeffs[0](1, 0)) < 1e-9);
        CHECK(iw.b_coeffs[0](0, 0).real() > 0.0);
        CHECK(std::abs(iw.b_coeffs[0](0, 0).imag()) < 1e-9);
        CHECK(iw.b_coeffs[0](1, 1).real() > 0.0);
        CHECK(std::abs(iw.b_coeffs[0](1, 1).imag()) < 1e-9);
    }
}

TEST_CASE("iwasawa: node doubling changes the factor marginally") {
    LoopSample s32 = random_smooth_loop(32, 5);
    LoopSample s64 = random_smooth_loop(64, 5);
    IwasawaResult a = unitarize_loop(s32, 12);
    IwasawaResult b = unitarize_loop(s64, 12);
    for (int j = 0; j <= 12; ++j)
        CHECK(max_abs(Mat2(a.b_coeffs[j] - b.b_coeffs[j])) < 1e-8);
}

TEST_CASE("iwasawa: tail-decay guard") {
    // Loop with slowly decaying spectrum beyond the truncation: rejected.
    LoopSample s = random_smooth_loop(64, 9, 0.4, 0.95);
    CHECK_THROWS_AS((void)unitarize_loop(s, 8), std::runtime_error);
}

TEST_CASE("dressing factor: endpoint values and circle unitarity") {
    cplx l0{0.5, 0.2};
    Eigen::Vector2cd line;
    line << cplx{1.0, 0.5}, cplx{-0.3, 0.8};
    Mat2 d1 = dressing_factor(1.0, l0, line);
    CHECK(max_abs(Mat2(d1 - Mat2::Identity())) < 1e-14);

    Mat2 dl0 = dressing_factor(l0, l0, line);
    Eigen::JacobiSVD<Mat2> svd(dl0);
    CHECK(svd.singularValues()(0) > 0.5);       // rank 1 ...
    CHECK(svd.singularValues()(1) < 1e-14);     // ... exactly
    CHECK(max_abs(Mat2(dl0 - line_projector(line))) < 1e-14);

    for (cplx l : loop_nodes(64)) {
        Mat2 d = dressing_factor(l, l0, line);
        CHECK(max_abs(Mat2(d * d.adjoint() - Mat2::Identity())) < 1e-12);
        // Scalar factor on the orthogonal complement is unimodular.
        Eigen::Vector2cd perp;
        perp << -std::conj(line(1)), std::conj(line(0));
        cplx scalar = (d * perp).dot(perp) / perp.squaredNorm();
        CHECK(std::abs(std::abs(scalar) - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS((void)dressing_factor(0.3, std::exp(iu * 0.4), line),
                    std::invalid_argument);
}

TEST_CASE("simple factor dress keeps circle unitarity") {
    LoopSample s;
    s.lambda_nodes = loop_nodes(32);
    for (cplx l : s.lambda_nodes) {
        Mat2 d;
        d << l, 0, 0, std::conj(l);
        s.frames.push_back(d);
    }
    Eigen::Vector2cd line;
    line << 1.0, cplx{0.2, -0.4};
    LoopSample dressed = simple_factor_dress(s, cplx{0.5, 0.2}, line);
    REQUIRE(dressed.frames.size() == s.frames.size());
    double moved = 0.0;
    for (size_t k = 0; k < dressed.frames.size(); ++k) {
        const Mat2& f = dressed.frames[k];
        CHECK(max_abs(Mat2(f * f.adjoint() - Mat2::Identity())) < 1e-12);
        moved = std::max(moved, max_abs(Mat2(f - s.frames[k])));
    }
    CHECK(moved > 1e-3);  // genuinely dressed (node lambda = 1 alone is fixed)
}
