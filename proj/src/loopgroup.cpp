#include "lawson/loopgroup.hpp"

#include <cmath>
#include <stdexcept>

namespace lawson {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

std::vector<cplx> loop_nodes(int n) {
    if (!power_of_two(n)) throw std::invalid_argument("loop_nodes: n must be a power of two");
    std::vector<cplx> nodes(n);
    for (int k = 0; k < n; ++k) nodes[k] = std::exp(2.0 * pi * iu * (double(k) / n));
    return nodes;
}

void fft(std::vector<cplx>& v, bool inverse) {
    const size_t n = v.size();
    if (!power_of_two(int(n))) throw std::invalid_argument("fft: size must be a power of two");
    // Bit-reversal permutation.
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(v[i], v[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * pi / double(len) * (inverse ? 1.0 : -1.0);
        cplx wl = std::exp(iu * ang);
        for (size_t i = 0; i < n; i += len) {
            cplx w = 1.0;
            for (size_t k = 0; k < len / 2; ++k) {
                cplx u = v[i + k], t = w * v[i + k + len / 2];
                v[i + k] = u + t;
                v[i + k + len / 2] = u - t;
                w *= wl;
            }
        }
    }
    if (!inverse)
        for (cplx& z : v) z /= double(n);
}

IwasawaResult unitarize_loop(const LoopSample& s, int max_mode, double tail_tol) {
    const int n = int(s.frames.size());
    if (!power_of_two(n) || s.lambda_nodes.size() != size_t(n))
        throw std::invalid_argument("unitarize_loop: need matching power-of-two samples");
    if (max_mode < 1 || max_mode > n / 2 - 1)
        throw std::invalid_argument("unitarize_loop: max_mode out of range");

    // Fourier coefficients of H = Psi* Psi, entrywise.
    std::vector<Mat2> h(n);
    for (int k = 0; k < n; ++k) h[k] = s.frames[k].adjoint() * s.frames[k];
    std::vector<Mat2> hc(n);
    {
        std::vector<cplx> buf(n);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                for (int k = 0; k < n; ++k) buf[k] = h[k](r, c);
                fft(buf, false);
                for (int k = 0; k < n; ++k) hc[k](r, c) = buf[k];
            }
    }
    // Tail-decay check: relative mass of modes beyond max_mode (both signs).
    double head = 0.0, tail = 0.0;
    for (int k = 0; k < n; ++k) {
        int mode = k <= n / 2 ? k : k - n;  // signed mode
        double m = max_abs(hc[k]);
        if (std::abs(mode) <= max_mode) head = std::max(head, m);
        else tail = std::max(tail, m);
    }
    IwasawaResult out;
    out.tail = tail / std::max(head, 1e-300);
    if (out.tail > tail_tol)
        throw std::runtime_error("unitarize_loop: Fourier tail of the loop does not decay "
                                 "below the truncation threshold");

    // Bauer spectral factorization: the Toeplitz operator of H factors as
    // T_{B}* T_{B} with T_B lower triangular, so Cholesky is applied to the
    // index-reversed section M_{ij} = H_{j-i}; deep columns of its lower
    // factor converge to the coefficients of the canonical B with H = B* B
    // via B_k = adjoint(L_{r+k, r}).
    const int m = 3 * max_mode;  // section depth; column m-1-max_mode is used
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            int mode = j - i;
            if (std::abs(mode) > max_mode) continue;
            M.block<2, 2>(2 * i, 2 * j) = hc[(mode % n + n) % n];
        }
    Eigen::LLT<Eigen::MatrixXcd> llt(M);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("unitarize_loop: loop Gram matrix not positive definite");
    Eigen::MatrixXcd L = llt.matrixL();
    const int row = m - 1 - max_mode;
    std::vector<Mat2> bc(max_mode + 1);
    for (int j = 0; j <= max_mode; ++j)
        bc[j] = L.block<2, 2>(2 * (row + j), 2 * row).adjoint();

    // Normalize B(0) = bc[0] to upper triangular with positive diagonal.
    Eigen::HouseholderQR<Mat2> qr(bc[0]);
    Mat2 q = qr.householderQ();
    Mat2 r = q.adjoint() * bc[0];
    for (int i = 0; i < 2; ++i) {
        cplx d = r(i, i);
        cplx ph = std::abs(d) > 0 ? d / std::abs(d) : cplx{1.0};
        q.col(i) *= ph;
    }
    Mat2 qadj = q.adjoint();
    for (Mat2& b : bc) b = qadj * b;

    out.b_coeffs = bc;
    out.positive.lambda_nodes = s.lambda_nodes;
    out.unitary.lambda_nodes = s.lambda_nodes;
    out.positive.frames.resize(n);
    out.unitary.frames.resize(n);
    for (int k = 0; k < n; ++k) {
        Mat2 b = Mat2::Zero();
        cplx pw = 1.0;
        for (int j = 0; j <= max_mode; ++j, pw *= s.lambda_nodes[k]) b += bc[j] * pw;
        out.positive.frames[k] = b;
        // Unitary part: polar projection of Psi B^{-1} onto U(2).
        Mat2 g = s.frames[k] * b.inverse();
        Eigen::JacobiSVD<Mat2> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
        Mat2 f = svd.matrixU() * svd.matrixV().adjoint();
        out.unitary.frames[k] = f;
        out.residual = std::max(out.residual, max_abs(Mat2(s.frames[k] - f * b)));
        out.unitarity = std::max(out.unitarity, max_abs(Mat2(f * f.adjoint() - Mat2::Identity())));
    }
    return out;
}

Mat2 line_projector(const Eigen::Vector2cd& v) {
    double n2 = v.squaredNorm();
    if (n2 < 1e-300) throw std::invalid_argument("line_projector: zero vector");
    return (v * v.adjoint()) / n2;
}

Mat2 dressing_factor(cplx lambda, cplx lambda0, const Eigen::Vector2cd& line) {
    if (std::abs(std::abs(lambda0) - 1.0) < 1e-12)
        throw std::invalid_argument("dressing_factor: |lambda0| = 1 is degenerate");
    cplx l0bar_inv = 1.0 / std::conj(lambda0);
    cplx scalar = ((1.0 - l0bar_inv) / (1.0 - lambda0)) *
                  ((lambda - lambda0) / (lambda - l0bar_inv));
    Mat2 p = line_projector(line);
    return p + scalar * (Mat2::Identity() - p);
}

LoopSample simple_factor_dress(const LoopSample& s, cplx lambda0,
                               const Eigen::Vector2cd& line) {
    LoopSample out;
    out.lambda_nodes = s.lambda_nodes;
    out.frames.reserve(s.frames.size());
    for (size_t k = 0; k < s.frames.size(); ++k)
        out.frames.push_back(dressing_factor(s.lambda_nodes[k], lambda0, line) * s.frames[k]);
    return out;
}

}  // namespace lawson
