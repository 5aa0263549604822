#pragma once

// Loop-group machinery on circle samples: radix-2 FFT, Iwasawa (unitary x
// disc-holomorphic) factorization of matrix loops via Bauer's block-Toeplitz
// spectral factorization of H = Psi* Psi, and the simple-factor dressing loop
//   d(lambda) = P_L + ((1 - conj(l0)^{-1})/(1 - l0))
//               * ((lambda - l0)/(lambda - conj(l0)^{-1})) * P_{L^perp}.

#include "lawson/types.hpp"

#include <vector>

namespace lawson {

struct LoopSample {
    std::vector<cplx> lambda_nodes;  // e^{2 pi i k / n}, n a power of two
    std::vector<Mat2> frames;
};

// Uniform unimodular nodes; n must be a power of two.
std::vector<cplx> loop_nodes(int n);

// In-place radix-2 FFT; forward maps samples at loop_nodes(n) to Fourier
// coefficients (divided by n), inverse maps coefficients back to samples.
void fft(std::vector<cplx>& v, bool inverse);

struct IwasawaResult {
    LoopSample unitary;        // F: unitary at every node
    LoopSample positive;       // B: boundary values of the disc-holomorphic factor
    std::vector<Mat2> b_coeffs;  // B(lambda) = sum_j b_coeffs[j] lambda^j
    double residual = 0.0;     // max_k ||Psi_k - F_k B_k||
    double unitarity = 0.0;    // max_k ||F_k F_k* - Id||
    double tail = 0.0;         // relative Fourier tail of the input beyond max_mode
};

// Psi = F * B with B(0) upper triangular with positive diagonal.  max_mode
// bounds the retained Fourier modes of B; the input tail beyond max_mode must
// decay below tail_tol (relative) or the factorization throws.
IwasawaResult unitarize_loop(const LoopSample& s, int max_mode = 16,
                             double tail_tol = 1e-3);

// Orthogonal projector onto the line spanned by v.
Mat2 line_projector(const Eigen::Vector2cd& v);

// The dressing loop at a single lambda; unimodular scalar factor on |lambda|=1.
Mat2 dressing_factor(cplx lambda, cplx lambda0, const Eigen::Vector2cd& line);

// Pointwise multiplication of the frames by d(lambda_k) on the left.
LoopSample simple_factor_dress(const LoopSample& s, cplx lambda0,
                               const Eigen::Vector2cd& line);

}  // namespace lawson
