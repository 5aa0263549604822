#pragma once

// Explicit meromorphic rank-2 connection 1-forms on the 4-punctured torus
// C/(2Z+2iZ) assembled from the coordinates (x, a):
//
//   A = [ pi*a dz - pi*x dzbar         gamma^-(z) dz        ]
//       [ gamma^+(z) dz          -pi*a dz + pi*x dzbar      ]
//
// with y = -2x and
//   gamma^+(z) = c * theta(z-y)/theta(z) * exp(-2*pi*i*y*Im z),
//   gamma^-(z) = c * theta(z+y)/theta(z) * exp(+2*pi*i*y*Im z),
//   c = (1/6)*sqrt(theta'(0)^2 / (theta(y)theta(-y))).
//
// The square root admits the globally single-valued closed form
//   c(y) = s * (i/6) * theta'(0) * exp(i*pi*y) / theta(y),   s = +-1,
// with s fixed once by matching the principal branch at y0 = 0.3.
// Also contains the rank-1 exceptional limiting families with dz-pole
// coefficient +-pi/(12 t).

#include "lawson/moduli.hpp"
#include "lawson/theta.hpp"
#include "lawson/types.hpp"

#include <functional>
#include <vector>

namespace lawson {

struct MatrixOneForm {
    std::function<Mat2(cplx)> dz_part;
    std::function<Mat2(cplx)> dzbar_part;
    std::vector<cplx> pole_set;  // representatives in [0,2)x[0,2): 0, 1, i, 1+i
};

struct ExceptionalFamily {
    int sign = -1;                 // -1: stable limit, +1: non-stable limit
    std::vector<cplx> e_coeffs;    // e(t) = sum_k e_coeffs[k] * t^{2k}
};

struct AbelianFormValue {
    cplx dz_coeff{};
    cplx dzbar_coeff{};
};

class ConnectionBuilder {
public:
    explicit ConnectionBuilder(ThetaFn theta = ThetaFn{});

    const ThetaFn& theta() const { return theta_; }
    int c_branch_sign() const { return c_sign_; }

    cplx coeff_c(cplx y) const;

    // (gamma^+(z), gamma^-(z)) as dz-coefficients.
    std::pair<cplx, cplx> gamma_pair(cplx y, cplx z) const;

    MatrixOneForm build_form(const AffineConnCoord& p) const;

    // Diagonal part only: d + pi*a dz - pi*x dzbar (closed-form transport
    // oracle target).
    MatrixOneForm diagonal_form(const AffineConnCoord& p) const;

    AbelianFormValue exceptional_form(const ExceptionalFamily& fam, cplx t) const;

private:
    ThetaFn theta_;
    int c_sign_;
};

}  // namespace lawson
