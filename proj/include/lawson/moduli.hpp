#pragma once

// Coordinates on the Jacobian of the square torus and on the affine bundle of
// flat line-bundle connections, with the lattice quotients:
//   - x is reduced modulo Lambda' = (1/2)Z + (i/2)Z,
//   - (x, a) is considered modulo the coupled action
//       (x, a) ~ (x + 1/2, a + 1/2),   (x, a) ~ (x + i/2, a - i/2),
//   - the 2:1 projection identifies x with -x.

#include "lawson/types.hpp"

namespace lawson {

struct JacobianCoord {
    cplx x{};
};

struct AffineConnCoord {
    cplx x{};
    cplx a{};
};

struct ModuliClass {
    JacobianCoord representative{};  // lexicographically smaller of {x, -x} reduced
};

// Representative in the half-open fundamental cell [0,1/2) x [0,1/2)i.
JacobianCoord reduce(cplx x);

// Lattice shift (m/2 + n*i/2) applied with the coupled sign on a.
AffineConnCoord coupled_shift(const AffineConnCoord& p, long m, long n);

// True iff some coupled-lattice translate of p matches q within tol.
bool class_equal(const AffineConnCoord& p, const AffineConnCoord& q, double tol);

// Complex residuals (x-mismatch, a-mismatch) of the best coupled-lattice
// translate of p against q; class_equal is a thresholded version of this.
std::pair<cplx, cplx> class_residual(const AffineConnCoord& p, const AffineConnCoord& q);

ModuliClass pi_project(const JacobianCoord& p);

// Converts the "dbar_0 + t dzbar" trivialization coefficient into the
// "-pi x dzbar" normalization: x = t_coeff / (-pi).
cplx normalize_trivialization(cplx t_coeff);

// True when x lies on the forbidden locus x == 0 mod Lambda' (trivial line
// bundle: no holomorphic connection exists there).
bool on_forbidden_locus(cplx x, double tol = 1e-9);

}  // namespace lawson
