#pragma once

// Parallel transport of connection 1-forms along polyline paths on the
// 4-punctured torus C/(2Z+2iZ), monodromy representation assembly, and the
// SU(2)-realizability test.
//
// Transport convention: along a path z(s) the frame solves
//   dY/ds = -(A_dz(z) * z'(s) + A_dzbar(z) * conj(z'(s))) * Y,  Y(0) = Id.

#include "lawson/connection.hpp"
#include "lawson/types.hpp"

#include <vector>

namespace lawson {

struct TorusPath {
    std::vector<cplx> waypoints;

    // Minimum distance of the polyline to the pole lattice Z+iZ.
    double clearance() const;
};

// Straight segment path.
TorusPath segment_path(cplx from, cplx to);

// Closed polygonal loop around `center`, based at `base`: tail from base to
// the circle, a circumscribed n-gon of radius r (so the chords keep distance
// >= r from the center), and the tail back.  Positively oriented.
TorusPath puncture_loop(cplx center, double radius, cplx base, int segments = 64);

struct MonodromyRep {
    Mat2 M_A;                  // loop z -> z + 2
    Mat2 M_B;                  // loop z -> z + 2i
    std::array<Mat2, 4> P;     // loops around punctures 0, 1, i, 1+i
    cplx basepoint{};
};

inline constexpr cplx monodromy_basepoint{0.5, 0.5};
inline constexpr double default_min_clearance = 0.25;

Mat2 transport(const MatrixOneForm& form, const TorusPath& path, double tol,
               double min_clearance = default_min_clearance);

// Period-loop transports only (the unitarizer's inner loop); punctures skipped.
std::pair<Mat2, Mat2> period_monodromy(const MatrixOneForm& form, double tol);

MonodromyRep torus_monodromy(const ConnectionBuilder& builder, const AffineConnCoord& p,
                             double tol);

// Closed-form holonomies of the diagonal connection d + pi*a dz - pi*x dzbar
// along the two period loops: (exp(-2*pi*(a-x)), exp(-2*pi*i*(a+x))).
std::pair<cplx, cplx> abelian_monodromy(const AffineConnCoord& p);

// (Im tr M_A, Im tr M_B); throws if the representation is reducible
// (commutator within 1e-6 of +-Id).
std::pair<double, double> unitarity_defect(const MonodromyRep& rep);

// Trace conditions for simultaneous conjugation into SU(2): real traces in
// [-2, 2] and Fricke discriminant <= 0.
bool su2_realizable(const MonodromyRep& rep, double tol = 1e-6);

}  // namespace lawson
