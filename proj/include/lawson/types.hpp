#pragma once

// Shared scalar/matrix types and lattice helpers used across the library.

#include <Eigen/Dense>
#include <complex>
#include <numbers>

namespace lawson {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx iu{0.0, 1.0};

// Distance from z to the integer lattice Z + iZ (pole locus of the
// meromorphic connection forms).
inline double dist_to_integer_lattice(cplx z) {
    double dx = z.real() - std::round(z.real());
    double dy = z.imag() - std::round(z.imag());
    return std::hypot(dx, dy);
}

// Distance from z to the half-period lattice (1/2)Z + (i/2)Z.
inline double dist_to_half_lattice(cplx z) {
    double dx = 2.0 * z.real() - std::round(2.0 * z.real());
    double dy = 2.0 * z.imag() - std::round(2.0 * z.imag());
    return 0.5 * std::hypot(dx, dy);
}

inline double max_abs(const Mat2& m) {
    return m.cwiseAbs().maxCoeff();
}

}  // namespace lawson
