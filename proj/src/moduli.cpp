#include "lawson/moduli.hpp"

#include <cmath>

namespace lawson {

JacobianCoord reduce(cplx x) {
    double re = 2.0 * x.real();
    double im = 2.0 * x.imag();
    re -= std::floor(re);
    im -= std::floor(im);
    // Guard against the floating-point edge where re/im rounds to 1.
    if (re >= 1.0) re -= 1.0;
    if (im >= 1.0) im -= 1.0;
    return {cplx{0.5 * re, 0.5 * im}};
}

AffineConnCoord coupled_shift(const AffineConnCoord& p, long m, long n) {
    cplx shift_x{0.5 * m, 0.5 * n};
    cplx shift_a{0.5 * m, -0.5 * n};
    return {p.x + shift_x, p.a + shift_a};
}

std::pair<cplx, cplx> class_residual(const AffineConnCoord& p, const AffineConnCoord& q) {
    long m = std::lround(2.0 * (q.x.real() - p.x.real()));
    long n = std::lround(2.0 * (q.x.imag() - p.x.imag()));
    AffineConnCoord s = coupled_shift(p, m, n);
    return {s.x - q.x, s.a - q.a};
}

bool class_equal(const AffineConnCoord& p, const AffineConnCoord& q, double tol) {
    auto [rx, ra] = class_residual(p, q);
    return std::abs(rx) <= tol && std::abs(ra) <= tol;
}

ModuliClass pi_project(const JacobianCoord& p) {
    JacobianCoord r1 = reduce(p.x);
    JacobianCoord r2 = reduce(-p.x);
    bool take_first = (r1.x.real() < r2.x.real()) ||
                      (r1.x.real() == r2.x.real() && r1.x.imag() <= r2.x.imag());
    return {take_first ? r1 : r2};
}

cplx normalize_trivialization(cplx t_coeff) {
    return t_coeff / (-pi);
}

bool on_forbidden_locus(cplx x, double tol) {
    return dist_to_half_lattice(x) < tol;
}

}  // namespace lawson
