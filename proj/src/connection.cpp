#include "lawson/connection.hpp"

#include <cmath>
#include <stdexcept>

namespace lawson {

ConnectionBuilder::ConnectionBuilder(ThetaFn theta) : theta_(std::move(theta)), c_sign_(1) {
    // Fix the branch of the square root in c by matching the principal branch
    // at the base point y0 = 0.3.  theta(y)theta(-y) = -exp(-2*pi*i*y)theta(y)^2
    // turns the square root into the single-valued candidate below.
    const cplx y0 = 0.3;
    cplx tp0 = theta_.theta_prime(0.0);
    cplx principal = std::sqrt(tp0 * tp0 / (theta_.theta(y0) * theta_.theta(-y0)));
    cplx candidate = iu * tp0 * std::exp(iu * pi * y0) / theta_.theta(y0);
    c_sign_ = (std::abs(principal - candidate) <= std::abs(principal + candidate)) ? 1 : -1;
}

cplx ConnectionBuilder::coeff_c(cplx y) const {
    if (dist_to_integer_lattice(y) < theta_.pole_exclusion())
        throw std::domain_error("coeff_c: y within exclusion radius of Z+iZ");
    return double(c_sign_) * (iu / 6.0) * theta_.theta_prime(0.0) *
           std::exp(iu * pi * y) / theta_.theta(y);
}

std::pair<cplx, cplx> ConnectionBuilder::gamma_pair(cplx y, cplx z) const {
    if (dist_to_integer_lattice(z) < theta_.pole_exclusion())
        throw std::domain_error("gamma_pair: z within exclusion radius of Z+iZ");
    cplx c = coeff_c(y);
    cplx tz = theta_.theta(z);
    cplx phase = std::exp(2.0 * pi * iu * y * z.imag());
    cplx gp = c * theta_.theta(z - y) / tz / phase;
    cplx gm = c * theta_.theta(z + y) / tz * phase;
    return {gp, gm};
}

MatrixOneForm ConnectionBuilder::build_form(const AffineConnCoord& p) const {
    if (on_forbidden_locus(p.x))
        throw std::domain_error("build_form: x == 0 mod Lambda' (no holomorphic connection)");
    MatrixOneForm form;
    form.pole_set = {cplx{0, 0}, cplx{1, 0}, cplx{0, 1}, cplx{1, 1}};
    cplx a = p.a;
    cplx y = -2.0 * p.x;
    ConnectionBuilder self = *this;  // value capture keeps the form immutable
    form.dz_part = [self, a, y](cplx z) {
        auto [gp, gm] = self.gamma_pair(y, z);
        Mat2 m;
        m << pi * a, gm, gp, -pi * a;
        return m;
    };
    cplx x = p.x;
    form.dzbar_part = [x](cplx) {
        Mat2 m;
        m << -pi * x, 0.0, 0.0, pi * x;
        return m;
    };
    return form;
}

MatrixOneForm ConnectionBuilder::diagonal_form(const AffineConnCoord& p) const {
    MatrixOneForm form;
    cplx a = p.a;
    cplx x = p.x;
    form.dz_part = [a](cplx) {
        Mat2 m;
        m << pi * a, 0.0, 0.0, -pi * a;
        return m;
    };
    form.dzbar_part = [x](cplx) {
        Mat2 m;
        m << -pi * x, 0.0, 0.0, pi * x;
        return m;
    };
    return form;
}

AbelianFormValue ConnectionBuilder::exceptional_form(const ExceptionalFamily& fam, cplx t) const {
    if (t == 0.0) throw std::domain_error("exceptional_form: t = 0 is a pole");
    cplx e = 0.0;
    cplx t2 = t * t;
    cplx pw = 1.0;
    for (cplx ek : fam.e_coeffs) {
        e += ek * pw;
        pw *= t2;
    }
    return {double(fam.sign) * pi / (12.0 * t) + t * e, t};
}

}  // namespace lawson
