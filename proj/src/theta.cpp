#include "lawson/theta.hpp"

#include <cmath>

namespace lawson {

cplx ThetaFn::theta(cplx z) const {
    // 2 * sum (-1)^n exp(-pi (n+1/2)^2) sin((2n+1) pi z), prefactor e^{i pi z}.
    cplx sum = 0.0;
    for (int n = terms_ - 1; n >= 0; --n) {
        double coef = 2.0 * std::exp(-pi * (n + 0.5) * (n + 0.5));
        if (n % 2) coef = -coef;
        sum += coef * std::sin((2.0 * n + 1.0) * pi * z);
    }
    return std::exp(iu * pi * z) * sum;
}

cplx ThetaFn::theta_prime(cplx z) const {
    // Term-by-term derivative of the series plus the prefactor's chain term.
    cplx sum = 0.0;
    cplx dsum = 0.0;
    for (int n = terms_ - 1; n >= 0; --n) {
        double coef = 2.0 * std::exp(-pi * (n + 0.5) * (n + 0.5));
        if (n % 2) coef = -coef;
        double m = 2.0 * n + 1.0;
        sum += coef * std::sin(m * pi * z);
        dsum += coef * m * pi * std::cos(m * pi * z);
    }
    cplx pref = std::exp(iu * pi * z);
    return pref * (iu * pi * sum + dsum);
}

cplx ThetaFn::bundle_section(cplx x, cplx z) const {
    if (dist_to_integer_lattice(z) < pole_exclusion_)
        throw std::domain_error("bundle_section: z within pole exclusion radius of Z+iZ");
    return theta(z - x) / theta(z) * std::exp(pi * x * (std::conj(z) - z));
}

}  // namespace lawson
