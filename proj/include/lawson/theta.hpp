#pragma once

// Theta function on the square torus C/(Z+iZ) (modulus tau = i), its
// derivative, and the trivializing line-bundle sections.
//
// Realization: theta(z) = exp(i*pi*z) * 2 * sum_{n>=0} (-1)^n q^{(n+1/2)^2}
// sin((2n+1)*pi*z) with nome q = exp(-pi).  This satisfies
//   theta(z+1) = theta(z)
//   theta(z+i) = theta(z) * exp(-2*pi*i*(z - (1+i)/2) + pi)
// exactly, with simple zeros precisely on Z+iZ.

#include "lawson/types.hpp"

#include <stdexcept>

namespace lawson {

class ThetaFn {
public:
    explicit ThetaFn(int truncation_order = 12, double pole_exclusion = 1e-3)
        : terms_(truncation_order), pole_exclusion_(pole_exclusion) {
        if (terms_ < 1) throw std::invalid_argument("truncation_order must be >= 1");
    }

    int truncation_order() const { return terms_; }
    double pole_exclusion() const { return pole_exclusion_; }

    cplx theta(cplx z) const;
    cplx theta_prime(cplx z) const;

    // s(z) = theta(z-x)/theta(z) * exp(pi*x*(conj(z)-z)); doubly periodic,
    // simple poles on Z+iZ, simple zeros on x+Z+iZ, dbar s = pi*x*s.
    cplx bundle_section(cplx x, cplx z) const;

private:
    int terms_;
    double pole_exclusion_;
};

}  // namespace lawson
