#pragma once

// Spectral data for the minimal surface: truncated odd series
//   x(t) = sum_{k>=0} x_{2k+1} t^{2k+1},
//   a(t) = a_{-1}/t + sum_{k>=0} a_{2k+1} t^{2k+1}
// on the double cover t^2 = lambda, together with the reality condition
// a(t) = a^u(x(t)) on |t| = 1, the closing conditions at t in {1, i} against
// the class representative (x, a) = (-(1+i)/4, (-1+i)/4) modulo the coupled
// lattice action, the least-squares solver, and the area / mean-curvature
// formulas.

#include "lawson/moduli.hpp"
#include "lawson/unitarizer.hpp"

#include <vector>

namespace lawson {

struct SpectralData {
    std::vector<cplx> x_coeffs;  // x_{2k+1}, k = 0..N-1
    std::vector<cplx> a_coeffs;  // a_coeffs[0] = a_{-1}; a_coeffs[k>=1] = a_{2k-1}
    int truncation() const { return int(x_coeffs.size()); }

    cplx x_at(cplx t) const;
    cplx a_at(cplx t) const;
};

struct SymConfig {
    cplx lambda_1{1.0, 0.0};
    cplx lambda_2{-1.0, 0.0};
};

inline const AffineConnCoord closing_representative{cplx{-0.25, -0.25}, cplx{-0.25, 0.25}};

// Half-circle collocation nodes (the other half follows by oddness).
std::vector<cplx> collocation_nodes(int n_points);

// Stacked Re/Im parts of a(t_j) - a^u(x(t_j)) at the deduplicated nodes.
Eigen::VectorXd reality_residual(const SpectralData& d, int n_points, const Unitarizer& un);

// Stacked Re/Im parts of the coupled-class mismatch of (x(t), a(t)) at t = 1, i.
Eigen::VectorXd closing_residual(const SpectralData& d);

// Distance of the normalized dz-pole coefficient c_{-1} = -pi^2 x_1 a_{-1}
// from the forbidden exceptional values -+pi/12.
double forbidden_c_margin(const SpectralData& d);

// Invariant guard: throws when x_1 = 0, when c_{-1} is within `margin` of
// +-pi/12, or when x(t) meets the forbidden locus on disc samples.
void check_spectral_invariants(const SpectralData& d, double margin = 1e-4);

struct SolveReport {
    std::vector<double> residual_history;  // max-norms per accepted iteration
    int iterations = 0;
    bool converged = false;
    double final_residual = 0.0;
    double jacobian_condition = 0.0;
};

SpectralData solve_spectral(const SpectralData& guess, int n_points, double tol,
                            const Unitarizer& un, SolveReport* report = nullptr,
                            int max_iter = 60);

// Area(f) = -12*pi*(1/6 - 2*pi*x_1*a_{-1}); the imaginary part is a
// consistency diagnostic for valid data.
cplx area(const SpectralData& d);

// H = i*(lambda_1+lambda_2)/(lambda_1-lambda_2).
cplx mean_curvature(const SymConfig& s);

// CSV of circle samples: t, x(t), a(t), a^u(x(t)).
std::string circle_samples_csv(const SpectralData& d, int n_points, const Unitarizer& un);

}  // namespace lawson
