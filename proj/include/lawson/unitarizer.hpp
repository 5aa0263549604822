#pragma once

// Unitarizing section a^u(x): the diagonal coefficient a for which the
// monodromy of the rank-2 form has real period-loop traces (Newton on the
// two-real-equation defect), plus the closed-form predictor
//   a~(x) = -(1/12pi) theta'(-2x)/theta(-2x) + (1/12pi) theta'(2x)/theta(2x)
//           + x/3 + 2 conj(x)/3
// and the decomposition a^u = a~ + b.

#include "lawson/connection.hpp"
#include "lawson/monodromy.hpp"

#include <optional>
#include <vector>

namespace lawson {

struct AuSample {
    JacobianCoord x{};
    cplx a_u{};
    double defect_norm = 0.0;
    bool su2_ok = false;
    int iterations = 0;
};

struct TildeDecomposition {
    cplx a_tilde{};
    cplx b{};
};

class Unitarizer {
public:
    explicit Unitarizer(ConnectionBuilder builder = ConnectionBuilder{},
                        double ode_tol = 1e-10)
        : builder_(std::move(builder)), ode_tol_(ode_tol) {}

    const ConnectionBuilder& builder() const { return builder_; }

    cplx a_tilde(cplx x) const;

    // Newton iteration on (Im tr M_A, Im tr M_B) over a in C.  Default guess
    // (std::nullopt) is a_tilde(x).
    AuSample solve_au(cplx x, std::optional<cplx> a_guess = std::nullopt,
                      double tol = 1e-9, int max_iter = 30) const;

    TildeDecomposition extract_b(cplx x) const;

    // a^u continued off the fundamental cell by the coupled lattice action
    // (solves at the reduced point, shifts back).  Results are cached; nearby
    // cached solutions seed the Newton iteration (continuation).
    cplx a_u_lifted(cplx x) const;

    void clear_cache() const { cache_.clear(); }

private:
    Eigen::Vector3d defect_at(cplx x, cplx a) const;

    ConnectionBuilder builder_;
    double ode_tol_;
    mutable std::vector<std::pair<cplx, cplx>> cache_;  // (reduced x, a_u)
};

// CSV emitter for a^u tables: columns re_x, im_x, re_au, im_au, defect, su2_ok.
std::string au_table_csv(const std::vector<AuSample>& rows);

}  // namespace lawson
