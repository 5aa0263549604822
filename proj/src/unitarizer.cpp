#include "lawson/unitarizer.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lawson {

cplx Unitarizer::a_tilde(cplx x) const {
    const ThetaFn& th = builder_.theta();
    cplx two_x = 2.0 * x;
    if (dist_to_integer_lattice(two_x) < th.pole_exclusion())
        throw std::domain_error("a_tilde: 2x on the theta zero lattice");
    const double k = 1.0 / (12.0 * pi);
    cplx t1 = -k * th.theta_prime(-two_x) / th.theta(-two_x);
    cplx t2 = k * th.theta_prime(two_x) / th.theta(two_x);
    return t1 + t2 + x / 3.0 + 2.0 * std::conj(x) / 3.0;
}

Eigen::Vector3d Unitarizer::defect_at(cplx x, cplx a) const {
    // (Im tr M_A, Im tr M_B, Im tr M_A M_B).  The third trace costs only a
    // matrix product; including it keeps the Gauss-Newton system full rank on
    // the walls Re x = 1/4, Im x = 1/4, where the first two equations
    // degenerate (they vanish identically along a line of a-values there).
    MatrixOneForm form = builder_.build_form({x, a});
    auto [ma, mb] = period_monodromy(form, ode_tol_);
    return {ma.trace().imag(), mb.trace().imag(), (ma * mb).trace().imag()};
}

AuSample Unitarizer::solve_au(cplx x, std::optional<cplx> a_guess, double tol,
                              int max_iter) const {
    if (on_forbidden_locus(x))
        throw std::domain_error("solve_au: x == 0 mod Lambda'");
    cplx a = a_guess ? *a_guess : a_tilde(x);
    const double h = 1e-6;  // central-difference step on Re a, Im a

    Eigen::Vector3d r = defect_at(x, a);
    double rn = r.norm();
    int iter = 0;
    for (; iter < max_iter && rn > tol; ++iter) {
        Eigen::Matrix<double, 3, 2> J;
        J.col(0) = (defect_at(x, a + h) - defect_at(x, a - h)) / (2 * h);
        J.col(1) = (defect_at(x, a + h * iu) - defect_at(x, a - h * iu)) / (2 * h);
        Eigen::Vector2d delta = J.colPivHouseholderQr().solve(-r);
        if (!delta.allFinite())
            throw std::runtime_error("solve_au: singular Newton Jacobian");
        cplx step{delta(0), delta(1)};
        // Damped update: halve until the residual decreases.
        double lambda = 1.0;
        for (int back = 0; back < 8; ++back) {
            Eigen::Vector3d rt = defect_at(x, a + lambda * step);
            double rtn = rt.norm();
            if (rtn < rn || back == 7) {
                a += lambda * step;
                r = rt;
                rn = rtn;
                break;
            }
            lambda *= 0.5;
        }
    }
    if (rn > tol)
        throw std::runtime_error("solve_au: no convergence after max iterations");

    AuSample out;
    out.x = reduce(x);
    out.a_u = a;
    out.defect_norm = rn;
    out.iterations = iter;
    MonodromyRep rep = torus_monodromy(builder_, {x, a}, ode_tol_);
    out.su2_ok = su2_realizable(rep, 1e-5);
    return out;
}

TildeDecomposition Unitarizer::extract_b(cplx x) const {
    cplx at = a_tilde(x);
    AuSample s = solve_au(x);
    return {at, s.a_u - at};
}

cplx Unitarizer::a_u_lifted(cplx x) const {
    JacobianCoord red = reduce(x);
    // Coupled lattice lift: x = red + m/2 + n*i/2  =>  a^u(x) = a^u(red) + m/2 - n*i/2.
    long m = std::lround(2.0 * (x.real() - red.x.real()));
    long n = std::lround(2.0 * (x.imag() - red.x.imag()));
    cplx lift{0.5 * m, -0.5 * n};

    for (const auto& [key, val] : cache_)
        if (std::abs(key - red.x) < 1e-12) return val + lift;

    // Continuation: nearest cached solution (shifted to the reduced cell by
    // the coupled action) seeds Newton; fall back to a_tilde.
    std::optional<cplx> guess;
    double best = 1e9;
    for (const auto& [key, val] : cache_) {
        double dist = std::abs(key - red.x);
        if (dist < best) {
            best = dist;
            guess = val + (a_tilde(red.x) - a_tilde(key));  // predictor along a_tilde
        }
    }
    AuSample s = solve_au(red.x, guess);
    cache_.emplace_back(red.x, s.a_u);
    return s.a_u + lift;
}

std::string au_table_csv(const std::vector<AuSample>& rows) {
    std::ostringstream os;
    os.precision(17);
    os << "re_x,im_x,re_au,im_au,defect,su2_ok\r\n";
    for (const auto& r : rows) {
        os << r.x.x.real() << ',' << r.x.x.imag() << ',' << r.a_u.real() << ','
           << r.a_u.imag() << ',' << r.defect_norm << ',' << (r.su2_ok ? 1 : 0) << "\r\n";
    }
    return os.str();
}

}  // namespace lawson
