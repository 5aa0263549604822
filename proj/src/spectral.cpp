#include "lawson/spectral.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lawson {

cplx SpectralData::x_at(cplx t) const {
    cplx sum = 0.0;
    cplx pw = t;
    cplx t2 = t * t;
    for (cplx c : x_coeffs) {
        sum += c * pw;
        pw *= t2;
    }
    return sum;
}

cplx SpectralData::a_at(cplx t) const {
    if (t == 0.0) throw std::domain_error("a_at: pole at t = 0");
    cplx sum = a_coeffs.empty() ? cplx{0.0} : a_coeffs[0] / t;
    cplx pw = t;
    cplx t2 = t * t;
    for (size_t k = 1; k < a_coeffs.size(); ++k) {
        sum += a_coeffs[k] * pw;
        pw *= t2;
    }
    return sum;
}

std::vector<cplx> collocation_nodes(int n_points) {
    if (n_points < 4 || n_points % 2)
        throw std::invalid_argument("collocation_nodes: need even n_points >= 4");
    std::vector<cplx> nodes;
    nodes.reserve(n_points / 2);
    for (int j = 0; j < n_points / 2; ++j)
        nodes.push_back(std::exp(2.0 * pi * iu * (double(j) / n_points)));
    return nodes;
}

Eigen::VectorXd reality_residual(const SpectralData& d, int n_points, const Unitarizer& un) {
    std::vector<cplx> nodes = collocation_nodes(n_points);
    Eigen::VectorXd r(2 * nodes.size());
    for (size_t j = 0; j < nodes.size(); ++j) {
        cplx xj = d.x_at(nodes[j]);
        if (on_forbidden_locus(xj, 1e-6))
            throw std::domain_error("reality_residual: x(t) on forbidden locus at node " +
                                    std::to_string(j));
        cplx diff = d.a_at(nodes[j]) - un.a_u_lifted(xj);
        r(2 * j) = diff.real();
        r(2 * j + 1) = diff.imag();
    }
    return r;
}

Eigen::VectorXd closing_residual(const SpectralData& d) {
    Eigen::VectorXd r(8);
    int k = 0;
    for (cplx t : {cplx{1.0, 0.0}, cplx{0.0, 1.0}}) {
        auto [rx, ra] = class_residual({d.x_at(t), d.a_at(t)}, closing_representative);
        r(k++) = rx.real();
        r(k++) = rx.imag();
        r(k++) = ra.real();
        r(k++) = ra.imag();
    }
    return r;
}

double forbidden_c_margin(const SpectralData& d) {
    if (d.x_coeffs.empty() || d.a_coeffs.empty()) return 0.0;
    cplx c_m1 = -pi * pi * d.x_coeffs[0] * d.a_coeffs[0];
    return std::min(std::abs(c_m1 - pi / 12.0), std::abs(c_m1 + pi / 12.0));
}

void check_spectral_invariants(const SpectralData& d, double margin) {
    if (d.x_coeffs.empty() || d.a_coeffs.empty())
        throw std::invalid_argument("spectral data: empty coefficient lists");
    if (std::abs(d.x_coeffs[0]) < 1e-12)
        throw std::domain_error("spectral data: x_1 = 0 (constant eigenline map)");
    if (forbidden_c_margin(d) < margin)
        throw std::domain_error("spectral data: c_{-1} within margin of the forbidden "
                                "exceptional values +-pi/12");
    // Unbranched-cover check on closed-disc samples |t| <= 1.
    for (int ring = 1; ring <= 8; ++ring) {
        double rho = ring / 8.0;
        for (int j = 0; j < 32; ++j) {
            cplx t = rho * std::exp(2.0 * pi * iu * (double(j) / 32.0));
            if (on_forbidden_locus(d.x_at(t), 1e-3))
                throw std::domain_error("spectral data: x(t) meets the forbidden locus "
                                        "inside the unit disc");
        }
    }
}

namespace {

Eigen::VectorXd pack(const SpectralData& d) {
    size_t n = d.x_coeffs.size() + d.a_coeffs.size();
    Eigen::VectorXd v(2 * n);
    size_t k = 0;
    for (cplx c : d.x_coeffs) {
        v(k++) = c.real();
        v(k++) = c.imag();
    }
    for (cplx c : d.a_coeffs) {
        v(k++) = c.real();
        v(k++) = c.imag();
    }
    return v;
}

SpectralData unpack(const Eigen::VectorXd& v, size_t nx, size_t na) {
    SpectralData d;
    size_t k = 0;
    for (size_t i = 0; i < nx; ++i, k += 2) d.x_coeffs.emplace_back(v(k), v(k + 1));
    for (size_t i = 0; i < na; ++i, k += 2) d.a_coeffs.emplace_back(v(k), v(k + 1));
    return d;
}

// Real 2x2 block of multiplication by the complex scalar w.
Eigen::Matrix2d mul_block(cplx w) {
    Eigen::Matrix2d m;
    m << w.real(), -w.imag(), w.imag(), w.real();
    return m;
}

// Structured Jacobian of [reality; closing] with respect to the packed
// coefficients.  The residual is linear in the a-coefficients; the
// x-dependence enters only through the real 2x2 derivative of a^u at each
// node (central differences, 4 extra a^u solves per node), so the cost is
// independent of the truncation order.
Eigen::MatrixXd structured_jacobian(const SpectralData& d, int n_points,
                                    const Unitarizer& un) {
    const size_t nx = d.x_coeffs.size(), na = d.a_coeffs.size();
    std::vector<cplx> nodes = collocation_nodes(n_points);
    const size_t rows = 2 * nodes.size() + 8, cols = 2 * (nx + na);
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(rows, cols);
    const double h = 1e-6;
    for (size_t j = 0; j < nodes.size(); ++j) {
        cplx t = nodes[j], xj = d.x_at(t);
        cplx dre = (un.a_u_lifted(xj + h) - un.a_u_lifted(xj - h)) / (2 * h);
        cplx dim = (un.a_u_lifted(xj + h * iu) - un.a_u_lifted(xj - h * iu)) / (2 * h);
        Eigen::Matrix2d D;
        D << dre.real(), dim.real(), dre.imag(), dim.imag();
        cplx pw = t;
        for (size_t k = 0; k < nx; ++k, pw *= t * t)
            J.block<2, 2>(2 * j, 2 * k) = -D * mul_block(pw);
        J.block<2, 2>(2 * j, 2 * nx) = mul_block(1.0 / t);
        pw = t;
        for (size_t k = 1; k < na; ++k, pw *= t * t)
            J.block<2, 2>(2 * j, 2 * (nx + k)) = mul_block(pw);
    }
    // Closing rows: class_residual is locally (identity - lattice shift), so
    // the derivative is the plain series derivative at t = 1, i.
    size_t r0 = 2 * nodes.size();
    int tc = 0;
    for (cplx t : {cplx{1.0, 0.0}, cplx{0.0, 1.0}}) {
        cplx pw = t;
        for (size_t k = 0; k < nx; ++k, pw *= t * t)
            J.block<2, 2>(r0 + 4 * tc, 2 * k) = mul_block(pw);
        J.block<2, 2>(r0 + 4 * tc + 2, 2 * nx) = mul_block(1.0 / t);
        pw = t;
        for (size_t k = 1; k < na; ++k, pw *= t * t)
            J.block<2, 2>(r0 + 4 * tc + 2, 2 * (nx + k)) = mul_block(pw);
        ++tc;
    }
    return J;
}

}  // namespace

SpectralData solve_spectral(const SpectralData& guess, int n_points, double tol,
                            const Unitarizer& un, SolveReport* report, int max_iter) {
    SpectralData d = guess;
    // Project the initial guess away from the forbidden pole coefficient.
    if (forbidden_c_margin(d) < 1e-4 && !d.a_coeffs.empty()) {
        cplx dir = (d.a_coeffs[0] == 0.0) ? cplx{1.0, 0.0}
                                          : d.a_coeffs[0] / std::abs(d.a_coeffs[0]);
        d.a_coeffs[0] += 1e-3 * dir;
    }
    check_spectral_invariants(d);

    const size_t nx = d.x_coeffs.size(), na = d.a_coeffs.size();
    // Closing is exactly satisfiable (it is linear in the coefficients), so
    // weight its rows heavily: in the overdetermined regime plain least
    // squares would trade closing error against the reality truncation floor,
    // and the reconstructed surface only closes when these conditions hold.
    const double closing_weight = 100.0;
    auto residual = [&](const SpectralData& s) -> Eigen::VectorXd {
        Eigen::VectorXd r1 = reality_residual(s, n_points, un);
        Eigen::VectorXd r2 = closing_weight * closing_residual(s);
        Eigen::VectorXd r(r1.size() + r2.size());
        r << r1, r2;
        return r;
    };

    Eigen::VectorXd v = pack(d);
    Eigen::VectorXd r = residual(d);
    double rn = r.lpNorm<Eigen::Infinity>();
    SolveReport rep;
    rep.residual_history.push_back(rn);
    double mu = 1e-4;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd;

    int it = 0;
    for (; it < max_iter && rn > tol; ++it) {
        Eigen::MatrixXd J = structured_jacobian(unpack(v, nx, na), n_points, un);
        J.bottomRows(8) *= closing_weight;
        svd.compute(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
        rep.jacobian_condition =
            svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);

        bool accepted = false;
        for (int attempt = 0; attempt < 12; ++attempt) {
            Eigen::MatrixXd H = J.transpose() * J;
            H.diagonal().array() += mu;
            Eigen::VectorXd delta = H.ldlt().solve(-J.transpose() * r);
            Eigen::VectorXd vt = v + delta;
            SpectralData dt = unpack(vt, nx, na);
            try {
                Eigen::VectorXd rt = residual(dt);
                double rtn = rt.lpNorm<Eigen::Infinity>();
                if (rtn < rn) {
                    v = vt;
                    r = rt;
                    rn = rtn;
                    mu = std::max(mu / 3.0, 1e-12);
                    accepted = true;
                    break;
                }
            } catch (const std::domain_error&) {
                // step left the admissible region; retreat
            }
            mu *= 4.0;
        }
        rep.residual_history.push_back(rn);
        if (!accepted) break;
        // Stall at the truncation floor: two consecutive sub-0.1% improvements.
        size_t n = rep.residual_history.size();
        if (n >= 3 && rep.residual_history[n - 2] < 1.001 * rn &&
            rep.residual_history[n - 3] < 1.001 * rep.residual_history[n - 2])
            break;
    }
    rep.iterations = it;
    rep.final_residual = rn;
    rep.converged = rn <= tol;
    if (report) *report = rep;
    if (!rep.converged)
        throw std::runtime_error("solve_spectral: no convergence (final residual " +
                                 std::to_string(rn) + ")");
    SpectralData out = unpack(v, nx, na);
    check_spectral_invariants(out);
    return out;
}

cplx area(const SpectralData& d) {
    cplx x1 = d.x_coeffs.empty() ? cplx{0.0} : d.x_coeffs[0];
    cplx am1 = d.a_coeffs.empty() ? cplx{0.0} : d.a_coeffs[0];
    return -12.0 * pi * (1.0 / 6.0 - 2.0 * pi * x1 * am1);
}

cplx mean_curvature(const SymConfig& s) {
    if (std::abs(s.lambda_1 - s.lambda_2) < 1e-14)
        throw std::invalid_argument("mean_curvature: equal Sym points");
    if (std::abs(std::abs(s.lambda_1) - 1.0) > 1e-12 ||
        std::abs(std::abs(s.lambda_2) - 1.0) > 1e-12)
        throw std::invalid_argument("mean_curvature: Sym points must be unimodular");
    return iu * (s.lambda_1 + s.lambda_2) / (s.lambda_1 - s.lambda_2);
}

std::string circle_samples_csv(const SpectralData& d, int n_points, const Unitarizer& un) {
    std::ostringstream os;
    os.precision(17);
    os << "re_t,im_t,re_x,im_x,re_a,im_a,re_au,im_au\r\n";
    for (cplx t : collocation_nodes(n_points)) {
        cplx x = d.x_at(t), a = d.a_at(t), au = un.a_u_lifted(x);
        os << t.real() << ',' << t.imag() << ',' << x.real() << ',' << x.imag() << ','
           << a.real() << ',' << a.imag() << ',' << au.real() << ',' << au.imag() << "\r\n";
    }
    return os.str();
}

}  // namespace lawson
