#include "lawson/monodromy.hpp"

#include "lawson/ode.hpp"

#include <cmath>
#include <stdexcept>

namespace lawson {

namespace {

double segment_lattice_distance(cplx p, cplx q) {
    // Sample-free bound: check distance from the segment to each lattice point
    // near its bounding box.
    double best = 1e9;
    int x0 = (int)std::floor(std::min(p.real(), q.real())) - 1;
    int x1 = (int)std::ceil(std::max(p.real(), q.real())) + 1;
    int y0 = (int)std::floor(std::min(p.imag(), q.imag())) - 1;
    int y1 = (int)std::ceil(std::max(p.imag(), q.imag())) + 1;
    cplx d = q - p;
    double len2 = std::norm(d);
    for (int ix = x0; ix <= x1; ++ix) {
        for (int iy = y0; iy <= y1; ++iy) {
            cplx l{double(ix), double(iy)};
            double t = len2 > 0 ? std::clamp(((l - p) * std::conj(d)).real() / len2, 0.0, 1.0)
                                : 0.0;
            best = std::min(best, std::abs(p + t * d - l));
        }
    }
    return best;
}

}  // namespace

double TorusPath::clearance() const {
    double best = 1e9;
    for (size_t i = 0; i + 1 < waypoints.size(); ++i)
        best = std::min(best, segment_lattice_distance(waypoints[i], waypoints[i + 1]));
    return best;
}

TorusPath segment_path(cplx from, cplx to) {
    return {{from, to}};
}

TorusPath puncture_loop(cplx center, double radius, cplx base, int segments) {
    TorusPath path;
    cplx u = (base - center) / std::abs(base - center);
    double phi0 = std::arg(u);
    // Circumscribed polygon: vertices at radius r/cos(pi/n) so every chord
    // stays at distance >= r from the center.
    double rv = radius / std::cos(pi / segments);
    path.waypoints.push_back(base);
    for (int k = 0; k <= segments; ++k) {
        double phi = phi0 + 2.0 * pi * (k + 0.5) / segments - pi / segments;
        path.waypoints.push_back(center + rv * std::exp(iu * phi));
    }
    path.waypoints.push_back(base);
    return path;
}

Mat2 transport(const MatrixOneForm& form, const TorusPath& path, double tol,
               double min_clearance) {
    if (tol < 1e-13 || tol > 1e-6)
        throw std::invalid_argument("transport: tol outside [1e-13, 1e-6]");
    if (!form.pole_set.empty() && path.clearance() < min_clearance - 1e-9)
        throw std::domain_error("transport: path clearance below minimum");
    Mat2 y = Mat2::Identity();
    for (size_t i = 0; i + 1 < path.waypoints.size(); ++i) {
        cplx p = path.waypoints[i];
        cplx d = path.waypoints[i + 1] - p;
        if (d == 0.0) continue;
        auto rhs = [&form, p, d](double s) -> Mat2 {
            cplx z = p + s * d;
            return -(form.dz_part(z) * d + form.dzbar_part(z) * std::conj(d));
        };
        y = integrate_linear_dopri5(rhs, y, tol) ;
    }
    return y;
}

std::pair<Mat2, Mat2> period_monodromy(const MatrixOneForm& form, double tol) {
    cplx z0 = monodromy_basepoint;
    Mat2 ma = transport(form, segment_path(z0, z0 + 2.0), tol);
    Mat2 mb = transport(form, segment_path(z0, z0 + 2.0 * iu), tol);
    return {ma, mb};
}

MonodromyRep torus_monodromy(const ConnectionBuilder& builder, const AffineConnCoord& p,
                             double tol) {
    MatrixOneForm form = builder.build_form(p);
    MonodromyRep rep;
    rep.basepoint = monodromy_basepoint;
    auto [ma, mb] = period_monodromy(form, tol);
    rep.M_A = ma;
    rep.M_B = mb;
    // Puncture loops use the translated representatives inside the cut square
    // [1/2, 5/2]^2 (classes mod 2Z+2iZ: (2,2)~0, (1,2)~1, (2,1)~i, (1,1)~1+i),
    // each based through the tree of grid segments below.  Tree basing keeps
    // the loops conjugation-free, so the surface-group product relation holds
    // at matrix level for the planar ordering.
    struct Spoke {
        cplx center;
        std::vector<cplx> tail;  // waypoints from the basepoint to the block corner
    };
    const cplx z0 = rep.basepoint;
    const Spoke spokes[4] = {
        {cplx{2, 2}, {z0, cplx{1.5, 0.5}, cplx{1.5, 1.5}}},  // class 0
        {cplx{1, 2}, {z0, cplx{0.5, 1.5}}},                  // class 1
        {cplx{2, 1}, {z0, cplx{1.5, 0.5}}},                  // class i
        {cplx{1, 1}, {z0}},                                  // class 1+i
    };
    for (int i = 0; i < 4; ++i) {
        TorusPath loop = puncture_loop(spokes[i].center, 0.25, spokes[i].tail.back());
        TorusPath full;
        full.waypoints = spokes[i].tail;
        full.waypoints.insert(full.waypoints.end(), loop.waypoints.begin() + 1,
                              loop.waypoints.end());
        for (size_t k = spokes[i].tail.size() - 1; k-- > 0;)
            full.waypoints.push_back(spokes[i].tail[k]);
        rep.P[i] = transport(form, full, tol, 0.24);
    }
    return rep;
}

std::pair<cplx, cplx> abelian_monodromy(const AffineConnCoord& p) {
    // Y' = -(pi*a*w - pi*x*conj(w))*Y integrated over the period w.
    cplx hol_a = std::exp(-(2.0 * pi * p.a - 2.0 * pi * p.x));
    cplx hol_b = std::exp(-(2.0 * pi * iu * p.a + 2.0 * pi * iu * p.x));
    return {hol_a, hol_b};
}

std::pair<double, double> unitarity_defect(const MonodromyRep& rep) {
    Mat2 comm = rep.M_A * rep.M_B * rep.M_A.inverse() * rep.M_B.inverse();
    if (max_abs(comm - Mat2::Identity()) < 1e-6 || max_abs(comm + Mat2::Identity()) < 1e-6)
        throw std::domain_error("unitarity_defect: reducible representation");
    return {rep.M_A.trace().imag(), rep.M_B.trace().imag()};
}

bool su2_realizable(const MonodromyRep& rep, double tol) {
    cplx ta = rep.M_A.trace();
    cplx tb = rep.M_B.trace();
    cplx tab = (rep.M_A * rep.M_B).trace();
    if (std::abs(ta.imag()) > tol || std::abs(tb.imag()) > tol || std::abs(tab.imag()) > tol)
        return false;
    double x = ta.real(), y = tb.real(), z = tab.real();
    if (std::abs(x) > 2.0 + tol || std::abs(y) > 2.0 + tol || std::abs(z) > 2.0 + tol)
        return false;
    double fricke = x * x + y * y + z * z - x * y * z - 4.0;
    return fricke <= tol;
}

}  // namespace lawson
