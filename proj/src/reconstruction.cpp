#include "lawson/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace lawson {

namespace {

constexpr cplx tile2_center{1.5, 0.5};
constexpr cplx sheet_puncture{1.0, 0.0};

Mat2 v_rotation(cplx psi) {
    Mat2 v;
    cplx c = std::cos(psi / 2.0), s = std::sin(psi / 2.0);
    v << c, s, -s, c;
    return v;
}

cplx nearest_pole(cplx z) { return cplx{std::round(z.real()), std::round(z.imag())}; }

double lattice_distance(cplx z) { return std::abs(z - nearest_pole(z)); }

Eigen::Vector4d flatten(const Mat2& f) {
    Eigen::Vector4d v;
    v << f(0, 0).real(), f(0, 0).imag(), f(0, 1).real(), f(0, 1).imag();
    return v;
}

void parallel_for(int n, const std::function<void(int)>& body) {
    int workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, std::max(1, n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += workers) body(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace

// ---------------------------------------------------------------------------
// Gluing frame
// ---------------------------------------------------------------------------

Mat2 GluingFrame::to_branch(cplx z) {
    Mat2 m;
    m << 1.0, 1.0, -z / 2.0, z / 2.0;
    return m;
}

Mat2 GluingFrame::to_plain(cplx z) {
    if (std::abs(z) < 1e-300)
        throw std::invalid_argument("GluingFrame::to_plain: z = 0 is the branch point");
    Mat2 m;
    m << 0.5, -1.0 / z, 0.5, 1.0 / z;
    return m;
}

Mat2 desingularized_transport(const ConnectionBuilder& builder, const SpectralData& d,
                              cplx t, const TorusPath& path, double tol,
                              double min_clearance, double glue_radius) {
    if (std::abs(t) < 1e-300)
        throw std::invalid_argument("desingularized_transport: t = 0");
    if (path.waypoints.size() < 2)
        throw std::invalid_argument("desingularized_transport: degenerate path");
    MatrixOneForm form = builder.build_form({d.x_at(t), d.a_at(t)});
    Mat2 T = transport(form, path, tol, min_clearance);
    cplx start = path.waypoints.front(), end = path.waypoints.back();
    cplx ps = nearest_pole(start), pe = nearest_pole(end);
    if (std::abs(start - ps) < glue_radius) T = T * GluingFrame::to_branch(start - ps);
    if (std::abs(end - pe) < glue_radius) T = GluingFrame::to_plain(end - pe) * T;
    return T;
}

// ---------------------------------------------------------------------------
// Frame computer
// ---------------------------------------------------------------------------

FrameComputer::FrameComputer(SpectralData d, int k_nodes, int max_mode, double ode_tol,
                             double min_clearance)
    : data_(std::move(d)),
      k_nodes_(k_nodes),
      max_mode_(max_mode),
      ode_tol_(ode_tol),
      min_clearance_(min_clearance) {
    if (k_nodes_ < 4 || (k_nodes_ & (k_nodes_ - 1)) != 0)
        throw std::invalid_argument("FrameComputer: k_nodes must be a power of two >= 4");
    t_nodes_.resize(k_nodes_);
    forms_.reserve(k_nodes_);
    for (int k = 0; k < k_nodes_; ++k) {
        t_nodes_[k] = std::exp(iu * pi * (double(k) / k_nodes_));
        forms_.push_back(builder_.build_form({data_.x_at(t_nodes_[k]), data_.a_at(t_nodes_[k])}));
    }
    center2_.assign(k_nodes_, Mat2::Identity());
    sheet_loop_.assign(k_nodes_, Mat2::Identity());
    TorusPath to2 = segment_path(monodromy_basepoint, tile2_center);
    TorusPath ploop = puncture_loop(sheet_puncture, 0.3, monodromy_basepoint);
    parallel_for(k_nodes_, [&](int k) {
        center2_[k] = transport(forms_[k], to2, ode_tol_, min_clearance_);
        sheet_loop_[k] = transport(forms_[k], ploop, ode_tol_, 0.1);
    });
}

Mat2 FrameComputer::raw_transport(int node, cplx z, int sheet, int tile) const {
    if (tile == 0) tile = z.real() > 1.0 ? 2 : 1;
    Mat2 T;
    if (tile == 2) {
        TorusPath leg{{tile2_center, cplx{1.5, z.imag()}, z}};
        T = transport(forms_[node], leg, ode_tol_, min_clearance_) * center2_[node];
    } else {
        TorusPath leg{{monodromy_basepoint, cplx{0.5, z.imag()}, z}};
        T = transport(forms_[node], leg, ode_tol_, min_clearance_);
    }
    for (int q = 0; q < sheet % 3; ++q) T = T * sheet_loop_[node];
    return T;
}

LoopSample FrameComputer::loop_at(cplx z, int sheet, int tile) const {
    LoopSample s;
    s.lambda_nodes = loop_nodes(k_nodes_);
    s.frames.resize(k_nodes_);
    for (int k = 0; k < k_nodes_; ++k) {
        Mat2 T = raw_transport(k, z, sheet, tile);
        Mat2 V = v_rotation(pi * double(k) / k_nodes_);
        s.frames[k] = V.inverse() * T.inverse() * V;
    }
    return s;
}

IwasawaResult FrameComputer::factor_at(cplx z, int sheet, int tile) const {
    return unitarize_loop(loop_at(z, sheet, tile), max_mode_, 1e-2);
}

Mat2 FrameComputer::sym_point(cplx z, int sheet, int tile) const {
    IwasawaResult iw = factor_at(z, sheet, tile);
    Mat2 f = iw.unitary.frames[0] * iw.unitary.frames[k_nodes_ / 2].inverse();
    return f / std::sqrt(f.determinant());
}

Eigen::Vector4d FrameComputer::surface_point(cplx z, int sheet, int tile) const {
    return flatten(sym_point(z, sheet, tile));
}

double FrameComputer::conformality(cplx z, int sheet, double h) const {
    Eigen::Vector4d fx =
        (surface_point(z + h, sheet) - surface_point(z - h, sheet)) / (2.0 * h);
    Eigen::Vector4d fy =
        (surface_point(z + h * iu, sheet) - surface_point(z - h * iu, sheet)) / (2.0 * h);
    double e = fx.squaredNorm(), g = fy.squaredNorm(), cross = fx.dot(fy);
    return (std::abs(e - g) + 2.0 * std::abs(cross)) / (e + g);
}

Mat2 FrameComputer::frame_at(cplx z, cplx t) const {
    if (std::abs(t) < 1e-300) throw std::invalid_argument("frame_at: t = 0");
    MatrixOneForm form = builder_.build_form({data_.x_at(t), data_.a_at(t)});
    TorusPath p = z.real() > 1.0
                      ? TorusPath{{monodromy_basepoint, tile2_center, z}}
                      : segment_path(monodromy_basepoint, z);
    Mat2 T = transport(form, p, ode_tol_, min_clearance_);
    Mat2 V = v_rotation(-iu * std::log(t));
    return V.inverse() * T.inverse() * V;
}

Eigen::Vector2cd FrameComputer::monodromy_eigenline(cplx lambda0) const {
    cplx t0 = std::sqrt(lambda0);
    MatrixOneForm form = builder_.build_form({data_.x_at(t0), data_.a_at(t0)});
    Mat2 TA = transport(form, segment_path(monodromy_basepoint, monodromy_basepoint + 2.0),
                        ode_tol_, min_clearance_);
    Mat2 V = v_rotation(-iu * std::log(t0));
    Mat2 M = V.inverse() * TA.inverse() * V;
    Eigen::ComplexEigenSolver<Mat2> es(M);
    int pick = std::abs(es.eigenvalues()(0)) >= std::abs(es.eigenvalues()(1)) ? 0 : 1;
    return es.eigenvectors().col(pick);
}

Mat2 FrameComputer::dressed_sym_point(cplx z, cplx lambda0, const Eigen::Vector2cd& v) const {
    cplx t0 = std::sqrt(lambda0);
    Eigen::Vector2cd line = frame_at(z, t0).inverse() * v;
    Mat2 f = sym_point(z) * dressing_factor(-1.0, lambda0, line).inverse();
    return f / std::sqrt(f.determinant());
}

// ---------------------------------------------------------------------------
// Mesh
// ---------------------------------------------------------------------------

SurfaceMesh build_mesh(const FrameComputer& fc, int resolution, double clamp,
                       int conformality_stride) {
    if (resolution < 2) throw std::invalid_argument("build_mesh: resolution too small");
    if (clamp < 0.01 || clamp > 0.2)
        throw std::invalid_argument("build_mesh: clamp out of range");
    const int n = resolution;
    const double h = 1.0 / n;

    // Once-covering domain: three grid pieces (tile, sheet).
    struct Piece {
        double x0;
        int sheet, tile;
    };
    const std::array<Piece, 3> pieces = {{{0.0, 0, 1}, {1.0, 1, 2}, {1.0, 2, 2}}};

    std::vector<cplx> pts;
    std::vector<int> sheet_of, tile_of;
    std::vector<std::array<int, 3>> base_faces;
    for (const Piece& pc : pieces) {
        int off = int(pts.size());
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n; ++i) {
                cplx z{pc.x0 + i * h, j * h};
                if (double ld = lattice_distance(z); ld < clamp) {
                    // Snap puncture-adjacent vertices onto the clamp circle.
                    cplx pole = nearest_pole(z);
                    cplx dir = ld > 1e-12 ? (z - pole) / ld
                                          : (cplx{pc.x0 + 0.5, 0.5} - pole) /
                                                std::abs(cplx{pc.x0 + 0.5, 0.5} - pole);
                    z = pole + clamp * dir;
                }
                pts.push_back(z);
                sheet_of.push_back(pc.sheet);
                tile_of.push_back(pc.tile);
            }
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                int v00 = off + j * (n + 1) + i, v10 = v00 + 1;
                int v01 = v00 + (n + 1), v11 = v01 + 1;
                base_faces.push_back({v00, v10, v11});
                base_faces.push_back({v00, v11, v01});
            }
    }

    const int base_count = int(pts.size());
    std::vector<Eigen::Vector4d> base(base_count);
    parallel_for(base_count, [&](int k) {
        base[k] = fc.surface_point(pts[k], sheet_of[k], tile_of[k]);
    });

    // Seam diagnostic: the sheet-0 column Re z = 1 evaluated through both tile
    // centers must agree (the path difference is contractible).
    double seam = 0.0;
    {
        std::vector<double> diffs(n + 1, 0.0);
        parallel_for(n + 1, [&](int j) {
            int v = j * (n + 1) + n;  // right edge of piece 0
            diffs[size_t(j)] = (fc.surface_point(pts[v], 0, 2) - base[v]).norm();
        });
        for (double dv : diffs) seam = std::max(seam, dv);
    }

    std::vector<double> conf(base_count, -1.0);
    if (conformality_stride > 0) {
        std::vector<int> sample;
        for (int k = 0; k < base_count; ++k) {
            // Interior only: the stencil must stay clear of the cone points.
            if (lattice_distance(pts[k]) < 0.1) continue;
            if (k % conformality_stride == 0) sample.push_back(k);
        }
        parallel_for(int(sample.size()), [&](int k) {
            int v = sample[size_t(k)];
            conf[v] = fc.conformality(pts[v], sheet_of[v]);
        });
    }

    // Complete by the three-fold ambient rotation (a, b) -> (e^{2 pi i k/3} a, b).
    SurfaceMesh mesh;
    mesh.copies = 3;
    mesh.seam_error = seam;
    for (int copy = 0; copy < 3; ++copy) {
        cplx w = std::exp(2.0 * pi * iu * (double(copy) / 3.0));
        int off = copy * base_count;
        for (const Eigen::Vector4d& p : base) {
            cplx a = cplx{p(0), p(1)} * w;
            mesh.vertices.push_back(Eigen::Vector4d{a.real(), a.imag(), p(2), p(3)});
            mesh.orbit.push_back(copy);
        }
        mesh.conformality.insert(mesh.conformality.end(), conf.begin(), conf.end());
        for (const auto& f : base_faces)
            mesh.faces.push_back({f[0] + off, f[1] + off, f[2] + off});
    }
    return mesh;
}

double mesh_area(const SurfaceMesh& m) {
    double area = 0.0;
    for (const auto& f : m.faces) {
        Eigen::Vector4d u = m.vertices[size_t(f[1])] - m.vertices[size_t(f[0])];
        Eigen::Vector4d v = m.vertices[size_t(f[2])] - m.vertices[size_t(f[0])];
        double g = u.squaredNorm() * v.squaredNorm() - std::pow(u.dot(v), 2);
        area += 0.5 * std::sqrt(std::max(0.0, g));
    }
    return area;
}

double surface_area(const SurfaceMesh& m) { return mesh_area(m) / std::max(1, m.copies); }

double max_s3_defect(const SurfaceMesh& m) {
    double worst = 0.0;
    for (const auto& v : m.vertices) worst = std::max(worst, std::abs(v.norm() - 1.0));
    return worst;
}

double phi3_invariance_defect(const SurfaceMesh& m) {
    cplx w = std::exp(2.0 * pi * iu / 3.0);
    double worst = 0.0;
    for (const auto& p : m.vertices) {
        cplx a = cplx{p(0), p(1)} * w;
        Eigen::Vector4d q{a.real(), a.imag(), p(2), p(3)};
        double best = 1e300;
        for (const auto& other : m.vertices) best = std::min(best, (other - q).norm());
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace lawson
