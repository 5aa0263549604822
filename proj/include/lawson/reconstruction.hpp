#pragma once

// From solved spectral data to the immersion: the lambda-family of parallel
// frames on the 4-punctured square torus, untwisted to single-valued loops by
// the constant conjugation V(psi) = exp(psi J / 2), J = [[0,1],[-1,0]]
// (the sheet swap t -> -t acts on transports as conjugation by J, and
// V(psi + pi) = J V(psi) cancels it).  With the transport convention
// dT = -A T, the frame Phi = V^{-1} T^{-1} V has left Maurer-Cartan form
// V^{-1} A V, a lambda-Laurent series whose lambda^{-1} part is a nilpotent
// (1,0)-form, so pointwise Iwasawa factorization Phi = F B yields unitary
// frames F and the surface f = F(1) F(-1)^{-1} in SU(2) = S^3.
//
// The immersion is multivalued around the punctures: the puncture monodromy P
// has tr P = 1 and P^3 = -Id on the whole unit circle, so f closes after three
// windings.  Branch sheet k means the evaluation path is preceded by k windings
// of a fixed reference puncture loop.  The closed surface is covered exactly
// once by the base tile [0,1]^2 on sheet 0 together with the second tile
// [1,2]x[0,1] on sheets 1 and 2 (bookkeeping fixed by matching quadrature area
// against the closed-form area of the spectral data).

#include "lawson/connection.hpp"
#include "lawson/loopgroup.hpp"
#include "lawson/monodromy.hpp"
#include "lawson/spectral.hpp"

#include <array>

namespace lawson {

// Change of holomorphic frame near a branch point with local coordinate z,
// sigma(z) = -z: the branch-adapted sections t1 = s1 - (z/2) s2,
// t2 = s1 + (z/2) s2 as columns in the (s1, s2) basis, and its inverse
// s1 = (t1 + t2)/2, s2 = (t2 - t1)/z.
struct GluingFrame {
    static Mat2 to_branch(cplx z);
    static Mat2 to_plain(cplx z);
};

// Parallel transport of the rank-2 form at spectral parameter t along a path,
// expressed in the branch-adapted frame when an endpoint lies within
// glue_radius of a puncture.  The local holonomy of the form around one
// puncture is a trace-1 cone rotation of order 6; the triple winding equals
// -Id (smooth closing combined with the spin twist carried inside the form).
Mat2 desingularized_transport(const ConnectionBuilder& builder, const SpectralData& d,
                              cplx t, const TorusPath& path, double tol = 1e-10,
                              double min_clearance = 0.05, double glue_radius = 0.2);

struct SurfaceMesh {
    std::vector<Eigen::Vector4d> vertices;       // (Re a, Im a, Re b, Im b) on S^3
    std::vector<std::array<int, 3>> faces;
    std::vector<int> orbit;                      // symmetry-copy id 0, 1, 2
    std::vector<double> conformality;            // per-vertex residual, -1 if unsampled
    int copies = 1;                              // symmetry copies of the surface
    double seam_error = 0.0;                     // tile-seam mismatch diagnostic
};

class FrameComputer {
public:
    explicit FrameComputer(SpectralData d, int k_nodes = 128, int max_mode = 40,
                           double ode_tol = 1e-10, double min_clearance = 0.012);

    const SpectralData& data() const { return data_; }
    int nodes() const { return k_nodes_; }

    // Loop of frames Phi(lambda_k, z) on branch sheet `sheet`; tile selects the
    // path routing (0: by Re z, 1: base tile center, 2: second tile center).
    LoopSample loop_at(cplx z, int sheet = 0, int tile = 0) const;
    IwasawaResult factor_at(cplx z, int sheet = 0, int tile = 0) const;

    // f(z) = F(1) F(-1)^{-1}, det-normalized into SU(2); f(basepoint) = Id on
    // sheet 0.
    Mat2 sym_point(cplx z, int sheet = 0, int tile = 0) const;

    // Surface point as an R^4 vector on S^3.
    Eigen::Vector4d surface_point(cplx z, int sheet = 0, int tile = 0) const;

    // Conformality residual (|E - G| + 2|F|)/(E + G) of the first fundamental
    // form by central differences with step h.
    double conformality(cplx z, int sheet = 0, double h = 1e-3) const;

    // Eigenvector of the A-period monodromy of the Phi-frame at lambda0.
    Eigen::Vector2cd monodromy_eigenline(cplx lambda0) const;

    // Dressed surface point: f dressed by d(lambda, L(z)) with the moving
    // line L(z) = Phi(lambda0, z)^{-1} v; equals f(z) d(-1, L(z))^{-1}.
    Mat2 dressed_sym_point(cplx z, cplx lambda0, const Eigen::Vector2cd& v) const;

    // Frame at an off-circle spectral value (analytic continuation in psi).
    Mat2 frame_at(cplx z, cplx t) const;

private:
    Mat2 raw_transport(int node, cplx z, int sheet, int tile) const;

    SpectralData data_;
    ConnectionBuilder builder_;
    int k_nodes_;
    int max_mode_;
    double ode_tol_;
    double min_clearance_;
    std::vector<cplx> t_nodes_;          // t_k = exp(i pi k / K)
    std::vector<MatrixOneForm> forms_;   // per t-node
    std::vector<Mat2> center2_;          // transports z0 -> second tile center
    std::vector<Mat2> sheet_loop_;       // reference puncture-loop transports
};

// Mesh of the once-covering domain (tile [0,1]^2 on sheet 0, tile [1,2]x[0,1]
// on sheets 1 and 2) at the given grid resolution per unit square, completed
// by the three-fold rotation (a, b) -> (e^{2 pi i k/3} a, b); the total
// triangle area is `copies` times the surface area.  Vertices closer than
// clamp to a puncture are snapped onto the clamp circle (the immersion
// branches there; the cone neighborhoods carry negligible area).  With
// conformality_stride > 0 every stride-th interior vertex carries a sampled
// conformality residual (others hold -1).
SurfaceMesh build_mesh(const FrameComputer& fc, int resolution, double clamp = 0.02,
                       int conformality_stride = 0);

double mesh_area(const SurfaceMesh& m);       // total triangle area
double surface_area(const SurfaceMesh& m);    // mesh_area / copies
double max_s3_defect(const SurfaceMesh& m);

// Largest distance between the vertex set and its image under
// (a, b) -> (e^{2 pi i/3} a, b), via nearest-vertex matching.
double phi3_invariance_defect(const SurfaceMesh& m);

}  // namespace lawson
