#pragma once

// Mesh export: Wavefront OBJ with stereographically projected R^3 positions
// (raw S^3 coordinates preserved in comments) and binary little-endian PLY
// carrying the full 4-component coordinates.

#include "lawson/reconstruction.hpp"

#include <string>

namespace lawson {

// Stereographic projection of a unit vector from the pole e_{pole_axis}
// (default the last coordinate); throws if a vertex is within 1e-6 of the pole.
Eigen::Vector3d stereographic(const Eigen::Vector4d& v, int pole_axis = 3);

void write_obj(const SurfaceMesh& m, const std::string& path, int pole_axis = 3,
               const std::string& header_note = {});

void write_ply(const SurfaceMesh& m, const std::string& path,
               const std::string& header_note = {});

}  // namespace lawson
