#include "lawson/mesh_io.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace lawson {

Eigen::Vector3d stereographic(const Eigen::Vector4d& v, int pole_axis) {
    if (pole_axis < 0 || pole_axis > 3)
        throw std::invalid_argument("stereographic: pole_axis out of range");
    double w = v(pole_axis);
    if (std::abs(1.0 - w) < 1e-6)
        throw std::runtime_error("stereographic: vertex at the projection pole");
    Eigen::Vector3d out;
    int j = 0;
    for (int i = 0; i < 4; ++i)
        if (i != pole_axis) out(j++) = v(i) / (1.0 - w);
    return out;
}

void write_obj(const SurfaceMesh& m, const std::string& path, int pole_axis,
               const std::string& header_note) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_obj: cannot open " + path);
    f.precision(12);
    if (!header_note.empty()) f << "# " << header_note << "\n";
    f << "# stereographic projection from unit-sphere pole axis " << pole_axis << "\n";
    for (const auto& v : m.vertices) {
        Eigen::Vector3d p = stereographic(v, pole_axis);
        f << "# s3 " << v(0) << " " << v(1) << " " << v(2) << " " << v(3) << "\n";
        f << "v " << p(0) << " " << p(1) << " " << p(2) << "\n";
    }
    for (const auto& face : m.faces)
        f << "f " << face[0] + 1 << " " << face[1] + 1 << " " << face[2] + 1 << "\n";
    if (!f) throw std::runtime_error("write_obj: write failed for " + path);
}

void write_ply(const SurfaceMesh& m, const std::string& path,
               const std::string& header_note) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_ply: cannot open " + path);
    f << "ply\nformat binary_little_endian 1.0\n";
    if (!header_note.empty()) f << "comment " << header_note << "\n";
    f << "element vertex " << m.vertices.size() << "\n"
      << "property float x\nproperty float y\nproperty float z\nproperty float w\n"
      << "element face " << m.faces.size() << "\n"
      << "property list uchar int vertex_indices\n"
      << "end_header\n";
    for (const auto& v : m.vertices) {
        float c[4] = {float(v(0)), float(v(1)), float(v(2)), float(v(3))};
        f.write(reinterpret_cast<const char*>(c), sizeof c);
    }
    for (const auto& face : m.faces) {
        std::uint8_t count = 3;
        std::int32_t idx[3] = {face[0], face[1], face[2]};
        f.write(reinterpret_cast<const char*>(&count), 1);
        f.write(reinterpret_cast<const char*>(idx), sizeof idx);
    }
    if (!f) throw std::runtime_error("write_ply: write failed for " + path);
}

}  // namespace lawson
