#include "gom/ply_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gom/errors.hpp"

namespace gom {

void write_ply(const std::filesystem::path& path, const TriangleMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot write " + path.string());
  out << "ply\nformat ascii 1.0\n";
  out << "element vertex " << mesh.vertices.size() << "\n";
  out << "property float x\nproperty float y\nproperty float z\n";
  out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  out << "element face " << mesh.triangles.size() << "\n";
  out << "property list uchar int vertex_indices\nend_header\n";
  char line[160];
  for (size_t i = 0; i < mesh.vertices.size(); ++i) {
    const Vec3& p = mesh.vertices[i];
    const Vec3 c = i < mesh.colors.size() ? mesh.colors[i] : Vec3(0.5, 0.5, 0.5);
    const auto q = [](double v) {
      return static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
    };
    std::snprintf(line, sizeof(line), "%.9g %.9g %.9g %d %d %d\n", p.x(), p.y(),
                  p.z(), q(c.x()), q(c.y()), q(c.z()));
    out << line;
  }
  for (const auto& t : mesh.triangles) {
    out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
  }
  if (!out) throw IoFailure("write failed for " + path.string());
}

TriangleMesh read_ply(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open " + path.string());
  std::string line;
  size_t n_vertices = 0, n_faces = 0;
  bool header_ok = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "element") {
      std::string what;
      size_t count;
      ls >> what >> count;
      if (what == "vertex") n_vertices = count;
      if (what == "face") n_faces = count;
    } else if (word == "end_header") {
      header_ok = true;
      break;
    }
  }
  if (!header_ok) throw FileFormatError("PLY header missing end_header");
  TriangleMesh mesh;
  mesh.vertices.reserve(n_vertices);
  mesh.colors.reserve(n_vertices);
  for (size_t i = 0; i < n_vertices; ++i) {
    double x, y, z;
    int r, g, b;
    if (!(in >> x >> y >> z >> r >> g >> b)) {
      throw FileFormatError("PLY vertex list truncated");
    }
    mesh.vertices.emplace_back(x, y, z);
    mesh.colors.emplace_back(r / 255.0, g / 255.0, b / 255.0);
  }
  for (size_t i = 0; i < n_faces; ++i) {
    int n, a, b, c;
    if (!(in >> n >> a >> b >> c) || n != 3) {
      throw FileFormatError("PLY face list truncated or not triangles");
    }
    mesh.triangles.push_back({a, b, c});
  }
  return mesh;
}

}  // namespace gom
