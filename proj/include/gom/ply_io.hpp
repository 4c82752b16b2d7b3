#pragma once

#include <filesystem>

#include "gom/shape_field.hpp"

namespace gom {

// ASCII PLY with per-vertex uchar RGB.
void write_ply(const std::filesystem::path& path, const TriangleMesh& mesh);
TriangleMesh read_ply(const std::filesystem::path& path);

}  // namespace gom
