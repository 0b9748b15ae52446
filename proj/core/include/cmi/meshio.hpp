#pragma once

#include <string>

#include "cmi/immersion.hpp"

namespace cmi {

/// Writes the field as an ASCII OBJ mesh (n = 3): vertices in grid-major
/// order with 17-significant-digit floats, per-vertex normals averaged from
/// incident quad faces, quads split into two triangles. Deterministic:
/// identical fields produce byte-identical files. Throws InvalidGrid for
/// degenerate grids and Error for n != 3.
void exportMesh(const ImmersionField& F, const std::string& path);

/// Writes the field as a CSV point cloud (any n): header x1..xn, one row per
/// grid point in grid-major order.
void exportPointCloud(const ImmersionField& F, const std::string& path);

}  // namespace cmi
