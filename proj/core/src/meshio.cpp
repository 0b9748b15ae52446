#include "cmi/meshio.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

namespace cmi {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void exportMesh(const ImmersionField& F, const std::string& path) {
  if (F.n != 3) throw Error("OBJ export requires n = 3; use exportPointCloud");
  const DomainGrid& grid = F.grid;
  if (grid.points().size() < 3 || grid.faces().empty()) {
    throw InvalidGrid("grid has too few points or no faces to mesh");
  }

  std::vector<Eigen::Vector3d> normals(grid.points().size(), Eigen::Vector3d::Zero());
  for (const DomainGrid::Face& face : grid.faces()) {
    Eigen::Vector3d a = F.X[face.v[0]], b = F.X[face.v[1]], c = F.X[face.v[2]],
                    d = F.X[face.v[3]];
    Eigen::Vector3d n = (c - a).cross(d - b);
    for (int k = 0; k < 4; ++k) normals[face.v[k]] += n;
  }
  for (Eigen::Vector3d& n : normals) {
    double len = n.norm();
    n = (len > 1e-300) ? Eigen::Vector3d(n / len) : Eigen::Vector3d(0.0, 0.0, 1.0);
  }

  std::ostringstream os;
  for (std::size_t i = 0; i < grid.points().size(); ++i) {
    os << "v " << fmt(F.X[i](0)) << ' ' << fmt(F.X[i](1)) << ' ' << fmt(F.X[i](2)) << '\n';
  }
  for (const Eigen::Vector3d& n : normals) {
    os << "vn " << fmt(n(0)) << ' ' << fmt(n(1)) << ' ' << fmt(n(2)) << '\n';
  }
  for (const DomainGrid::Face& face : grid.faces()) {
    int a = face.v[0] + 1, b = face.v[1] + 1, c = face.v[2] + 1, d = face.v[3] + 1;
    os << "f " << a << "//" << a << ' ' << b << "//" << b << ' ' << c << "//" << c << '\n';
    os << "f " << a << "//" << a << ' ' << c << "//" << c << ' ' << d << "//" << d << '\n';
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << os.str();
  if (!out) throw Error("write failed for " + path);
}

void exportPointCloud(const ImmersionField& F, const std::string& path) {
  std::ostringstream os;
  for (int c = 0; c < F.n; ++c) os << (c ? "," : "") << 'x' << (c + 1);
  os << '\n';
  for (const Eigen::VectorXd& x : F.X) {
    for (int c = 0; c < F.n; ++c) os << (c ? "," : "") << fmt(x(c));
    os << '\n';
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << os.str();
  if (!out) throw Error("write failed for " + path);
}

}  // namespace cmi
