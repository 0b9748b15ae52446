#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cmi/area.hpp"
#include "cmi/expr.hpp"
#include "cmi/immersion.hpp"
#include "cmi/meshio.hpp"
#include "oracles.hpp"

using namespace cmi;

namespace {

const CircularDomain kAnnulus({{Complex(0.0), 0.3}});

NullData catenoid() {
  return liftWeierstrass({parseRational("z"), parseRational("1/z")}, kAnnulus);
}

ImmersionField catenoidField(int resolution = 48) {
  DomainGrid grid = buildGrid(kAnnulus, resolution, 0.05);
  return integrateImmersion(catenoid(), ComplexFn(), grid, Complex(0.65, 0.0));
}

}  // namespace

TEST_CASE("catenoid immersion closes and is conformal, harmonic, Gauss-correct") {
  ImmersionField F = catenoidField();
  CHECK(F.closureResidual < 1e-10);
  CHECK(conformalityResidual(F) < 1e-6);
  CHECK(gaussResidual(F, parseRational("z")) < 1e-6);
  CHECK(harmonicResidual(F) < 1e-4);
  // Wrong Gauss map is detected at O(1).
  CHECK(gaussResidual(F, parseRational("z^2")) > 0.1);
}

TEST_CASE("catenoid matches the closed form after translation alignment") {
  ImmersionField F = catenoidField();
  const DomainGrid& grid = F.grid;
  auto closedForm = [](Complex z) {
    double r = std::abs(z), th = std::arg(z);
    return Eigen::Vector3d(-std::cos(th) * (r + 1.0 / r), -std::sin(th) * (r + 1.0 / r),
                           2.0 * std::log(r));
  };
  Eigen::Vector3d off = F.X[F.basepointIndex] - closedForm(grid.points()[F.basepointIndex].z);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.points().size(); ++i) {
    worst = std::max(worst, (F.X[i] - closedForm(grid.points()[i].z) - off).norm());
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("nonzero real periods are refused") {
  NullData f = catenoid();
  DomainGrid grid = buildGrid(kAnnulus, 16, 0.05);
  // h = i turns the imaginary period into a real one.
  ComplexFn h = [](Complex) { return Complex(0.0, 1.0); };
  CHECK_THROWS_AS(integrateImmersion(f, h, grid, Complex(0.65, 0.0)), RealPeriodsNonzero);
}

TEST_CASE("spherical area closed forms") {
  CircularDomain disk(std::vector<Hole>{});
  CHECK(sphericalArea(parseRational("z"), disk) == doctest::Approx(2.0 * kPi).epsilon(1e-7));
  for (double eps : {0.1, 1.0 / std::sqrt(3.0)}) {
    std::ostringstream os;
    os.precision(17);
    os << eps << "*z";
    double want = 4.0 * kPi * eps * eps / (1.0 + eps * eps);
    CHECK(sphericalArea(parseRational(os.str()), disk) ==
          doctest::Approx(want).epsilon(1e-6));
  }
  CHECK(sphericalArea(parseRational("2"), disk) == doctest::Approx(0.0));
}

TEST_CASE("area subtracts holes") {
  // g = z on the annulus: area = 2pi - (hole disk contribution).
  double full = sphericalArea(parseRational("z"), CircularDomain(std::vector<Hole>{}));
  double ann = sphericalArea(parseRational("z"), kAnnulus);
  double r2 = 0.3 * 0.3;
  double holePart = 4.0 * kPi * r2 / (1.0 + r2);
  CHECK(full - ann == doctest::Approx(holePart).epsilon(1e-6));
}

TEST_CASE("stability verdicts") {
  CircularDomain disk(std::vector<Hole>{});
  StabilityReport small = stabilityCheck(parseRational("0.1*z"), disk);
  CHECK(small.stableByAreaCriterion);
  CHECK(small.verdict == "stable");
  StabilityReport border = stabilityCheck(parseRational("z"), disk);
  CHECK_FALSE(border.stableByAreaCriterion);
  CHECK(border.verdict == "not concluded");
  StabilityReport flat = stabilityCheck(parseRational("2"), disk);
  CHECK(flat.stableByAreaCriterion);
}

TEST_CASE("OBJ export counts and determinism") {
  ImmersionField F = catenoidField(16);
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "cmi_meshio_test";
  fs::create_directories(dir);
  std::string p1 = (dir / "a.obj").string(), p2 = (dir / "b.obj").string();
  exportMesh(F, p1);
  exportMesh(F, p2);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  std::string c1 = slurp(p1);
  CHECK(c1 == slurp(p2));
  std::size_t nv = 0, nf = 0, nn = 0;
  std::istringstream lines(c1);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("v ", 0) == 0) ++nv;
    if (line.rfind("vn ", 0) == 0) ++nn;
    if (line.rfind("f ", 0) == 0) ++nf;
  }
  CHECK(nv == F.grid.points().size());
  CHECK(nn == F.grid.points().size());
  CHECK(nf == 2 * F.grid.faces().size());

  std::string csv = (dir / "a.csv").string();
  exportPointCloud(F, csv);
  std::ifstream in(csv);
  std::getline(in, line);
  CHECK(line == "x1,x2,x3");
  fs::remove_all(dir);
}

TEST_CASE("export rejects broken input") {
  ImmersionField empty;
  CHECK_THROWS_AS(exportMesh(empty, "/tmp/cmi_nope.obj"), InvalidGrid);
  ImmersionField F = catenoidField(16);
  F.n = 4;
  CHECK_THROWS_AS(exportMesh(F, "/tmp/cmi_nope.obj"), Error);
}
