// End-to-end tests of the command-line tool. The binary path comes in via
// the CMI_TOOL_PATH compile definition.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Workdir {
  fs::path dir;
  Workdir() {
    dir = fs::temp_directory_path() /
          ("cmi_cli_test_" + std::to_string(::getpid()) + "_" +
           std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(dir);
  }
  ~Workdir() { fs::remove_all(dir); }
  std::string file(const std::string& name, const std::string& content) const {
    fs::path p = dir / name;
    std::ofstream(p) << content;
    return p.string();
  }
};

int run(const std::string& args) {
  std::string cmd = std::string(CMI_TOOL_PATH) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

json loadReport(const fs::path& dir) {
  std::ifstream in(dir / "report.json");
  REQUIRE(in.good());
  json j;
  in >> j;
  return j;
}

const char* kCatenoidConfig = R"({
  "domain": {"holes": [{"center": [0, 0], "radius": 0.3}]},
  "n": 3,
  "input": {"kind": "weierstrass", "g": "z", "phi3": "1/z"},
  "flux": [[0, 0, 6.283185307179586]],
  "grid": {"resolution": 32, "offset": 0.05}
})";

}  // namespace

TEST_CASE("synthesize produces a mesh and a pass report") {
  Workdir w;
  std::string cfg = w.file("cat.json", kCatenoidConfig);
  fs::path out = w.dir / "out";
  CHECK(run("synthesize --config " + cfg + " --out " + out.string()) == 0);
  json rep = loadReport(out);
  CHECK(rep["status"] == "pass");
  CHECK(rep["command"] == "synthesize");
  // Config echo round-trips.
  std::ifstream in(cfg);
  json orig;
  in >> orig;
  CHECK(rep["config"] == orig);
  // Artifacts exist.
  for (const auto& a : rep["artifacts"]) CHECK(fs::exists(a.get<std::string>()));
  CHECK(fs::exists(out / "surface.obj"));
  // Flux row came out as requested.
  CHECK(rep["flux"][0][2].get<double>() == doctest::Approx(6.283185307179586).epsilon(1e-8));
  CHECK(rep.contains("timings"));
}

TEST_CASE("verify reports invariants") {
  Workdir w;
  std::string cfg = w.file("cat.json", kCatenoidConfig);
  fs::path out = w.dir / "out";
  CHECK(run("verify --config " + cfg + " --out " + out.string()) == 0);
  json rep = loadReport(out);
  CHECK(rep["realPeriodsVanish"] == true);
  CHECK(rep["residuals"]["conformality"].get<double>() < 1e-6);
  CHECK(rep["residuals"]["gauss"].get<double>() < 1e-6);
}

TEST_CASE("verify skips the Gauss check for n = 4 with a note") {
  Workdir w;
  std::string cfg = w.file("n4.json", R"({
    "domain": {"holes": []},
    "n": 4,
    "input": {"kind": "nulldata", "components": ["1", "i", "0", "0"]},
    "grid": {"resolution": 16, "offset": 0.05}
  })");
  fs::path out = w.dir / "out";
  CHECK(run("verify --config " + cfg + " --out " + out.string()) == 0);
  json rep = loadReport(out);
  CHECK(rep["residuals"]["gaussNote"] == "skipped: n != 3");
}

TEST_CASE("config errors exit with 2") {
  Workdir w;
  std::string bad = w.file("bad.json", "{ not json");
  CHECK(run("verify --config " + bad) == 2);
  std::string badDomain = w.file("dom.json",
                                 R"({"domain": {"holes": [{"center": [0,0], "radius": 2}]}})");
  CHECK(run("verify --config " + badDomain) == 2);
  CHECK(run("verify --config " + w.dir.string() + "/missing.json") == 2);
  std::string badKind = w.file("kind.json",
                               R"({"domain": {"holes": []}, "input": {"kind": "nope"}})");
  CHECK(run("verify --config " + badKind) == 2);
}

TEST_CASE("solver failures exit with 3") {
  Workdir w;
  // Rank-1 data cannot reach a third-component flux target.
  std::string cfg = w.file("rank1.json", R"({
    "domain": {"holes": [{"center": [0, 0], "radius": 0.3}]},
    "n": 3,
    "input": {"kind": "nulldata", "components": ["z", "i*z", "0"]},
    "flux": [[0, 0, 1]],
    "grid": {"resolution": 16, "offset": 0.05}
  })");
  CHECK(run("synthesize --config " + cfg + " --out " + (w.dir / "out").string()) == 3);
}

TEST_CASE("classify reports the class, disk is trivial") {
  Workdir w;
  std::string cfg = w.file("cat.json", kCatenoidConfig);
  fs::path out = w.dir / "out";
  CHECK(run("classify --config " + cfg + " --out " + out.string()) == 0);
  json rep = loadReport(out);
  CHECK(rep["class"] == json::array({0}));

  std::string disk = w.file("disk.json", R"({
    "domain": {"holes": []},
    "input": {"kind": "weierstrass", "g": "0.5", "phi3": "1"}
  })");
  CHECK(run("classify --config " + disk + " --out " + out.string()) == 0);
  rep = loadReport(out);
  CHECK(rep["class"].empty());
  CHECK(rep["note"] == "simply connected");
}

TEST_CASE("area verdicts through the CLI") {
  Workdir w;
  std::string cfg = w.file("area.json", R"({
    "domain": {"holes": []},
    "input": {"kind": "weierstrass", "g": "0.1*z", "phi3": "1"}
  })");
  fs::path out = w.dir / "out";
  CHECK(run("area --config " + cfg + " --out " + out.string()) == 0);
  json rep = loadReport(out);
  CHECK(rep["verdict"] == "stable");
  double want = 4.0 * 3.14159265358979 * 0.01 / 1.01;
  CHECK(rep["sphericalArea"].get<double>() == doctest::Approx(want).epsilon(1e-5));
}

TEST_CASE("deform flux-isotopy keeps the Gauss map") {
  Workdir w;
  std::string cfg = w.file("cat.json", kCatenoidConfig);
  fs::path out = w.dir / "out";
  CHECK(run("deform --kind flux-isotopy --samples 3 --config " + cfg + " --out " +
            out.string()) == 0);
  json rep = loadReport(out);
  REQUIRE(rep["samples"].size() >= 3);
  for (const auto& s : rep["samples"]) {
    CHECK(s["gauss"].get<double>() < 1e-6);
  }
  CHECK(rep["artifacts"].size() == rep["samples"].size());
}

TEST_CASE("solve-interval emits profile samples") {
  Workdir w;
  std::string cfg = w.file("itv.json", R"json({
    "interval": {
      "kind": "multiplier",
      "f": ["exp(i*2*pi*s)", "exp(i*4*pi*s)"],
      "alpha": [[1, 0], [0, 0]]
    }
  })json");
  fs::path out = w.dir / "out";
  CHECK(run("solve-interval --config " + cfg + " --out " + out.string()) == 0);
  json rep = loadReport(out);
  CHECK(rep["residual"].get<double>() < 1e-8);
  CHECK(rep["minModulus"].get<double>() > 0.0);
  CHECK(fs::exists(out / "interval.csv"));
}
