// cmi: configuration-driven front end for the conformal-minimal-immersion
// pipeline. JSON config in; JSON reports, OBJ meshes and CSV point clouds out.
// Exit codes: 0 pass, 1 check failed, 2 config error, 3 solver failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmi/area.hpp"
#include "cmi/deform.hpp"
#include "cmi/expr.hpp"
#include "cmi/immersion.hpp"
#include "cmi/interval.hpp"
#include "cmi/meshio.hpp"
#include "cmi/solver.hpp"
#include "cmi/spinor.hpp"
#include "cmi/spray.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cmi;

namespace {

constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Config parsing

Complex parseComplexValue(const json& j, const char* what) {
  if (j.is_number()) return Complex(j.get<double>());
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return Complex(j[0].get<double>(), j[1].get<double>());
  }
  throw ConfigError(std::string(what) + " must be a number or an [re, im] pair");
}

RationalMap parseRationalValue(const json& j, const char* what) {
  if (j.is_string()) {
    try {
      return parseRational(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ConfigError(std::string(what) + ": " + e.what());
    }
  }
  if (j.is_object() && j.contains("num") && j.contains("den")) {
    auto coeffs = [&](const json& arr, const char* part) {
      if (!arr.is_array()) throw ConfigError(std::string(what) + "." + part +
                                             " must be an array of coefficients");
      std::vector<Complex> c;
      for (const json& v : arr) c.push_back(parseComplexValue(v, part));
      return Poly(std::move(c));
    };
    return RationalMap(coeffs(j["num"], "num"), coeffs(j["den"], "den"));
  }
  throw ConfigError(std::string(what) +
                    " must be an expression string or {num, den} coefficient arrays");
}

struct JobConfig {
  json raw;
  CircularDomain domain;
  int n = 3;
  std::string inputKind;  // weierstrass | nulldata | flat-class
  std::optional<WeierstrassPair> pair;
  std::vector<RationalMap> components;
  std::vector<int> targetClass;
  std::optional<Eigen::MatrixXd> fluxTarget;   // l x n
  std::optional<PeriodTarget> periodTarget;
  SolveOptions solver;
  int resolution = 64;
  double gridOffset = 0.05;
  std::optional<Complex> basepoint;
  std::string outDir = ".";
  double checkTol = 1e-6;
  unsigned seed = 0;
};

JobConfig loadConfig(const std::string& path, const std::string& outFlag, int resFlag,
                     double tolFlag, unsigned seedFlag) {
  JobConfig cfg;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  try {
    in >> cfg.raw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  const json& j = cfg.raw;

  std::vector<Hole> holes;
  if (j.contains("domain") && j["domain"].contains("holes")) {
    for (const json& h : j["domain"]["holes"]) {
      holes.push_back({parseComplexValue(h.at("center"), "hole center"),
                       h.at("radius").get<double>()});
    }
  }
  try {
    cfg.domain = CircularDomain(holes);
  } catch (const InvalidDomain& e) {
    throw ConfigError(std::string("invalid domain: ") + e.what());
  }

  cfg.n = j.value("n", 3);
  if (j.contains("input")) {
    const json& inp = j["input"];
    cfg.inputKind = inp.value("kind", "weierstrass");
    if (cfg.inputKind == "weierstrass") {
      cfg.pair = WeierstrassPair{parseRationalValue(inp.at("g"), "input.g"),
                                 parseRationalValue(inp.at("phi3"), "input.phi3")};
      if (cfg.n != 3) throw ConfigError("Weierstrass input requires n = 3");
    } else if (cfg.inputKind == "nulldata") {
      for (const json& c : inp.at("components")) {
        cfg.components.push_back(parseRationalValue(c, "input.components[]"));
      }
      if (static_cast<int>(cfg.components.size()) != cfg.n) {
        throw ConfigError("component count does not match n");
      }
    } else if (cfg.inputKind == "flat-class") {
      for (const json& b : inp.at("targetClass")) cfg.targetClass.push_back(b.get<int>());
      if (cfg.targetClass.size() != cfg.domain.homologyRank()) {
        throw ConfigError("targetClass length does not match the homology rank");
      }
    } else {
      throw ConfigError("unknown input kind '" + cfg.inputKind + "'");
    }
  }

  std::size_t l = cfg.domain.homologyRank();
  if (j.contains("flux")) {
    const json& fx = j["flux"];
    if (!fx.is_array() || fx.size() != l) {
      throw ConfigError("flux must have one row per homology loop (" + std::to_string(l) +
                        ")");
    }
    Eigen::MatrixXd F(static_cast<Eigen::Index>(l), cfg.n);
    for (std::size_t r = 0; r < l; ++r) {
      if (!fx[r].is_array() || static_cast<int>(fx[r].size()) != cfg.n) {
        throw ConfigError("flux rows must have n entries");
      }
      for (int c = 0; c < cfg.n; ++c) F(static_cast<Eigen::Index>(r), c) = fx[r][c].get<double>();
    }
    cfg.fluxTarget = F;
  }
  if (j.contains("periodTarget")) {
    const json& pt = j["periodTarget"];
    PeriodTarget target;
    std::string mode = pt.value("mode", "full-complex");
    if (mode == "full-complex") {
      target.mode = PeriodMode::FullComplex;
    } else if (mode == "real-part-only") {
      target.mode = PeriodMode::RealPartOnly;
    } else {
      throw ConfigError("periodTarget.mode must be full-complex or real-part-only");
    }
    const json& q = pt.at("q");
    if (!q.is_array() || q.size() != l) {
      throw ConfigError("periodTarget.q must have one row per homology loop");
    }
    target.q.resize(static_cast<Eigen::Index>(l), cfg.n);
    for (std::size_t r = 0; r < l; ++r) {
      for (int c = 0; c < cfg.n; ++c) {
        target.q(static_cast<Eigen::Index>(r), c) = parseComplexValue(q[r][c], "q entry");
      }
    }
    cfg.periodTarget = target;
  }

  if (j.contains("solver")) {
    const json& s = j["solver"];
    cfg.solver.tol = s.value("tol", cfg.solver.tol);
    cfg.solver.maxIterations = s.value("maxIterations", cfg.solver.maxIterations);
    cfg.solver.degree = s.value("degree", cfg.solver.degree);
    cfg.solver.degreeCap = s.value("degreeCap", cfg.solver.degreeCap);
  }
  if (j.contains("grid")) {
    cfg.resolution = j["grid"].value("resolution", cfg.resolution);
    cfg.gridOffset = j["grid"].value("offset", cfg.gridOffset);
  }
  if (j.contains("basepoint")) {
    cfg.basepoint = parseComplexValue(j["basepoint"], "basepoint");
  }
  cfg.outDir = j.value("out", std::string("."));
  cfg.checkTol = j.value("checkTol", cfg.checkTol);

  if (!outFlag.empty()) cfg.outDir = outFlag;
  if (resFlag > 0) cfg.resolution = resFlag;
  if (tolFlag > 0) cfg.checkTol = tolFlag;
  cfg.seed = seedFlag;
  return cfg;
}

// ---------------------------------------------------------------------------
// Report plumbing

struct Timings {
  std::vector<std::pair<std::string, double>> entries;
  std::chrono::steady_clock::time_point mark = std::chrono::steady_clock::now();

  void lap(const std::string& name) {
    auto now = std::chrono::steady_clock::now();
    entries.emplace_back(name, std::chrono::duration<double>(now - mark).count());
    mark = now;
  }
  json toJson() const {
    json t = json::object();
    for (const auto& [k, v] : entries) t[k] = v;
    return t;
  }
};

json complexToJson(Complex z) { return json::array({z.real(), z.imag()}); }

json matrixToJson(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complexToJson(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

json realMatrixToJson(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

int writeReport(json report, const JobConfig* cfg, const Timings& timings,
                const std::string& outDir, int exitCode) {
  report["tool"] = "cmi";
  report["version"] = kVersion;
  if (cfg) report["config"] = cfg->raw;
  report["status"] = exitCode == 0 ? "pass" : (exitCode == 1 ? "check-failed" : "error");
  // Timings live outside the deterministic payload.
  json full = report;
  full["timings"] = timings.toJson();
  fs::create_directories(outDir);
  std::ofstream out(fs::path(outDir) / "report.json");
  out << full.dump(2) << "\n";
  std::cout << full.dump(2) << "\n";
  return exitCode;
}

NullData buildInputData(const JobConfig& cfg) {
  if (cfg.inputKind == "weierstrass") return liftWeierstrass(*cfg.pair, cfg.domain);
  if (cfg.inputKind == "nulldata") {
    std::vector<DataFun> comps(cfg.components.begin(), cfg.components.end());
    return NullData{cfg.n, std::move(comps), cfg.domain};
  }
  if (cfg.inputKind == "flat-class") return flatClassRepresentative(cfg.domain, cfg.targetClass);
  throw ConfigError("config has no usable input section");
}

Complex defaultBasepoint(const JobConfig& cfg) {
  if (cfg.basepoint) return *cfg.basepoint;
  double rinner = 0.0;
  for (const Hole& h : cfg.domain.holes()) {
    if (std::abs(h.center) <= h.radius) rinner = std::max(rinner, std::abs(h.center) + h.radius);
  }
  return Complex(0.5 * (rinner + 1.0), 0.0);
}

// ---------------------------------------------------------------------------
// Subcommands

int cmdSynthesize(const JobConfig& cfg) {
  Timings timings;
  json report;
  report["command"] = "synthesize";
  json stages = json::array();

  NullData f = buildInputData(cfg);
  ValidationReport vrep = validateNull(f);
  stages.push_back({{"stage", "validate"}, {"rank", vrep.rank}, {"full", vrep.full}});
  timings.lap("validate");

  std::vector<HomologyLoop> loops = cfg.domain.loops();
  PeriodVector P0 = periodMap(f, loops);
  timings.lap("periods");

  // Solve for the multiplier. The flux rows prescribe Im P; taking the
  // full-complex target q = i*flux pins them and kills the real periods.
  PeriodTarget target;
  if (cfg.periodTarget) {
    target = *cfg.periodTarget;
  } else if (cfg.fluxTarget) {
    target.q = Complex(0.0, 1.0) * cfg.fluxTarget->cast<Complex>();
  } else {
    target.q = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(loops.size()), cfg.n);
    target.q.imag() = P0.P.imag();
  }
  SolveReport sol;
  try {
    sol = solveMultiplier(f, target, cfg.solver);
  } catch (const Error&) {
    // Direct solve failed: continue along a straight target path from the
    // current periods.
    Eigen::MatrixXcd q0 = P0.P, q1 = target.q;
    PeriodMode mode = target.mode;
    auto path = [q0, q1, mode](double t) {
      PeriodTarget T;
      T.q = (1.0 - t) * q0 + t * q1;
      T.mode = mode;
      return T;
    };
    sol = solveMultiplierFamily(f, path, 16, cfg.solver).back();
  }
  PeriodVector P = periodMap(f, sol.multiplier.fn(), loops);
  FluxHomomorphism fl = flux(P);
  stages.push_back({{"stage", "solve"},
                    {"residual", sol.residualNorm},
                    {"iterations", sol.iterations},
                    {"sigmaMin", sol.sigmaMin}});
  report["flux"] = realMatrixToJson(fl.p);
  report["periods"] = matrixToJson(P.P);
  timings.lap("solve");

  DomainGrid grid = buildGrid(cfg.domain, cfg.resolution, cfg.gridOffset);
  ImmersionField F = integrateImmersion(f, sol.multiplier.fn(), grid, defaultBasepoint(cfg));
  timings.lap("integrate");

  json residuals;
  residuals["closure"] = F.closureResidual;
  residuals["conformality"] = conformalityResidual(F);
  bool ok = residuals["conformality"].get<double>() < cfg.checkTol &&
            F.closureResidual < 1e-8;
  if (cfg.n == 3 && cfg.pair) {
    double gr = gaussResidual(F, cfg.pair->g);
    residuals["gauss"] = gr;
    ok = ok && gr < cfg.checkTol;
  }
  if (cfg.fluxTarget) {
    double fdev = (fl.p - *cfg.fluxTarget).norm();
    residuals["fluxDeviation"] = fdev;
    ok = ok && fdev < cfg.checkTol;
  }
  report["residuals"] = residuals;
  timings.lap("verify");

  fs::create_directories(cfg.outDir);
  json artifacts = json::array();
  if (cfg.n == 3) {
    std::string meshPath = (fs::path(cfg.outDir) / "surface.obj").string();
    exportMesh(F, meshPath);
    artifacts.push_back(meshPath);
  } else {
    std::string csvPath = (fs::path(cfg.outDir) / "surface.csv").string();
    exportPointCloud(F, csvPath);
    artifacts.push_back(csvPath);
  }
  report["artifacts"] = artifacts;
  report["stages"] = stages;
  timings.lap("export");
  return writeReport(report, &cfg, timings, cfg.outDir, ok ? 0 : 1);
}

int cmdVerify(const JobConfig& cfg) {
  Timings timings;
  json report;
  report["command"] = "verify";
  NullData f = buildInputData(cfg);
  ValidationReport vrep = validateNull(f);
  report["validate"] = {{"rank", vrep.rank},
                        {"full", vrep.full},
                        {"minModulusOnGrid", vrep.minModulusOnGrid}};
  timings.lap("validate");

  std::vector<HomologyLoop> loops = cfg.domain.loops();
  PeriodVector P = periodMap(f, loops);
  FluxHomomorphism fl = flux(P);
  report["periods"] = matrixToJson(P.P);
  report["flux"] = realMatrixToJson(fl.p);
  report["realPeriodsVanish"] = fl.realPeriodsVanish;
  timings.lap("periods");

  json residuals;
  bool ok = fl.realPeriodsVanish;
  if (fl.realPeriodsVanish) {
    DomainGrid grid = buildGrid(cfg.domain, cfg.resolution, cfg.gridOffset);
    ImmersionField F = integrateImmersion(f, ComplexFn(), grid, defaultBasepoint(cfg));
    residuals["closure"] = F.closureResidual;
    residuals["conformality"] = conformalityResidual(F);
    residuals["harmonicity"] = harmonicResidual(F);
    ok = residuals["conformality"].get<double>() < cfg.checkTol;
    if (cfg.n == 3 && cfg.pair) {
      double gr = gaussResidual(F, cfg.pair->g);
      residuals["gauss"] = gr;
      ok = ok && gr < cfg.checkTol;
    } else {
      residuals["gauss"] = nullptr;
      residuals["gaussNote"] = cfg.n == 3 ? "no Gauss map supplied" : "skipped: n != 3";
    }
  } else {
    residuals["note"] = "real periods nonzero; immersion checks skipped";
  }
  report["residuals"] = residuals;
  timings.lap("verify");
  return writeReport(report, &cfg, timings, cfg.outDir, ok ? 0 : 1);
}

int cmdDeform(const JobConfig& cfg, const std::string& kind, int samples) {
  Timings timings;
  json report;
  report["command"] = "deform";
  report["kind"] = kind;
  if (samples < 1) throw ConfigError("sample count must be positive");
  fs::create_directories(cfg.outDir);
  json perSample = json::array();
  json artifacts = json::array();
  DomainGrid grid = buildGrid(cfg.domain, cfg.resolution, cfg.gridOffset);
  Complex base = defaultBasepoint(cfg);
  std::vector<HomologyLoop> loops = cfg.domain.loops();
  bool ok = true;

  auto emit = [&](const NullData& data, const ComplexFn& h, double t, int idx) {
    ImmersionField F = integrateImmersion(data, h, grid, base);
    std::string meshPath =
        (fs::path(cfg.outDir) / ("sample_" + std::to_string(idx) + ".obj")).string();
    exportMesh(F, meshPath);
    artifacts.push_back(meshPath);
    json s;
    s["t"] = t;
    s["closure"] = F.closureResidual;
    s["conformality"] = conformalityResidual(F);
    ok = ok && s["conformality"].get<double>() < cfg.checkTol;
    return std::pair<ImmersionField, json>(std::move(F), std::move(s));
  };

  if (kind == "associated") {
    NullData f = buildInputData(cfg);
    // Kill all complex periods first: null-curve condition.
    ExpMultiplier h = solveNullCurveMultiplier(f, cfg.solver, cfg.seed);
    for (int k = 0; k < samples; ++k) {
      double s = 0.5 * kPi * k / std::max(1, samples - 1);
      ExpMultiplier hs = associatedFamily(f, h, s);
      auto [F, entry] = emit(f, hs.fn(), s, k);
      perSample.push_back(entry);
    }
    // Isometry check between the s=0 and s=pi/2 samples: E, F, G from the
    // derivatives X_x = 2 Re Phi, X_y = -2 Im Phi with Phi = e^{is} h f,
    // evaluated at the grid points. Relative deviation, normalized by E + G.
    if (samples > 1) {
      ComplexFn hf = h.fn();
      Complex rot = std::exp(Complex(0.0, 0.5 * kPi));
      double worst = 0.0;
      for (const DomainGrid::Point& p : grid.points()) {
        Eigen::VectorXcd phi(f.n);
        for (int c = 0; c < f.n; ++c) phi(c) = hf(p.z) * f.components[c](p.z);
        auto metric = [&](Complex w) {
          Eigen::VectorXd Xx = 2.0 * (w * phi.array()).real();
          Eigen::VectorXd Xy = -2.0 * (w * phi.array()).imag();
          return Eigen::Vector3d(Xx.squaredNorm(), Xx.dot(Xy), Xy.squaredNorm());
        };
        Eigen::Vector3d m0 = metric(Complex(1.0)), m1 = metric(rot);
        double scale = m0(0) + m0(2);
        if (scale < 1e-300) continue;
        worst = std::max(worst, (m0 - m1).cwiseAbs().maxCoeff() / scale);
      }
      report["isometryDeviation"] = worst;
      ok = ok && worst < 1e-8;
    }
  } else if (kind == "flatten") {
    if (!cfg.pair) throw ConfigError("flatten requires Weierstrass input");
    for (int k = 0; k < samples; ++k) {
      double lam = static_cast<double>(k) / std::max(1, samples - 1);
      NullData data = flatDeformationAvoiding(*cfg.pair, cfg.domain, lam);
      auto [F, entry] = emit(data, ComplexFn(), lam, k);
      if (k == 0) {
        // Flat limit: the centered point cloud must be affinely 2-dimensional.
        Eigen::MatrixXd cloud(3, static_cast<Eigen::Index>(F.X.size()));
        for (std::size_t i = 0; i < F.X.size(); ++i) cloud.col(static_cast<Eigen::Index>(i)) = F.X[i];
        cloud.colwise() -= Eigen::Vector3d(cloud.rowwise().mean());
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(cloud);
        double rel = svd.singularValues()(2) / svd.singularValues()(0);
        entry["flatnessSigma3"] = rel;
        ok = ok && rel < 1e-8;
      }
      perSample.push_back(entry);
    }
  } else if (kind == "nonflatize") {
    std::vector<std::pair<Complex, Complex>> zeros(loops.size(),
                                                   {Complex(0.0), Complex(0.0)});
    GG2Result gg = solveGG2(cfg.domain, zeros, cfg.solver);
    report["gg2Residual"] = gg.residualNorm;
    // Zero GG2 targets make e^u dz and e^{2u} dz exact, which is the
    // exactness the construction needs for phi3 = dz.
    RationalMap phi3 = RationalMap::constant(1.0);
    for (int k = 0; k < samples; ++k) {
      double lam = static_cast<double>(k) / std::max(1, samples - 1);
      NullData data = nonflatDeformation(gg.g, phi3, cfg.domain, lam);
      auto [F, entry] = emit(data, ComplexFn(), lam, k);
      entry["rank"] = validateNull(data).rank;
      perSample.push_back(entry);
    }
  } else if (kind == "flux-isotopy") {
    if (!cfg.fluxTarget) throw ConfigError("flux-isotopy requires a flux target");
    NullData f = buildInputData(cfg);
    PeriodVector P0 = periodMap(f, loops);
    Eigen::MatrixXcd q0 = P0.P;
    Eigen::MatrixXcd q1 = Complex(0.0, 1.0) * cfg.fluxTarget->cast<Complex>();
    auto path = [q0, q1](double t) {
      PeriodTarget T;
      T.q = (1.0 - t) * q0 + t * q1;
      return T;
    };
    auto family = solveMultiplierFamily(f, path, samples, cfg.solver);
    int idx = 0;
    for (const SolveReport& r : family) {
      auto [F, entry] = emit(f, r.multiplier.fn(), r.t, idx++);
      entry["solverResidual"] = r.residualNorm;
      if (cfg.pair) {
        double gr = gaussResidual(F, cfg.pair->g);
        entry["gauss"] = gr;
        ok = ok && gr < cfg.checkTol;
      }
      perSample.push_back(entry);
    }
  } else {
    throw ConfigError("unknown deformation kind '" + kind + "'");
  }

  report["samples"] = perSample;
  report["artifacts"] = artifacts;
  timings.lap("deform");
  return writeReport(report, &cfg, timings, cfg.outDir, ok ? 0 : 1);
}

int cmdClassify(const JobConfig& cfg, bool withRepresentative) {
  Timings timings;
  json report;
  report["command"] = "classify";
  if (cfg.n != 3) throw ConfigError("classification requires n = 3");
  if (cfg.domain.homologyRank() == 0) {
    report["class"] = json::array();
    report["note"] = "simply connected";
    timings.lap("classify");
    return writeReport(report, &cfg, timings, cfg.outDir, 0);
  }
  NullData f = buildInputData(cfg);
  std::vector<int> bits = componentClass(f);
  report["class"] = bits;
  timings.lap("classify");
  bool ok = true;
  if (withRepresentative) {
    NullData repd = flatClassRepresentative(cfg.domain, bits);
    std::vector<int> got = componentClass(repd);
    report["representativeClass"] = got;
    ok = (got == bits);
    timings.lap("representative");
  }
  return writeReport(report, &cfg, timings, cfg.outDir, ok ? 0 : 1);
}

int cmdArea(const JobConfig& cfg) {
  Timings timings;
  json report;
  report["command"] = "area";
  if (!cfg.pair) throw ConfigError("area requires Weierstrass input (the Gauss map g)");
  StabilityReport st = stabilityCheck(cfg.pair->g, cfg.domain, cfg.resolution);
  report["sphericalArea"] = st.sphericalArea;
  report["stableByAreaCriterion"] = st.stableByAreaCriterion;
  report["verdict"] = st.verdict;
  report["maxDensity"] = st.maxDensity;
  timings.lap("area");
  return writeReport(report, &cfg, timings, cfg.outDir, 0);
}

int cmdSolveInterval(const JobConfig& cfg) {
  Timings timings;
  json report;
  report["command"] = "solve-interval";
  const json& j = cfg.raw.contains("interval") ? cfg.raw["interval"] : cfg.raw;
  std::string kind = j.value("kind", "multiplier");
  IntervalFunction h;
  if (kind == "multiplier") {
    const json& comps = j.at("f");
    if (!comps.is_array() || comps.size() < 2) {
      throw ConfigError("interval.f must list at least two component expressions over s");
    }
    std::vector<std::function<Complex(double)>> fns;
    for (const json& c : comps) fns.push_back(parsePathFunction(c.get<std::string>()));
    SampledPath path;
    path.n = static_cast<int>(fns.size());
    path.f = [fns](double s) {
      Eigen::VectorXcd v(static_cast<Eigen::Index>(fns.size()));
      for (std::size_t k = 0; k < fns.size(); ++k) v(static_cast<Eigen::Index>(k)) = fns[k](s);
      return v;
    };
    const json& al = j.at("alpha");
    Eigen::VectorXcd alpha(static_cast<Eigen::Index>(al.size()));
    for (std::size_t k = 0; k < al.size(); ++k) {
      alpha(static_cast<Eigen::Index>(k)) = parseComplexValue(al[k], "alpha entry");
    }
    h = intervalMultiplier(path, alpha, {}, j.value("tol", 1e-8));
  } else if (kind == "gg2") {
    auto f = parsePathFunction(j.at("f").get<std::string>());
    auto a = j.contains("a") ? parsePathFunction(j["a"].get<std::string>())
                             : std::function<Complex(double)>([](double) { return Complex(1.0); });
    const json& xv = j.at("x");
    if (!xv.is_array() || xv.size() != 2) throw ConfigError("interval.x must have 2 entries");
    std::array<Complex, 2> x = {parseComplexValue(xv[0], "x[0]"),
                                parseComplexValue(xv[1], "x[1]")};
    h = intervalGG2(f, a, x, {}, j.value("tol", 1e-6));
  } else {
    throw ConfigError("interval.kind must be multiplier or gg2");
  }
  report["residual"] = h.residualNorm;
  report["endpoints"] = {complexToJson(h(0.0)), complexToJson(h(1.0))};
  double minAbs = 1e300;
  for (Complex v : h.values) minAbs = std::min(minAbs, std::abs(v));
  report["minModulus"] = minAbs;
  fs::create_directories(cfg.outDir);
  std::string csvPath = (fs::path(cfg.outDir) / "interval.csv").string();
  {
    std::ofstream out(csvPath);
    out << "s,re,im\n";
    char buf[96];
    for (std::size_t k = 0; k < h.s.size(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", h.s[k], h.values[k].real(),
                    h.values[k].imag());
      out << buf;
    }
  }
  report["artifacts"] = json::array({csvPath});
  timings.lap("solve-interval");
  return writeReport(report, &cfg, timings, cfg.outDir, 0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conformal minimal immersion toolkit"};
  app.require_subcommand(1);
  std::string configPath, outDir;
  int resolution = 0, samples = 8;
  double tol = 0.0;
  unsigned seed = 0;
  bool withRepresentative = false;
  std::string deformKind = "flux-isotopy";

  auto addCommon = [&](CLI::App* sub) {
    sub->add_option("--config", configPath, "JSON config path")->required();
    sub->add_option("--out", outDir, "output directory");
    sub->add_option("--resolution", resolution, "grid / quadrature resolution");
    sub->add_option("--tol", tol, "check tolerance");
    sub->add_option("--seed", seed, "seed for randomized test-point placement");
  };
  CLI::App* synth = app.add_subcommand("synthesize", "lift, solve, integrate, export");
  addCommon(synth);
  CLI::App* verify = app.add_subcommand("verify", "validate data and check invariants");
  addCommon(verify);
  CLI::App* deform = app.add_subcommand("deform", "deformation families");
  addCommon(deform);
  deform->add_option("--kind", deformKind, "associated|flatten|nonflatize|flux-isotopy");
  deform->add_option("--samples", samples, "number of parameter samples");
  CLI::App* classify = app.add_subcommand("classify", "Z2 component class");
  addCommon(classify);
  classify->add_flag("--representative", withRepresentative,
                     "also build a flat representative of the class");
  CLI::App* area = app.add_subcommand("area", "spherical Gauss image area / stability");
  addCommon(area);
  CLI::App* interval = app.add_subcommand("solve-interval", "interval-lemma solves");
  addCommon(interval);

  CLI11_PARSE(app, argc, argv);

  try {
    JobConfig cfg = loadConfig(configPath, outDir, resolution, tol, seed);
    if (synth->parsed()) return cmdSynthesize(cfg);
    if (verify->parsed()) return cmdVerify(cfg);
    if (deform->parsed()) return cmdDeform(cfg, deformKind, samples);
    if (classify->parsed()) return cmdClassify(cfg, withRepresentative);
    if (area->parsed()) return cmdArea(cfg);
    if (interval->parsed()) return cmdSolveInterval(cfg);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const MaxIterations& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const RankDeficient& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const ContinuationStalled& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const SolverFailed& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const TargetOutsideSpan& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const CorrectionFailed& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const NonConvergent& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
