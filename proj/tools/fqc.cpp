// fqc: construct Fourier quasicrystals from genus-zero Lee-Yang curves and
// matrices with positive maximal minors, and verify their quantitative
// properties at desk scale.
//
// Every subcommand reads a JSON config (--config), writes its data files to
// the output directory and prints exactly one JSON summary object on stdout.
// Warnings go to stderr.  Exit codes: 0 ok, 1 config error, 2 validation
// error, 3 numeric error.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "fqc/config.hpp"
#include "fqc/diffraction.hpp"
#include "fqc/emit.hpp"
#include "fqc/fourier.hpp"
#include "fqc/pointset.hpp"
#include "fqc/spectrum.hpp"
#include "fqc/summation.hpp"

namespace fs = std::filesystem;
using namespace fqc;

namespace {

struct CommonArgs {
  std::string configPath;
  std::vector<double> window;
  std::uint64_t seed = 0;
  bool seedSet = false;
  std::string outDir;
  std::string format = "csv";
};

void addCommon(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.configPath, "JSON job config")->required();
  cmd->add_option("--window", args.window, "window override: x1min x1max x2min x2max ...")
      ->expected(-1);
  cmd->add_option("--seed", args.seed, "RNG seed override")->each([&](const std::string&) {
    args.seedSet = true;
  });
  cmd->add_option("--out", args.outDir, "output directory");
  cmd->add_option("--format", args.format, "data file format")
      ->check(CLI::IsMember({"csv", "json"}));
}

JobConfig resolve(const CommonArgs& args) {
  JobConfig cfg = loadConfig(args.configPath);
  if (!args.window.empty()) {
    if (args.window.size() % 2 != 0) throw ConfigError("--window needs pairs of bounds");
    cfg.window.range.clear();
    for (std::size_t i = 0; i + 1 < args.window.size(); i += 2)
      cfg.window.range.push_back({args.window[i], args.window[i + 1]});
    if (cfg.window.dim() != cfg.matrix.cols) throw ConfigError("--window dimension must equal d");
  }
  if (args.seedSet) cfg.seed = args.seed;
  if (!args.outDir.empty()) cfg.outDir = args.outDir;
  fs::create_directories(cfg.outDir);
  return cfg;
}

std::string outPath(const JobConfig& cfg, const std::string& name, const std::string& fmt) {
  std::string ext = fmt == "json" ? ".json" : ".csv";
  return (fs::path(cfg.outDir) / (name + ext)).string();
}

void requireWindow(const JobConfig& cfg) {
  if (cfg.window.range.empty())
    throw ConfigError("this subcommand needs a window (config 'window' or --window)");
}

void printWarnings(const std::vector<std::string>& warnings) {
  for (auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

Json runValidate(const JobConfig& cfg) {
  Json report;
  report["command"] = "validate";
  auto L = cfg.buildMatrix();
  printWarnings(L.warnings());
  Json minors = Json::object();
  Vec minorValues;
  for (auto& [I, v] : L.plucker()) {
    std::string key;
    for (int i : I) key += (key.empty() ? "" : ",") + std::to_string(i + 1);
    minors[key] = v;
    minorValues.push_back(v);
  }
  report["minors"] = minors;
  report["minors_positive"] = true;
  auto rel = qIndependenceHeuristic(minorValues);
  report["q_independence"] = rel.found ? "relation-found" : "no-relation-found";
  if (rel.found) {
    std::cerr << "warning: integer relation among minors found (heuristic); "
                 "non-periodicity hypotheses may fail\n";
    Json coeffs = Json::array();
    for (auto c : rel.coefficients) coeffs.push_back(c);
    report["q_relation"] = coeffs;
  } else {
    std::cerr << "note: no integer relation among minors found at height 1e6 "
                 "(heuristic evidence only, not a proof of Q-independence)\n";
  }

  Json factors = Json::array();
  auto describeCurve = [&](const LeeYangCurve& curve) {
    for (std::size_t j = 0; j < curve.ambient(); ++j) {
      auto& cert = curve.certificates()[j];
      Json f;
      f["degree"] = cert.degree;
      f["zeros"] = cert.zeros;
      f["poles"] = cert.poles;
      f["zero_at_infinity"] = cert.zeroAtInfinity;
      f["pole_at_infinity"] = cert.poleAtInfinity;
      f["orientation"] = cert.orientation;
      factors.push_back(f);
    }
  };
  if (cfg.isProduct()) {
    auto pc = cfg.buildProduct();
    for (std::size_t b = 0; b < pc.blockCount(); ++b) describeCurve(pc.block(b));
    report["codimension"] = pc.codimension();
  } else {
    auto curve = cfg.buildCurve();
    describeCurve(curve);
    Json md = Json::array();
    for (int m : curve.multidegree()) md.push_back(m);
    report["multidegree"] = md;
    for (std::size_t a = 0; a < curve.ambient(); ++a)
      for (std::size_t b = a + 1; b < curve.ambient(); ++b) {
        auto& fa = curve.factors()[a];
        auto& fb = curve.factors()[b];
        if (fa.num == fb.num && fa.den == fb.den)
          std::cerr << "warning: factors " << a + 1 << " and " << b + 1
                    << " coincide (degenerate geometry; still injective)\n";
      }
  }
  report["factors"] = factors;
  report["status"] = "ok";
  return report;
}

Json runPoints(const JobConfig& cfg, const std::string& fmt, bool product) {
  requireWindow(cfg);
  EnumerateOptions opts;
  opts.residualTol = cfg.residualTol;
  QuasicrystalWindow qw;
  auto L = cfg.buildMatrix();
  if (product || cfg.isProduct()) {
    auto pc = cfg.buildProduct();
    qw = enumeratePointsProduct(pc, L, cfg.window, opts);
  } else {
    auto curve = cfg.buildCurve();
    qw = enumeratePoints(curve, L, cfg.window, opts);
  }
  printWarnings(qw.warnings);
  emitPoints(qw, outPath(cfg, "points", fmt), fmt == "json");
  Json summary;
  summary["command"] = product ? "points-product" : "points";
  summary["count"] = qw.points.size();
  if (qw.points.size() >= 2) {
    auto st = deloneStats(qw);
    summary["density_est"] = st.densityEstimate;
    summary["min_gap"] = st.minGap;
    summary["covering_radius_est"] = st.coveringRadiusEstimate;
  }
  double maxResid = 0;
  for (auto& p : qw.points) maxResid = std::max(maxResid, p.residual);
  summary["max_residual"] = maxResid;
  summary["file"] = outPath(cfg, "points", fmt);
  return summary;
}

double radiusOrDefault(const JobConfig& cfg, double R) {
  if (R > 0) return R;
  if (!cfg.window.range.empty()) {
    double m = 0;
    for (auto& [lo, hi] : cfg.window.range) m = std::max(m, std::max(-lo, hi));
    return m;
  }
  return 10.0;
}

Json runSpectrum(const JobConfig& cfg, const std::string& fmt, double R) {
  auto L = cfg.buildMatrix();
  double radius = radiusOrDefault(cfg, R);
  Box window = cfg.window;
  if (window.range.empty())
    for (std::size_t c = 0; c < L.cols(); ++c) window.range.push_back({-radius, radius});
  auto sup = enumerateSpectrum(L, window, radius);
  printWarnings(sup.warnings);
  emitSpectrum(sup, outPath(cfg, "spectrum", fmt), fmt == "json");
  Json summary;
  summary["command"] = "spectrum";
  summary["count"] = sup.atoms.size();
  summary["collisions"] = sup.collisions.size();
  summary["file"] = outPath(cfg, "spectrum", fmt);
  return summary;
}

Json runCoeffs(const JobConfig& cfg, const std::string& fmt, double R) {
  auto L = cfg.buildMatrix();
  double radius = radiusOrDefault(cfg, R);
  Box window = cfg.window;
  if (window.range.empty())
    for (std::size_t c = 0; c < L.cols(); ++c) window.range.push_back({-radius, radius});
  auto sup = enumerateSpectrum(L, window, radius);
  std::vector<SpectrumAtomWithCoefficient> atoms;
  std::string method = "quadrature";
  if (cfg.isProduct()) {
    auto pc = cfg.buildProduct();
    atoms = coefficientsOnWindow(pc, L, sup);
    method = "product";
  } else {
    auto curve = cfg.buildCurve();
    atoms = coefficientsOnWindow(curve, L, sup);
  }
  emitCoefficients(atoms, L.cols(), outPath(cfg, "coeffs", fmt), fmt == "json", method);
  Json summary;
  summary["command"] = "coeffs";
  summary["atoms"] = atoms.size();
  long zeroed = 0;
  double maxAbs = 0, c0 = 0;
  for (auto& a : atoms) {
    if (a.numericallyZero) ++zeroed;
    maxAbs = std::max(maxAbs, std::abs(a.c));
    if (norm2(a.xi) < 1e-12) c0 = a.c.real();
  }
  summary["numerically_zero"] = zeroed;
  summary["max_abs_c"] = maxAbs;
  summary["c0"] = c0;
  summary["file"] = outPath(cfg, "coeffs", fmt);
  return summary;
}

Json runDensity(const JobConfig& cfg) {
  auto L = cfg.buildMatrix();
  Json summary;
  summary["command"] = "density";
  double c0;
  if (cfg.isProduct()) {
    auto pc = cfg.buildProduct();
    c0 = densityFromMultidegree(pc, L);
  } else {
    auto curve = cfg.buildCurve();
    c0 = densityFromMultidegree(curve, L);
    Cplx byQuad = cLk(curve, L, IVec(curve.ambient(), 0));
    summary["c0_quadrature"] = byQuad.real();
  }
  summary["c0"] = c0;
  if (!cfg.window.range.empty()) {
    EnumerateOptions opts;
    opts.residualTol = cfg.residualTol;
    QuasicrystalWindow qw;
    if (cfg.isProduct()) {
      qw = enumeratePointsProduct(cfg.buildProduct(), L, cfg.window, opts);
    } else {
      qw = enumeratePoints(cfg.buildCurve(), L, cfg.window, opts);
    }
    auto st = deloneStats(qw);
    summary["density_est"] = st.densityEstimate;
    summary["count"] = qw.points.size();
  }
  return summary;
}

Json runVolume(const JobConfig& cfg) {
  auto L = cfg.buildMatrix();
  auto poly = varPolytopeVolume(L);
  Json pieces = Json::array();
  for (auto& p : poly.pieces) {
    Json piece;
    piece["sigma"] = p.sigma;
    piece["volume"] = p.volume;
    pieces.push_back(piece);
  }
  Json summary;
  summary["command"] = "volume";
  summary["total"] = poly.totalVolume;
  summary["pieces"] = pieces;
  std::ofstream out(fs::path(cfg.outDir) / "volume.json");
  Json file;
  file["total"] = poly.totalVolume;
  file["pieces"] = pieces;
  out << file.dump(2) << "\n";
  return summary;
}

Json runGrowth(const JobConfig& cfg, std::vector<double> Rs) {
  auto L = cfg.buildMatrix();
  if (Rs.empty()) Rs = {10.0, 20.0, 40.0};
  auto rows = growthCheck(L, Vec(Rs.begin(), Rs.end()));
  auto poly = varPolytopeVolume(L);
  Json table = Json::array();
  for (auto& r : rows) {
    Json row;
    row["R"] = r.R;
    row["count"] = r.count;
    row["count_over_R_pow_n"] = r.normalized;
    table.push_back(row);
  }
  // fit count = a R^n + b R^{n-1} to expose the O(R^{n-1}) correction
  const int n = int(L.rows());
  double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
  for (auto& r : rows) {
    double v = std::pow(r.R, n), w = std::pow(r.R, n - 1);
    a11 += v * v;
    a12 += v * w;
    a22 += w * w;
    b1 += v * double(r.count);
    b2 += w * double(r.count);
  }
  double det = a11 * a22 - a12 * a12;
  Json summary;
  summary["command"] = "growth";
  summary["table"] = table;
  summary["volume"] = poly.totalVolume;
  if (std::abs(det) > 1e-12) {
    summary["fit_leading"] = (a22 * b1 - a12 * b2) / det;
    summary["fit_correction"] = (-a12 * b1 + a11 * b2) / det;
  }
  return summary;
}

Json runSummation(const JobConfig& cfg, double sigma, std::vector<double> mu) {
  if (cfg.isProduct()) throw ConfigError("summation supports curve configs (c = 1) only");
  auto curve = cfg.buildCurve();
  auto L = cfg.buildMatrix();
  const std::size_t d = L.cols();
  GaussianTest g;
  g.sigma = sigma;
  g.mu = mu.empty() ? Vec(d, 0.0) : Vec(mu.begin(), mu.end());
  if (g.mu.size() != d) throw ConfigError("--mu needs d components");

  double c0 = densityFromMultidegree(curve, L);
  auto poly = varPolytopeVolume(L);
  auto [rw, rs] = summationRadii(c0, poly.totalVolume, d, L.rows(), g);

  Box pointWindow;
  for (std::size_t c = 0; c < d; ++c) pointWindow.range.push_back({-rw, rw});
  EnumerateOptions opts;
  opts.residualTol = cfg.residualTol;
  auto qw = enumeratePoints(curve, L, pointWindow, opts);

  Box specWindow;
  for (std::size_t c = 0; c < d; ++c) specWindow.range.push_back({-rs, rs});
  auto sup = enumerateSpectrum(L, specWindow, rs, &poly);
  auto atoms = coefficientsOnWindow(curve, L, sup);

  auto rep = verifySummation(qw, atoms, g, c0, poly.totalVolume, L.rows(), rs);
  Json summary;
  summary["command"] = "summation";
  summary["sigma"] = sigma;
  summary["mu"] = g.mu;
  summary["lhs"] = Json::array({rep.lhs.real(), rep.lhs.imag()});
  summary["rhs"] = Json::array({rep.rhs.real(), rep.rhs.imag()});
  summary["abs_diff"] = rep.absDiff;
  summary["tail_bound"] = rep.tailBound;
  std::ofstream out(fs::path(cfg.outDir) / "summation.json");
  Json file;
  file["lhs"] = summary["lhs"];
  file["rhs"] = summary["rhs"];
  file["abs_diff"] = rep.absDiff;
  file["tail_bound"] = rep.tailBound;
  out << file.dump(2) << "\n";
  return summary;
}

Json runDiffraction(const JobConfig& cfg, const std::string& fmt, std::vector<double> Rs) {
  requireWindow(cfg);
  if (cfg.isProduct()) throw ConfigError("diffraction supports curve configs (c = 1) only");
  auto curve = cfg.buildCurve();
  auto L = cfg.buildMatrix();
  EnumerateOptions opts;
  opts.residualTol = cfg.residualTol;
  auto qw = enumeratePoints(curve, L, cfg.window, opts);
  double inscribed = std::numeric_limits<double>::infinity();
  for (auto& [lo, hi] : cfg.window.range) inscribed = std::min(inscribed, std::min(-lo, hi));
  if (Rs.empty()) Rs = {0.25 * inscribed, 0.5 * inscribed, inscribed};
  // frequencies: xi = 0 plus the nearest nonzero spectrum atoms
  double specR = 3.0;
  Box specWindow;
  for (std::size_t c = 0; c < L.cols(); ++c) specWindow.range.push_back({-specR, specR});
  auto sup = enumerateSpectrum(L, specWindow, specR);
  auto atoms = coefficientsOnWindow(curve, L, sup);
  std::vector<Vec> xis;
  for (auto& a : atoms) {
    if (xis.size() >= 6) break;
    if (!a.numericallyZero) xis.push_back(a.xi);
  }
  auto rows = expSumSweep(qw, xis, Vec(Rs.begin(), Rs.end()));
  emitDiffraction(rows, L.cols(), outPath(cfg, "diffraction", fmt), fmt == "json");

  double c0 = densityFromMultidegree(curve, L);
  std::vector<VarianceRow> vrows;
  for (double R : {0.125 * inscribed, 0.25 * inscribed, 0.5 * inscribed})
    vrows.push_back(numberVariance(qw, R, 2000, cfg.seed, c0));
  emitVariance(vrows, outPath(cfg, "variance", fmt), fmt == "json");

  Json summary;
  summary["command"] = "diffraction";
  summary["frequencies"] = xis.size();
  summary["radii"] = Rs;
  summary["files"] = Json::array({outPath(cfg, "diffraction", fmt), outPath(cfg, "variance", fmt)});
  Json variance = Json::array();
  for (auto& v : vrows) {
    Json row;
    row["R"] = v.R;
    row["variance"] = v.variance;
    row["sup_dev"] = v.supDev;
    variance.push_back(row);
  }
  summary["variance"] = variance;
  return summary;
}

Json runPlot(const JobConfig& cfg, bool overlay) {
  requireWindow(cfg);
  Json summary;
  summary["command"] = "plot";
  auto L = cfg.buildMatrix();
  EnumerateOptions opts;
  opts.residualTol = cfg.residualTol;
  if (cfg.isProduct()) {
    auto pc = cfg.buildProduct();
    auto qw = enumeratePointsProduct(pc, L, cfg.window, opts);
    plotPoints(qw, nullptr, nullptr, false, (fs::path(cfg.outDir) / "points.svg").string());
    summary["points_svg"] = (fs::path(cfg.outDir) / "points.svg").string();
  } else {
    auto curve = cfg.buildCurve();
    auto qw = enumeratePoints(curve, L, cfg.window, opts);
    plotPoints(qw, &curve, &L, overlay, (fs::path(cfg.outDir) / "points.svg").string());
    summary["points_svg"] = (fs::path(cfg.outDir) / "points.svg").string();
    double radius = 0;
    for (auto& [lo, hi] : cfg.window.range) radius = std::max(radius, std::max(-lo, hi));
    radius = std::min(radius, 8.0);
    Box specWindow;
    for (std::size_t c = 0; c < L.cols(); ++c) specWindow.range.push_back({-radius, radius});
    auto sup = enumerateSpectrum(L, specWindow, radius);
    auto atoms = coefficientsOnWindow(curve, L, sup);
    plotSpectrum(atoms, specWindow, (fs::path(cfg.outDir) / "spectrum.svg").string());
    summary["spectrum_svg"] = (fs::path(cfg.outDir) / "spectrum.svg").string();
  }
  return summary;
}

Json runLineProbe(const JobConfig& cfg, std::vector<double> a, std::vector<double> b, int jRange) {
  requireWindow(cfg);
  auto L = cfg.buildMatrix();
  EnumerateOptions opts;
  opts.residualTol = cfg.residualTol;
  QuasicrystalWindow qw = cfg.isProduct()
                              ? enumeratePointsProduct(cfg.buildProduct(), L, cfg.window, opts)
                              : enumeratePoints(cfg.buildCurve(), L, cfg.window, opts);
  if (a.size() != cfg.window.dim() || b.size() != cfg.window.dim())
    throw ConfigError("--a/--b need d components");
  long hits = lineProbe(qw, Vec(a.begin(), a.end()), Vec(b.begin(), b.end()), jRange);
  Json summary;
  summary["command"] = "line-probe";
  summary["hits"] = hits;
  summary["j_range"] = jRange;
  summary["note"] =
      "finiteness is the theoretical guarantee; the count must not scale with j_range";
  return summary;
}

Json runAlmostPeriods(const JobConfig& cfg, double eps, std::vector<double> search) {
  requireWindow(cfg);
  if (cfg.isProduct()) throw ConfigError("almost-periods supports curve configs only");
  auto curve = cfg.buildCurve();
  auto L = cfg.buildMatrix();
  EnumerateOptions opts;
  opts.residualTol = cfg.residualTol;
  auto qw = enumeratePoints(curve, L, cfg.window, opts);
  Box searchBox;
  if (search.empty()) {
    for (std::size_t c = 0; c < L.cols(); ++c) searchBox.range.push_back({-2.0, 2.0});
  } else {
    for (std::size_t i = 0; i + 1 < search.size(); i += 2)
      searchBox.range.push_back({search[i], search[i + 1]});
  }
  auto periods = almostPeriodProbe(qw, L, eps, searchBox);
  Json list = Json::array();
  double fittedC = 0;
  for (auto& ap : periods) {
    Json row;
    row["tau"] = ap.tau;
    row["dist_Ltau_Z"] = ap.distLtauToZ;
    row["hausdorff"] = ap.hausdorff;
    list.push_back(row);
    if (ap.distLtauToZ > 1e-12) fittedC = std::max(fittedC, ap.hausdorff / ap.distLtauToZ);
  }
  Json summary;
  summary["command"] = "almost-periods";
  summary["eps"] = eps;
  summary["count"] = periods.size();
  summary["fitted_C"] = fittedC;
  summary["periods"] = list;
  return summary;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier quasicrystals from Lee-Yang curves"};
  app.require_subcommand(1);

  CommonArgs args;
  double radius = 0.0;
  double sigma = 0.7;
  double eps = 0.1;
  int jRange = 200;
  bool overlay = false;
  std::vector<double> Rs, mu, probeA, probeB, search;

  auto addSub = [&](const std::string& name, const std::string& desc) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    addCommon(cmd, args);
    return cmd;
  };

  addSub("validate", "validate the curve and matrix, report certificates");
  addSub("points", "enumerate Lambda inside the window");
  addSub("points-product", "enumerate Lambda for a product curve");
  auto* cmdSpectrum = addSub("spectrum", "enumerate the spectrum support Lambda'");
  cmdSpectrum->add_option("--radius", radius, "spectrum radius");
  auto* cmdCoeffs = addSub("coeffs", "Fourier coefficients on a spectrum window");
  cmdCoeffs->add_option("--radius", radius, "spectrum radius");
  addSub("density", "density c0 by multidegree, quadrature, and counting");
  auto* cmdSummation = addSub("summation", "verify the summation formula with a Gaussian");
  cmdSummation->add_option("--sigma", sigma, "Gaussian width");
  cmdSummation->add_option("--mu", mu, "Gaussian center")->expected(-1);
  auto* cmdDiffraction = addSub("diffraction", "exponential sums and number variance");
  cmdDiffraction->add_option("--R-sweep", Rs, "radii for the sweep")->expected(-1);
  addSub("volume", "var-polytope volume vol(P)");
  auto* cmdGrowth = addSub("growth", "lattice-point growth of R * P");
  cmdGrowth->add_option("--R-sweep", Rs, "radii for the growth table")->expected(-1);
  auto* cmdPlot = addSub("plot", "SVG plots of points and spectrum");
  cmdPlot->add_flag("--overlay", overlay, "overlay the trigonometric zero curves");
  auto* cmdProbe = addSub("line-probe", "count arithmetic-progression hits");
  cmdProbe->add_option("--a", probeA, "progression base point")->expected(-1);
  cmdProbe->add_option("--b", probeB, "progression step")->expected(-1);
  cmdProbe->add_option("--j-range", jRange, "probe j in [-jRange, jRange]");
  auto* cmdAP = addSub("almost-periods", "scan for Bohr almost periods");
  cmdAP->add_option("--eps", eps, "Hausdorff tolerance");
  cmdAP->add_option("--search", search, "search box: lo hi per coordinate")->expected(-1);

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string sub = app.get_subcommands().front()->get_name();
    JobConfig cfg = resolve(args);
    Json summary;
    if (sub == "validate")
      summary = runValidate(cfg);
    else if (sub == "points")
      summary = runPoints(cfg, args.format, false);
    else if (sub == "points-product")
      summary = runPoints(cfg, args.format, true);
    else if (sub == "spectrum")
      summary = runSpectrum(cfg, args.format, radius);
    else if (sub == "coeffs")
      summary = runCoeffs(cfg, args.format, radius);
    else if (sub == "density")
      summary = runDensity(cfg);
    else if (sub == "summation")
      summary = runSummation(cfg, sigma, mu);
    else if (sub == "diffraction")
      summary = runDiffraction(cfg, args.format, Rs);
    else if (sub == "volume")
      summary = runVolume(cfg);
    else if (sub == "growth")
      summary = runGrowth(cfg, Rs);
    else if (sub == "plot")
      summary = runPlot(cfg, overlay);
    else if (sub == "line-probe")
      summary = runLineProbe(cfg, probeA, probeB, jRange);
    else if (sub == "almost-periods")
      summary = runAlmostPeriods(cfg, eps, search);
    std::cout << summary.dump(2) << std::endl;
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Config:
        return 1;
      case ErrorKind::Validation:
        return 2;
      case ErrorKind::Numeric:
        return 3;
    }
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
