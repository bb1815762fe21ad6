// Runs the acceptance criteria and prints one PASS/FAIL line for each.
// Usage: acceptance [criterion numbers...]   (default: all)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "exz/balayage/balayage.hpp"
#include "exz/cli/cli.hpp"
#include "exz/diagnostics/diagnostics.hpp"
#include "exz/error.hpp"
#include "exz/orthopoly/sequence.hpp"
#include "exz/potential/potential.hpp"

using namespace exz;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

geom::Domain sector(const char* a, const char* b) { return geom::validate(geom::make_sector(0, 0, 1, a, b)); }

Outcome disk_arnoldi() {
  Outcome o;
  ScopedPrecision wp(1024);
  const auto s = ortho::bergman_arnoldi(geom::validate(geom::make_disk(0, 0, 1)), 50, num::PrecisionContext::with_bits(1024));
  Real worst(0);
  for (int j = 0; j <= 50; ++j)
    for (int k = 0; k < 50; ++k) {
      Complex want = j == k + 1 ? Complex(sqrt(Real(k + 1) / Real(k + 2))) : Complex();
      worst = max(worst, abs(s.hessenberg(j, k) - want));
    }
  o.require(worst < 1e-30, "Hessenberg entries to 1e-30");
  Real zmax(0);
  for (int n = 1; n <= 50; ++n)
    for (const auto& z : ortho::zeros_mp(s, n)) zmax = max(zmax, abs(z));
  o.require(zmax < 1e-20, "zeros within 1e-20 of the origin");
  o.note("max Hessenberg error " + worst.to_string(3) + ", max |zero| " + zmax.to_string(3));
  return o;
}

Outcome capacities() {
  Outcome o;
  const auto disk = geom::validate(geom::make_disk(0, 0, 2));
  const double cd = pot::capacity_leja(pot::leja_points(disk, 256, pot::default_leja_mesh(disk, 256))).value;
  std::vector<geom::cplx> grid(16385);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = -2.0 + 4.0 * static_cast<double>(i) / static_cast<double>(grid.size() - 1);
  const double ci = pot::capacity_leja(pot::leja_on_mesh(grid, 256)).value;
  o.require(std::abs(cd / 2 - 1) <= 0.02, "disk radius 2 within 2%");
  o.require(std::abs(ci - 1) <= 0.02, "[-2,2] within 2%");
  o.note("disk " + fmt("%.6f", cd) + ", interval " + fmt("%.6f", ci));
  return o;
}

Outcome ncs_exponents() {
  Outcome o;
  const auto radii = pot::geometric_radii(1e-4, 1e-7, 16);
  for (auto [a, b, label, want, tol, ncs] : {std::tuple{"-3pi/4", "3pi/4", "3pi/2", 2.0 / 3, 0.02, true},
                                             std::tuple{"-pi/4", "pi/4", "pi/2", 2.0, 0.05, false}}) {
    const auto d = sector(a, b);
    const auto p = pot::ncs_limit_probe(pot::make_green_spec(d, pot::default_pole(d)), 0.0, radii, 0.1);
    o.require(std::abs(p.exponent - want) <= tol, std::string("exponent for ") + label);
    o.require(p.ncs == ncs, std::string("verdict for ") + label);
    o.note(std::string("opening ") + label + ": " + fmt("%.5f", p.exponent) + (p.ncs ? " NCS" : " not NCS"));
  }
  return o;
}

diag::StudyConfig study_config(bool balayage) {
  diag::StudyConfig c;
  c.balayage = balayage;
  c.wos_total_samples = 100000;
  return c;
}

// Shared by criteria 4 and 6.
const diag::StudyReport& fig3_study() {
  static const diag::StudyReport r =
      diag::sequence_study(sector("-pi/4", "pi/4"), {50, 100, 150}, num::PrecisionContext::with_bits(1024), study_config(true));
  return r;
}

Outcome balayage_potential() {
  Outcome o;
  const auto& r = fig3_study();
  const auto& p = r.per_n[1];
  o.require(p.n == 100, "n = 100");
  o.require(p.balayage_circle_sup <= 1e-2, "sup distance on |z| = 5 at most 1e-2");
  o.require(p.balayage_mass == p.zeros.total_mass(), "balayage mass");
  o.note("n 100 sup on |z|=5 " + fmt("%.3g", p.balayage_circle_sup) + ", interior fraction " + fmt("%.3f", p.interior_fraction));
  return o;
}

Outcome reentrant_trend() {
  Outcome o;
  const auto r = diag::sequence_study(sector("-3pi/4", "3pi/4"), {50, 100, 150}, num::PrecisionContext::with_bits(1024),
                                      study_config(false));
  std::string tvs;
  for (std::size_t i = 0; i < r.per_n.size(); ++i) {
    const double tv = r.per_n[i].report.histogram_tv;
    tvs += (i ? ", " : "") + fmt("%.4f", tv);
    if (i > 0) o.require(tv < r.per_n[i - 1].report.histogram_tv, "TV decreases at n = " + std::to_string(r.per_n[i].n));
  }
  o.require(r.per_n.back().report.histogram_tv < 0.15, "TV < 0.15 at n = 150");
  bool found = false;
  for (const auto& c : r.corners)
    if (std::abs(c.corner.location.to_std()) < 1e-12) {
      found = true;
      o.require(c.probe.trend == pot::DensityTrend::vanishing, "density decreasing at the reentrant vertex");
      o.note("vertex density slope " + fmt("%.3f", c.probe.slope));
    }
  o.require(found, "reentrant vertex probed");
  o.note("TV " + tvs);
  return o;
}

Outcome convex_counterexample() {
  Outcome o;
  const auto& r = fig3_study();
  std::string s;
  for (const auto& p : r.per_n) {
    o.require(p.interior_fraction >= 0.8, "interior fraction at n = " + std::to_string(p.n));
    o.require(p.report.histogram_tv >= 0.3, "TV at n = " + std::to_string(p.n));
    s += (s.empty() ? "" : ", ") + std::to_string(p.n) + ": " + fmt("%.3f", p.interior_fraction) + "/" + fmt("%.3f", p.report.histogram_tv);
  }
  o.note("interior/TV " + s);
  return o;
}

Outcome proof_probe() {
  Outcome o;
  const auto p = bal::proof_probe_s(bal::default_proof_probe(sector("-3pi/4", "3pi/4")));
  const double decades = std::log10(p.r.front() / p.r.back());
  o.require(decades >= 3 - 1e-9, "three radius decades");
  o.require(p.claim_b_monotone && p.growth_per_decade > 2, "claim (b) grows by more than 2 per decade");
  o.require(p.claim_a_bounded, "claim (a) bounded below");
  o.require(std::abs(p.s_corner) < 1e-12, "S at the corner");
  o.note("growth/decade " + fmt("%.4f", p.growth_per_decade) + ", tau " + fmt("%.4f", p.tau) + ", S(corner) " + fmt("%.2g", p.s_corner));
  return o;
}

Outcome wos_poisson() {
  Outcome o;
  bal::WosConfig cfg;
  cfg.samples_per_atom = 100000;
  cfg.seed = 1;
  const geom::cplx z = 0.5;
  const auto out = bal::balayage_out(MeasureCloud::uniform({z}), geom::validate(geom::make_disk(0, 0, 1)), cfg);
  std::vector<double> h(36, 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double t = std::arg(out.points[i]);
    if (t < 0) t += 2 * kPi;
    h[std::min(35, static_cast<int>(t / (2 * kPi) * 36))] += out.weight(i);
  }
  auto pull = [&](double t) { return std::arg((std::polar(1.0, t) - z) / (1.0 - std::conj(z) * std::polar(1.0, t))); };
  double worst = 0;
  for (int b = 0; b < 36; ++b) {
    double m = pull(2 * kPi * (b + 1) / 36) - pull(2 * kPi * b / 36);
    while (m < 0) m += 2 * kPi;
    worst = std::max(worst, std::abs(h[b] - m / (2 * kPi)));
  }
  o.require(worst <= 4 / std::sqrt(1e5), "per-bin error at most 4/sqrt(N)");
  o.require(out.total_mass() == Mass(1), "mass exactly 1");
  o.note("max bin error " + fmt("%.3g", worst) + " vs " + fmt("%.3g", 4 / std::sqrt(1e5)));
  return o;
}

Outcome faber_oracles() {
  Outcome o;
  ScopedPrecision wp(1024);
  const auto f = ortho::faber_from_series(ortho::ellipse_map(Real(2), Real(0), 8), 8);
  o.require(f.coeffs[2][0] == Complex(-2) && f.coeffs[2][1] == Complex(0) && f.coeffs[2][2] == Complex(1), "F_2 = z^2 - 2");
  const auto z = ortho::zeros_mp(f, 2);
  bool roots = z.size() == 2;
  for (const auto& x : z) roots = roots && abs(abs(x.re) - sqrt(Real(2))) <= f.eig_tol && abs(x.im) <= f.eig_tol;
  o.require(roots && z[0].re.sign() != z[1].re.sign(), "zeros +-sqrt 2 to eig_tol");
  const auto g = ortho::faber_from_series(ortho::disk_map(Complex(0), Real(1), 12), 12);
  bool powers = true;
  for (int n = 0; n <= 12; ++n)
    for (int a = 0; a <= n; ++a) powers = powers && g.coeffs[n][a] == Complex(a == n ? 1 : 0);
  o.require(powers, "disk F_n = z^n");
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / ("exz_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(root);
  std::ofstream(root / "spec.json") << R"({"domain": {"kind": "polygon", "vertices": [[0,0],[2,0],[2,1],[1,1],[1,2],[0,2]]}})";
  std::ofstream(root / "config.json") << R"({"n_list": [10, 20, 30], "leja_count": 128, "wos_total": 6000, "seed": 7})";
  std::vector<std::map<std::string, std::string>> runs;
  for (int t : {1, 2, 8}) {
    const fs::path dir = root / ("t" + std::to_string(t));
    std::ostringstream out, err;
    const int rc = cli::run({"--config", (root / "config.json").string(), "--threads", std::to_string(t), "--out", dir.string(),
                             "study", (root / "spec.json").string()},
                            out, err);
    o.require(rc == 0, "study exit code with " + std::to_string(t) + " threads: " + err.str());
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(dir))
      if (e.is_regular_file()) files[fs::relative(e.path(), dir).string()] = slurp(e.path());
    runs.push_back(std::move(files));
  }
  o.require(runs[0].count("report.json") == 1, "report.json written");
  o.require(runs[0] == runs[1] && runs[0] == runs[2], "byte-identical outputs under 1, 2 and 8 threads");
  o.note(std::to_string(runs[0].size()) + " files compared");
  fs::remove_all(root);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "disk Arnoldi exactness", disk_arnoldi},
      {2, "capacity oracles", capacities},
      {3, "NCS exponent probe", ncs_exponents},
      {4, "balayage potential match, pi/2 sector n=100", balayage_potential},
      {5, "TV trend and corner density, 3pi/2 sector", reentrant_trend},
      {6, "convex counterexample, pi/2 sector", convex_counterexample},
      {7, "proof probe claims (a) and (b)", proof_probe},
      {8, "walk-on-spheres vs Poisson kernel", wos_poisson},
      {9, "Faber oracles", faber_oracles},
      {10, "determinism under 1, 2, 8 threads", determinism},
  };
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : all) {
    if (!pick.empty() && !pick.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  %2d  %s  (%.1f s)  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
