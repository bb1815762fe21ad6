#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numbers>
#include <ostream>
#include <sstream>

#include "exz/balayage/balayage.hpp"
#include "exz/cli/cli.hpp"
#include "exz/diagnostics/diagnostics.hpp"
#include "exz/geometry/corners.hpp"
#include "exz/parallel.hpp"

namespace exz::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using geom::cplx;

namespace {

// Files written by one command; removed again unless the command finishes.
class Outputs {
 public:
  explicit Outputs(fs::path dir) : dir_(std::move(dir)) {}
  ~Outputs() {
    if (done_) return;
    std::error_code ec;
    for (auto it = written_.rbegin(); it != written_.rend(); ++it) fs::remove(*it, ec);
    for (auto it = made_.rbegin(); it != made_.rend(); ++it) fs::remove(*it, ec);  // only if empty
  }
  Outputs(const Outputs&) = delete;
  Outputs& operator=(const Outputs&) = delete;

  void write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    make_dirs(p.parent_path());
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(Errc::BadInput, "cannot write " + p.string());
    written_.push_back(p);
    f << content;
    if (!f.flush()) throw Error(Errc::BadInput, "cannot write " + p.string());
  }
  void commit() { done_ = true; }
  const fs::path& dir() const { return dir_; }

 private:
  void make_dirs(const fs::path& d) {
    if (d.empty() || fs::exists(d)) return;
    make_dirs(d.parent_path());
    fs::create_directory(d);
    made_.push_back(d);
  }

  fs::path dir_;
  std::vector<fs::path> written_, made_;
  bool done_ = false;
};

struct Loaded {
  geom::Domain domain;
  std::vector<std::string> warnings;
};

Loaded load_domain(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::BadInput, "cannot read domain spec " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Loaded l;
  l.domain = geom::validate(geom::parse_domain_text(ss.str()), &l.warnings);
  return l;
}

cplx parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw Error(Errc::BadInput, "expected x,y but got '" + s + "'");
  return {geom::Scalar::parse(s.substr(0, comma)).to_double(), geom::Scalar::parse(s.substr(comma + 1)).to_double()};
}

std::vector<double> parse_list(const std::string& s, std::size_t want, const char* what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(geom::Scalar::parse(item).to_double());
  if (v.size() != want) throw Error(Errc::BadInput, std::string(what) + " needs " + std::to_string(want) + " numbers");
  return v;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string coord(const geom::Scalar& s) { return s.text().size() <= 12 ? s.text() : num(s.to_double()); }

std::string point(const geom::Point& p) { return "(" + coord(p.x) + "," + coord(p.y) + ")"; }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

num::PrecisionContext context(const RunConfig& c) { return num::PrecisionContext::with_bits(c.precision_bits); }

bal::WosConfig wos(const RunConfig& c) {
  bal::WosConfig w;
  w.samples_per_atom = c.wos_samples;
  w.shell_epsilon = c.wos_epsilon;
  w.seed = c.seed;
  return w;
}

std::size_t mesh_for(const RunConfig& c, const geom::Domain& d) {
  return c.leja_mesh ? c.leja_mesh : pot::default_leja_mesh(d, c.leja_count);
}

// Sector or disk corner used by the Green probes when none is given.
cplx default_corner(const geom::Domain& d) {
  if (auto* s = std::get_if<geom::Sector>(&d.shape)) return s->vertex.to_std();
  if (auto* k = std::get_if<geom::Disk>(&d.shape)) return k->center.to_std() + k->radius.to_double();
  throw Error(Errc::GeometryUnsupported, "Green probes need a disk or sector");
}

int cmd_inspect(const std::string& spec, std::ostream& out) {
  Loaded l = load_domain(spec);
  const geom::Domain& d = l.domain;
  for (const auto& w : l.warnings) out << "warning: " << w << "\n";
  out << "kind: " << geom::to_string(d.kind()) << ", components: " << d.components().size() << "\n";
  out << "area: " << num(geom::area_double(d)) << ", diameter: " << num(geom::diameter(d)) << "\n";
  const auto corners = geom::corner_scan(d);
  if (!corners.empty()) {
    out << "component  location                  angle/pi  class\n";
    for (const auto& c : corners) {
      char buf[128];
      const std::string loc = point(c.location);
      std::snprintf(buf, sizeof buf, "%-10d %-25s %-9s %s\n", c.component, loc.c_str(),
                    num(c.interior_angle.to_double() / std::numbers::pi).c_str(), geom::to_string(c.classification));
      out << buf;
    }
  }
  const auto v = geom::theorem_verdict(d);
  std::vector<std::string> witnesses;
  for (const auto& c : corners)
    if (c.classification == geom::CornerClass::inward_corner)
      witnesses.push_back(point(c.location));
  if (v.full_sequence_convergence_predicted) {
    out << witnesses.size() << " inward corner" << (witnesses.size() == 1 ? "" : "s") << " at ";
    for (std::size_t i = 0; i < witnesses.size(); ++i) out << (i ? ", " : "") << witnesses[i];
    out << "; full-sequence convergence predicted\n";
  } else if (witnesses.empty()) {
    out << "no NCS witness; no full-sequence prediction\n";
  } else {
    out << "NCS witness missing on some component; no full-sequence prediction\n";
  }
  for (const auto& c : v.components)
    if (v.components.size() > 1)
      out << "component " << c.component << ": " << (c.has_ncs_point ? "NCS point" : "no NCS point") << "\n";
  return 0;
}

ortho::OrthoSequence bergman_for(const RunConfig& c, const geom::Domain& d, int n) {
  return ortho::bergman_arnoldi(d, n, context(c));
}

ortho::ExteriorMapSeries faber_series(const std::string& disk, const std::string& interval, const std::string& ellipse,
                                      int K) {
  const int given = !disk.empty() + !interval.empty() + !ellipse.empty();
  if (given != 1) throw Error(Errc::BadInput, "give exactly one of --disk, --interval, --ellipse");
  if (!disk.empty()) {
    auto v = parse_list(disk, 3, "--disk cx,cy,r");
    return ortho::disk_map(Complex(v[0], v[1]), Real(v[2]), K);
  }
  if (!interval.empty()) {
    auto v = parse_list(interval, 2, "--interval a,b");
    if (!(v[1] > v[0])) throw Error(Errc::BadInput, "interval needs a < b");
    auto m = ortho::ellipse_map(Real((v[1] - v[0]) / 2), Real(0), K);
    m.coeffs[0] -= Complex(m.gamma * Real((v[0] + v[1]) / 2));
    return m;
  }
  auto v = parse_list(ellipse, 2, "--ellipse a,b");
  return ortho::ellipse_map(Real(v[0]), Real(v[1]), K);
}

std::string growth_csv(const diag::GrowthProbe& g) {
  std::string s = "n,max_root,running_limsup\n";
  char buf[96];
  for (std::size_t i = 0; i < g.n.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", g.n[i], g.max_root[i], g.running_limsup[i]);
    s += buf;
  }
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extremal polynomial sequences, zero distributions and equilibrium measures"};
  app.name("exz");
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir;
  long precision = 0;
  unsigned threads = 0;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  auto* o_out = app.add_option("--out", out_dir, "output directory");
  auto* o_prec = app.add_option("--precision-bits", precision, "working precision in bits (>= 128)");
  auto* o_threads = app.add_option("--threads", threads, "worker thread cap (results do not depend on it)");
  auto* o_seed = app.add_option("--seed", seed, "random seed");

  std::string spec, from, cloud_path, corner, n_list_text, disk, interval, ellipse, opening = "1.5pi";
  int n = 0, n_max = 0, zeros_n = 0, count = 0;
  std::size_t mesh = 0;
  double rmin = 1e-7, rmax = 1e-4;
  int points = 16;

  auto* domain = app.add_subcommand("domain", "domain specs");
  domain->require_subcommand(1);
  auto* inspect = domain->add_subcommand("inspect", "corner table and convergence prediction");
  inspect->add_option("spec", spec, "domain JSON")->required();

  auto* bergman = app.add_subcommand("bergman", "Bergman polynomials by Arnoldi; writes hessenberg.json");
  bergman->add_option("spec", spec, "domain JSON")->required();
  auto* o_nmax = bergman->add_option("--n-max", n_max, "highest degree");

  auto* zeros = app.add_subcommand("zeros", "zeros of B_n; writes zeros_<n>.csv");
  zeros->add_option("spec", spec, "domain JSON")->required();
  zeros->add_option("--n", n, "degree")->required();
  zeros->add_option("--from", from, "hessenberg.json from a previous bergman run")->check(CLI::ExistingFile);

  auto* faber = app.add_subcommand("faber", "Faber polynomials from an exterior map series; writes faber.json");
  faber->add_option("--disk", disk, "cx,cy,r");
  faber->add_option("--interval", interval, "a,b");
  faber->add_option("--ellipse", ellipse, "a,b (semi-axes, a >= b)");
  auto* o_fnmax = faber->add_option("--n-max", n_max, "highest degree");
  faber->add_option("--zeros", zeros_n, "also write zeros_<n>.csv");

  auto* leja = app.add_subcommand("leja", "Leja points; writes leja.csv");
  leja->add_option("spec", spec, "domain JSON")->required();
  auto* o_count = leja->add_option("--count", count, "number of points");
  auto* o_mesh = leja->add_option("--mesh", mesh, "boundary mesh size");

  auto* capacity = app.add_subcommand("capacity", "capacity estimate");
  capacity->add_option("spec", spec, "domain JSON");
  capacity->add_option("--interval", interval, "a,b instead of a domain");
  auto* o_ccount = capacity->add_option("--count", count, "number of Leja points");

  auto* balayage = app.add_subcommand("balayage", "sweep a cloud onto the boundary; writes balayage.csv");
  balayage->add_option("spec", spec, "domain JSON")->required();
  balayage->add_option("--cloud", cloud_path, "re,im,weight CSV")->check(CLI::ExistingFile);
  balayage->add_option("--zeros", zeros_n, "use the zeros of B_n instead");
  auto* o_samples = balayage->add_option("--samples", count, "samples per atom");

  auto* probe = app.add_subcommand("probe", "probes; write probes/*.csv");
  probe->require_subcommand(1);
  auto* green = probe->add_subcommand("green", "Green function exponent at the vertex of a symmetric sector");
  green->add_option("--opening", opening, "opening angle, e.g. 1.5pi");
  green->add_option("--rmin", rmin, "smallest radius");
  green->add_option("--rmax", rmax, "largest radius");
  green->add_option("--points", points, "number of radii");
  auto* ncs = probe->add_subcommand("ncs", "Green function exponent at a corner of a disk or sector");
  ncs->add_option("spec", spec, "domain JSON")->required();
  ncs->add_option("--corner", corner, "x,y (default: sector vertex, or rightmost disk point)");
  ncs->add_option("--rmin", rmin, "smallest radius");
  ncs->add_option("--rmax", rmax, "largest radius");
  ncs->add_option("--points", points, "number of radii");
  auto* density = probe->add_subcommand("density", "equilibrium density trend at corners");
  density->add_option("spec", spec, "domain JSON")->required();
  density->add_option("--corner", corner, "x,y (default: every non-straight corner)");
  auto* proof = probe->add_subcommand("proof-s", "angular integrals of S near an inward-corner vertex");
  proof->add_option("spec", spec, "sector JSON")->required();
  auto* growth = probe->add_subcommand("growth", "interior growth of |P_n|^(1/n)");
  growth->add_option("spec", spec, "domain JSON")->required();
  auto* o_gnlist = growth->add_option("--n-list", n_list_text, "comma separated degrees");

  auto* study = app.add_subcommand("study", "full sequence study; writes report.json");
  study->add_option("spec", spec, "domain JSON")->required();
  auto* o_nlist = study->add_option("--n-list", n_list_text, "comma separated increasing degrees");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "exz: error: " << e.what() << "\n";
    return 2;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    apply_env(cfg);
    if (o_prec->count()) cfg.precision_bits = precision;
    if (o_out->count()) cfg.out_dir = out_dir;
    if (o_threads->count()) cfg.threads = threads;
    if (o_seed->count()) cfg.seed = seed;
    if (o_nmax->count() || o_fnmax->count()) cfg.n_max = n_max;
    if (o_count->count() || o_ccount->count()) cfg.leja_count = static_cast<std::size_t>(count);
    if (o_mesh->count()) cfg.leja_mesh = mesh;
    if (o_samples->count()) cfg.wos_samples = static_cast<std::uint32_t>(count);
    if (o_nlist->count() || o_gnlist->count()) {
      cfg.n_list.clear();
      std::stringstream ss(n_list_text);
      std::string item;
      while (std::getline(ss, item, ','))
        try {
          cfg.n_list.push_back(std::stoi(item));
        } catch (const std::logic_error&) {
          throw Error(Errc::BadInput, "bad --n-list entry '" + item + "'");
        }
    }
    cfg.validate();
    set_max_threads(cfg.threads);
    ScopedPrecision wp(cfg.precision_bits);
    Outputs files(cfg.out_dir);

    if (inspect->parsed()) {
      cmd_inspect(spec, out);
    } else if (bergman->parsed()) {
      auto d = load_domain(spec).domain;
      auto seq = bergman_for(cfg, d, cfg.n_max);
      files.write("hessenberg.json", dump(ortho::sequence_to_json(seq)));
      out << "n_max " << seq.n_max << ", orthonormality residual " << seq.ortho_residual.to_string(3) << "\n";
    } else if (zeros->parsed()) {
      auto d = load_domain(spec).domain;
      ortho::OrthoSequence seq;
      if (!from.empty()) {
        std::ifstream in(from);
        try {
          seq = ortho::sequence_from_json(json::parse(in));
        } catch (const json::exception& e) {
          throw Error(Errc::BadInput, std::string("malformed ") + from + ": " + e.what());
        }
      } else {
        seq = bergman_for(cfg, d, n);
      }
      auto z = ortho::zeros_mp(seq, n);
      files.write("zeros_" + std::to_string(n) + ".csv", ortho::zeros_csv(n, z));
      out << z.size() << " zeros written\n";
    } else if (faber->parsed()) {
      auto seq = ortho::faber_from_series(faber_series(disk, interval, ellipse, cfg.n_max), cfg.n_max);
      files.write("faber.json", dump(ortho::sequence_to_json(seq)));
      if (zeros_n > 0)
        files.write("zeros_" + std::to_string(zeros_n) + ".csv", ortho::zeros_csv(zeros_n, ortho::zeros_mp(seq, zeros_n)));
      out << "Faber polynomials F_0..F_" << cfg.n_max << "\n";
    } else if (leja->parsed()) {
      auto d = load_domain(spec).domain;
      auto mu = pot::leja_points(d, cfg.leja_count, mesh_for(cfg, d));
      files.write("leja.csv", pot::cloud_csv(mu));
      out << mu.size() << " Leja points\n";
    } else if (capacity->parsed()) {
      MeasureCloud mu;
      if (!interval.empty()) {
        if (!spec.empty()) throw Error(Errc::BadInput, "give a domain spec or --interval, not both");
        auto v = parse_list(interval, 2, "--interval a,b");
        if (!(v[1] > v[0])) throw Error(Errc::BadInput, "interval needs a < b");
        const std::size_t m = std::max<std::size_t>(16 * cfg.leja_count + 1, 4097);
        std::vector<cplx> grid(m);
        for (std::size_t i = 0; i < m; ++i) grid[i] = v[0] + (v[1] - v[0]) * static_cast<double>(i) / static_cast<double>(m - 1);
        mu = pot::leja_on_mesh(grid, cfg.leja_count);
      } else {
        if (spec.empty()) throw Error(Errc::BadInput, "capacity needs a domain spec or --interval");
        auto d = load_domain(spec).domain;
        mu = pot::leja_points(d, cfg.leja_count, mesh_for(cfg, d));
      }
      auto c = pot::capacity_leja(mu);
      char buf[96];
      std::snprintf(buf, sizeof buf, "capacity %.10g (%s, M = %zu)\n", c.value, pot::to_string(c.method), c.point_count);
      out << buf;
    } else if (balayage->parsed()) {
      auto d = load_domain(spec).domain;
      MeasureCloud c;
      if (!cloud_path.empty() == (zeros_n > 0)) throw Error(Errc::BadInput, "give exactly one of --cloud, --zeros");
      if (!cloud_path.empty())
        c = read_cloud_csv(cloud_path);
      else
        c = ortho::zeros(bergman_for(cfg, d, zeros_n), zeros_n);
      auto b = bal::balayage_out(c, d, wos(cfg));
      files.write("balayage.csv", pot::cloud_csv(b));
      const Mass m = b.total_mass();
      out << b.size() << " atoms, total mass " << m.numerator() << "/" << m.denominator() << "\n";
    } else if (green->parsed() || ncs->parsed()) {
      geom::Domain d;
      if (green->parsed()) {
        const Real half = geom::Scalar::parse(opening).value() / 2;
        d = geom::validate(geom::make_sector(0, 0, 1, geom::Scalar::from_real(-half).text(), geom::Scalar::from_real(half).text()));
      } else {
        d = load_domain(spec).domain;
      }
      const cplx at = corner.empty() ? default_corner(d) : parse_point(corner);
      auto p = pot::ncs_limit_probe(pot::make_green_spec(d, pot::default_pole(d)), at,
                                    pot::geometric_radii(rmax, rmin, static_cast<std::size_t>(points)), cfg.fit_tol);
      files.write(std::string("probes/") + (green->parsed() ? "green" : "ncs") + ".csv", pot::trace_csv(p.trace));
      out << "exponent " << num(p.exponent) << ", " << (p.ncs ? "NCS" : "not NCS") << "\n";
    } else if (density->parsed()) {
      auto d = load_domain(spec).domain;
      auto mu = pot::leja_points(d, cfg.leja_count, mesh_for(cfg, d));
      const double diam = geom::diameter(d);
      std::vector<double> radii;
      for (double r : diag::StudyConfig{}.ring_radii) radii.push_back(r * diam);
      std::vector<cplx> at;
      if (!corner.empty()) {
        at.push_back(parse_point(corner));
      } else {
        for (const auto& c : geom::corner_scan(d))
          if (c.classification != geom::CornerClass::straight) at.push_back(c.location.to_std());
      }
      if (at.empty()) throw Error(Errc::BadInput, "domain has no corners; pass --corner");
      for (std::size_t i = 0; i < at.size(); ++i) {
        auto p = pot::corner_density_probe(mu, d, at[i], radii);
        files.write("probes/density_" + std::to_string(i) + ".csv", pot::trace_csv(p.trace));
        out << "(" << num(at[i].real()) << "," << num(at[i].imag()) << "): " << pot::to_string(p.trend) << ", slope "
            << num(p.slope) << "\n";
      }
    } else if (proof->parsed()) {
      auto d = load_domain(spec).domain;
      auto pc = bal::default_proof_probe(d);
      pc.leja_count = cfg.leja_count;
      auto p = bal::proof_probe_s(pc);
      files.write("probes/proof_s.csv", bal::proof_probe_csv(p));
      out << "claim (b): growth per decade " << num(p.growth_per_decade) << (p.claim_b_diverging ? ", diverging" : ", not diverging")
          << "\nclaim (a): tau " << num(p.tau) << (p.claim_a_bounded ? ", bounded below" : ", not bounded below")
          << "\nS at the corner " << num(p.s_corner) << "\n";
    } else if (growth->parsed()) {
      auto d = load_domain(spec).domain;
      auto seq = bergman_for(cfg, d, cfg.n_list.back());
      const double cap = pot::capacity_leja(pot::leja_points(d, cfg.leja_count, mesh_for(cfg, d))).value;
      diag::GrowthProbe g;
      for (std::size_t comp = 0; comp < d.components().size(); ++comp) {
        auto pts = diag::interior_grid(d, diag::RegionFilter{static_cast<int>(comp), 1}, 24, 0.005);
        auto gc = diag::interior_growth_probe(seq, cfg.n_list, pts, cap);
        if (g.n.empty()) g = gc;
        for (std::size_t i = 0; i < g.n.size(); ++i) {
          g.max_root[i] = std::max(g.max_root[i], gc.max_root[i]);
          g.running_limsup[i] = std::max(g.running_limsup[i], gc.running_limsup[i]);
        }
      }
      files.write("probes/growth.csv", growth_csv(g));
      out << "running limsup " << num(g.running_limsup.front()) << ", capacity " << num(cap) << "\n";
    } else if (study->parsed()) {
      auto d = load_domain(spec).domain;
      diag::StudyConfig sc;
      sc.leja_count = cfg.leja_count;
      sc.leja_mesh = cfg.leja_mesh;
      sc.wos = wos(cfg);
      sc.wos_total_samples = cfg.wos_total;
      sc.thresholds = {cfg.tv, cfg.hull_escape};
      auto r = diag::sequence_study(d, cfg.n_list, context(cfg), sc);
      json report = diag::study_to_json(r, sc);
      report["calibration"]["precision_bits"] = cfg.precision_bits;
      report["calibration"]["fit_tol"] = cfg.fit_tol;
      files.write("report.json", dump(report));
      files.write("leja.csv", pot::cloud_csv(r.leja));
      for (const auto& p : r.per_n) files.write("zeros_" + std::to_string(p.n) + ".csv", pot::cloud_csv(p.zeros));
      for (std::size_t i = 0; i < r.corners.size(); ++i)
        files.write("probes/density_" + std::to_string(i) + ".csv", pot::trace_csv(r.corners[i].probe.trace));
      for (const auto& p : r.per_n)
        out << "n " << p.n << ": tv " << num(p.report.histogram_tv) << ", interior " << num(p.interior_fraction)
            << ", balayage sup " << num(p.balayage_grid_sup) << "\n";
      out << (r.theorem.full_sequence_convergence_predicted ? "convergence predicted" : "no prediction") << ", "
          << (r.convergence_observed ? "observed" : "not observed") << "\n";
    }
    files.commit();
    return 0;
  } catch (const Error& e) {
    err << "exz: error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "exz: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace exz::cli
