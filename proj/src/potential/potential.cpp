#include "exz/potential/potential.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "exz/error.hpp"
#include "exz/parallel.hpp"

namespace exz::pot {

namespace {

constexpr double kPi = std::numbers::pi;

struct Best {
  double value = -std::numeric_limits<double>::infinity();
  std::size_t index = 0;
  bool found = false;
};

// argmax over the mesh, lowest index on ties, independent of the thread count.
Best argmax(const std::vector<double>& score, const std::vector<char>& taken) {
  constexpr std::size_t block = 4096;
  const std::size_t chunks = chunk_count(score.size(), block);
  std::vector<Best> local(chunks);
  parallel_chunks(chunks, [&](std::size_t c) {
    Best b;
    for (std::size_t i = c * block; i < std::min(score.size(), (c + 1) * block); ++i)
      if (!taken[i] && (!b.found || score[i] > b.value)) b = {score[i], i, true};
    local[c] = b;
  });
  Best best;
  for (const auto& b : local)
    if (b.found && (!best.found || b.value > best.value)) best = b;
  return best;
}

struct SectorFrame {
  cplx vertex;
  double radius, start, opening;  // opening = lambda pi
};

SectorFrame sector_frame(const geom::Sector& s) {
  return {s.vertex.to_std(), s.radius.to_double(), s.angle_start.to_double(),
          s.angle_end.to_double() - s.angle_start.to_double()};
}

// Upper half-plane image of a point of the unit sector 0 < arg w < lambda pi.
cplx half_plane(cplx w, double lambda) {
  const double r = std::abs(w);
  const double theta = std::arg(w * std::polar(1.0, -lambda * kPi / 2)) + lambda * kPi / 2;
  const double rho = std::pow(r, 1 / lambda), phi = theta / lambda;
  return {-(rho + 1 / rho) * std::cos(phi) / 2, (1 / rho - rho) * std::sin(phi) / 2};
}

// log|u - conj(u0)| - log|u - u0| for u, u0 in the upper half-plane.
double half_plane_green(cplx u, cplx u0) {
  const double num = 4 * std::max(0.0, u.imag()) * u0.imag();
  if (num == 0) return 0;
  return 0.5 * std::log1p(num / std::norm(u - u0));
}

const geom::Domain& single(const geom::Domain& d) {
  auto comps = d.components();
  if (comps.size() != 1 || (d.kind() != geom::Kind::disk && d.kind() != geom::Kind::sector))
    throw Error(Errc::GeometryUnsupported, "closed-form Green functions need a single disk or sector");
  return d;
}

void fmt(std::string& out, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

}  // namespace

MeasureCloud leja_on_mesh(const std::vector<cplx>& mesh, std::size_t M) {
  if (M < 2) throw Error(Errc::BadInput, "Leja count must be at least 2");
  if (mesh.size() < M) throw Error(Errc::MeshTooCoarse, "mesh has fewer points than requested Leja points");
  std::size_t first = 0;
  for (std::size_t i = 1; i < mesh.size(); ++i) {
    const double a = std::abs(mesh[i]), b = std::abs(mesh[first]);
    if (a > b || (a == b && (mesh[i].real() < mesh[first].real() ||
                             (mesh[i].real() == mesh[first].real() && mesh[i].imag() < mesh[first].imag()))))
      first = i;
  }
  std::vector<double> score(mesh.size(), 0.0);
  std::vector<char> taken(mesh.size(), 0);
  std::vector<cplx> pts;
  pts.reserve(M);
  std::size_t next = first;
  for (std::size_t k = 0; k < M; ++k) {
    const cplx z = mesh[next];
    pts.push_back(z);
    taken[next] = 1;
    if (k + 1 == M) break;
    constexpr std::size_t block = 4096;
    parallel_chunks(chunk_count(mesh.size(), block), [&](std::size_t c) {
      for (std::size_t i = c * block; i < std::min(mesh.size(), (c + 1) * block); ++i)
        if (!taken[i]) score[i] += std::log(std::abs(mesh[i] - z));
    });
    Best b = argmax(score, taken);
    if (!b.found || !std::isfinite(b.value))
      throw Error(Errc::MeshTooCoarse, "mesh exhausted after " + std::to_string(k + 1) + " distinct Leja points");
    next = b.index;
  }
  return MeasureCloud::uniform(std::move(pts));
}

std::size_t default_leja_mesh(const geom::Domain& d, std::size_t M) {
  const double need = 4.0 * static_cast<double>(M) * geom::boundary_length(d) / geom::diameter(d);
  return 4 * static_cast<std::size_t>(std::ceil(need));
}

MeasureCloud leja_points(const geom::Domain& d, std::size_t M, std::size_t mesh_count) {
  if (M < 2) throw Error(Errc::BadInput, "Leja count must be at least 2");
  const double spacing = geom::boundary_length(d) / static_cast<double>(mesh_count);
  const double limit = geom::diameter(d) / (4.0 * static_cast<double>(M));
  if (mesh_count == 0 || !(spacing < limit))
    throw Error(Errc::MeshTooCoarse, "mesh spacing " + std::to_string(spacing) + " >= diam/(4M) = " +
                                         std::to_string(limit) + "; use at least " +
                                         std::to_string(default_leja_mesh(d, M) / 4 + 1) + " mesh points");
  // Half-step offset keeps vertices (where potentials get anchored) off the mesh.
  return leja_on_mesh(geom::boundary_mesh(d, mesh_count, 0.5), M);
}

const char* to_string(CapacityMethod m) { return m == CapacityMethod::leja_product ? "leja_product" : "exterior_map"; }

CapacityEstimate capacity_leja(const MeasureCloud& cloud) {
  const std::size_t M = cloud.size();
  if (M < 16) throw Error(Errc::BadInput, "capacity_leja needs at least 16 points");
  std::vector<double> rows(M, 0.0);
  parallel_chunks(M, [&](std::size_t j) {
    double s = 0;
    for (std::size_t k = j + 1; k < M; ++k) s += std::log(std::abs(cloud.points[j] - cloud.points[k]));
    rows[j] = s;
  });
  double total = 0;
  for (double r : rows) total += r;
  const double m = static_cast<double>(M);
  const double log_cap = 2 * total / (m * (m - 1)) - std::log(m) / (m - 1);
  return {std::exp(log_cap), M, CapacityMethod::leja_product};
}

CapacityEstimate capacity_from_map(const ortho::ExteriorMapSeries& map) {
  return {(1.0 / map.gamma).to_double(), 0, CapacityMethod::exterior_map};
}

double log_potential(const MeasureCloud& cloud, cplx z) {
  double s = 0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const double r = std::abs(z - cloud.points[i]);
    if (r == 0 && cloud.weights[i] != Mass(0))
      throw Error(Errc::PotentialInfinite, "potential evaluated at an atom");
    if (r > 0) s -= cloud.weight(i) * std::log(r);
  }
  return s;
}

GreenSpec make_green_spec(const geom::Domain& d, cplx pole) {
  single(d);
  if (!(geom::distance_to_boundary(d, pole) > 0)) throw Error(Errc::OutsideDomain, "Green pole must be interior");
  return {d, pole};
}

cplx default_pole(const geom::Domain& d) {
  single(d);
  if (auto* disk = std::get_if<geom::Disk>(&d.shape)) return disk->center.to_std();
  const SectorFrame f = sector_frame(std::get<geom::Sector>(d.shape));
  return f.vertex + std::polar(f.radius / 2, f.start + f.opening / 2);
}

double green_eval(const GreenSpec& spec, cplx z) {
  const geom::Domain& d = single(spec.domain);
  if (!geom::contains(d, z)) throw Error(Errc::OutsideDomain, "Green function evaluated outside the domain");
  if (z == spec.pole) return std::numeric_limits<double>::infinity();
  if (auto* disk = std::get_if<geom::Disk>(&d.shape)) {
    const cplx c = disk->center.to_std();
    const double R = disk->radius.to_double();
    const cplx w = (z - c) / R, q = (spec.pole - c) / R;
    const double num = std::max(0.0, (1 - std::norm(w)) * (1 - std::norm(q)));
    return 0.5 * std::log1p(num / std::norm(w - q));
  }
  const SectorFrame f = sector_frame(std::get<geom::Sector>(d.shape));
  const double lambda = f.opening / kPi;
  const cplx rot = std::polar(1.0 / f.radius, -f.start);
  const cplx w = (z - f.vertex) * rot, q = (spec.pole - f.vertex) * rot;
  if (std::abs(w) == 0 || std::abs(w) >= 1) return 0;
  return half_plane_green(half_plane(w, lambda), half_plane(q, lambda));
}

double fit_loglog_slope(const Trace& t) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.r.size(); ++i) {
    if (!(t.value[i] > 0)) continue;
    const double x = std::log(t.r[i]), y = std::log(t.value[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double m = static_cast<double>(n);
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::vector<double> geometric_radii(double hi, double lo, std::size_t n) {
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i)
    r[i] = n == 1 ? hi : hi * std::pow(lo / hi, static_cast<double>(i) / static_cast<double>(n - 1));
  return r;
}

NcsProbe ncs_limit_probe(const GreenSpec& spec, cplx corner, const std::vector<double>& radii, double fit_tol) {
  const geom::Domain& d = single(spec.domain);
  if (radii.size() < 2) throw Error(Errc::BadInput, "need at least two radii");
  const auto [lo, hi] = std::minmax_element(radii.begin(), radii.end());
  if (!(*lo > 0) || *hi / *lo < 0.999e3) throw Error(Errc::BadInput, "radii must be positive and span 3 decades");
  NcsProbe p;
  if (auto* disk = std::get_if<geom::Disk>(&d.shape)) {
    const cplx c = disk->center.to_std();
    const double R = disk->radius.to_double();
    if (std::abs(std::abs(corner - c) - R) > 1e-9 * R) throw Error(Errc::BadInput, "corner is not on the circle");
    p.direction = (c - corner) / std::abs(c - corner);
  } else {
    const SectorFrame f = sector_frame(std::get<geom::Sector>(d.shape));
    if (std::abs(corner - f.vertex) <= 1e-12 * f.radius) {
      p.direction = std::polar(1.0, f.start + f.opening / 2);
    } else if (std::abs(std::abs(corner - f.vertex) - f.radius) <= 1e-9 * f.radius) {
      p.direction = (f.vertex - corner) / std::abs(f.vertex - corner);
    } else {
      throw Error(Errc::BadInput, "corner must be the sector vertex or a point of its arc");
    }
  }
  for (double r : radii) {
    const cplx z = corner + r * p.direction;
    if (!(geom::distance_to_boundary(d, z) > 0) || z == spec.pole)
      throw Error(Errc::RadiiOutsideDomain, "probe point at r = " + std::to_string(r) + " is not interior");
    p.trace.r.push_back(r);
    p.trace.value.push_back(green_eval(spec, z));
  }
  p.exponent = fit_loglog_slope(p.trace);
  p.ncs = p.exponent < 1 - fit_tol;
  return p;
}

const char* to_string(DensityTrend t) {
  switch (t) {
    case DensityTrend::vanishing: return "vanishing";
    case DensityTrend::flat: return "flat";
    case DensityTrend::blowup: return "blowup";
  }
  return "?";
}

double boundary_length_within(const geom::Domain& d, cplx c, double r) {
  double total = 0;
  for (const auto& p : geom::boundary_pieces(d)) {
    if (p.kind == geom::Piece::Kind::segment) {
      // |a + t e - c|^2 <= r^2 for t in [0, 1]
      const cplx e = p.b - p.a, f = p.a - c;
      const double A = std::norm(e), B = 2 * (e.real() * f.real() + e.imag() * f.imag()), C = std::norm(f) - r * r;
      const double disc = B * B - 4 * A * C;
      if (disc <= 0) continue;
      const double s = std::sqrt(disc);
      const double t0 = std::max(0.0, (-B - s) / (2 * A)), t1 = std::min(1.0, (-B + s) / (2 * A));
      if (t1 > t0) total += (t1 - t0) * std::sqrt(A);
    } else {
      const double dist = std::abs(c - p.center);
      if (dist == 0) {
        if (p.radius <= r) total += p.length();
        continue;
      }
      const double kappa = (p.radius * p.radius + dist * dist - r * r) / (2 * p.radius * dist);
      if (kappa >= 1) continue;
      const double half = kappa <= -1 ? kPi : std::acos(kappa);
      const double psi = std::arg(c - p.center);
      double overlap = 0;
      for (int k = -2; k <= 2; ++k) {
        const double a = std::max(p.t0, psi + 2 * kPi * k - half), b = std::min(p.t1, psi + 2 * kPi * k + half);
        if (b > a) overlap += b - a;
      }
      total += std::min(overlap, p.t1 - p.t0) * p.radius;
    }
  }
  return total;
}

DensityProbe corner_density_probe(const MeasureCloud& cloud, const geom::Domain& d, cplx corner,
                                  const std::vector<double>& ring_radii, double threshold) {
  DensityProbe p;
  std::vector<double> radii(ring_radii);
  std::sort(radii.begin(), radii.end(), std::greater<>());
  for (double r : radii) {
    double mass = 0;
    for (std::size_t i = 0; i < cloud.size(); ++i)
      if (std::abs(cloud.points[i] - corner) <= r) mass += cloud.weight(i);
    const double len = boundary_length_within(d, corner, r);
    p.trace.r.push_back(r);
    p.trace.value.push_back(len > 0 ? mass / len : 0.0);
  }
  p.slope = fit_loglog_slope(p.trace);
  const bool empties = !p.trace.value.empty() && p.trace.value.front() > 0 && p.trace.value.back() == 0;
  if (empties || p.slope > threshold)
    p.trend = DensityTrend::vanishing;
  else if (p.slope < -threshold)
    p.trend = DensityTrend::blowup;
  return p;
}

std::string cloud_csv(const MeasureCloud& c) {
  std::string out = "re,im,weight\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    fmt(out, c.points[i].real());
    out += ',';
    fmt(out, c.points[i].imag());
    out += ',';
    fmt(out, c.weight(i));
    out += '\n';
  }
  return out;
}

std::string trace_csv(const Trace& t) {
  std::string out = "r,value\n";
  for (std::size_t i = 0; i < t.r.size(); ++i) {
    fmt(out, t.r[i]);
    out += ',';
    fmt(out, t.value[i]);
    out += '\n';
  }
  return out;
}

}  // namespace exz::pot
