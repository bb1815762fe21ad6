#include "exz/balayage/balayage.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "exz/balayage/philox.hpp"
#include "exz/error.hpp"
#include "exz/numerics/quadrature.hpp"
#include "exz/parallel.hpp"

namespace exz::bal {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

cplx walk(const geom::Boundary& d, cplx z, double shell, const WosConfig& cfg, SampleStream& rng) {
  for (std::uint32_t step = 0; step < cfg.max_steps; ++step) {
    const double r = d.distance(z);
    if (r < shell) return d.nearest(z);
    z += std::polar(r, kTwoPi * rng.next());
  }
  throw Error(Errc::MaxStepsExceeded, "walk did not reach the shell in " + std::to_string(cfg.max_steps) + " steps");
}

const geom::Disk* as_disk(const geom::Domain& d) { return std::get_if<geom::Disk>(&d.shape); }

}  // namespace

void WosConfig::validate() const {
  if (samples_per_atom == 0) throw Error(Errc::BadInput, "samples_per_atom must be positive");
  if (!(shell_epsilon > 0 && shell_epsilon < 1e-2)) throw Error(Errc::BadInput, "shell_epsilon must lie in (0, 1e-2)");
  if (max_steps == 0) throw Error(Errc::BadInput, "max_steps must be positive");
}

cplx poisson_exit_sample(cplx c, double R, cplx z, double u) {
  const cplx w = (z - c) / R;
  const cplx e = std::polar(1.0, kTwoPi * u);
  return c + R * (e + w) / (1.0 + std::conj(w) * e);
}

cplx wos_exit_sample(const geom::Domain& d, cplx start, const WosConfig& cfg, std::uint64_t atom,
                     std::uint32_t sample) {
  cfg.validate();
  if (!(geom::distance_to_boundary(d, start) > 0)) throw Error(Errc::OutsideDomain, "walk must start inside");
  SampleStream rng(cfg.seed, atom, sample);
  return walk(geom::Boundary(d), start, cfg.shell_epsilon * geom::diameter(d), cfg, rng);
}

MeasureCloud balayage_out(const MeasureCloud& cloud, const geom::Domain& d, const WosConfig& cfg) {
  cfg.validate();
  const double shell = cfg.shell_epsilon * geom::diameter(d);
  const geom::Disk* disk = cfg.exact_disk ? as_disk(d) : nullptr;
  const geom::Boundary bd(d);
  const cplx disk_c = disk ? disk->center.to_std() : cplx();
  const double disk_r = disk ? disk->radius.to_double() : 0.0;
  const std::size_t S = cfg.samples_per_atom;

  std::vector<char> interior(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const double dist = bd.distance(cloud.points[i]);
    if (dist < -shell && cloud.weights[i] != Mass(0))
      throw Error(Errc::AtomOutsideDomain, "atom " + std::to_string(i) + " lies outside the domain");
    interior[i] = dist >= shell;
  }

  // One chunk per (atom, block of samples); slots are filled in index order.
  constexpr std::size_t block = 1024;
  const std::size_t per_atom = chunk_count(S, block);
  std::vector<std::vector<cplx>> slots(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i)
    if (interior[i]) slots[i].resize(S);
  parallel_chunks(cloud.size() * per_atom, [&](std::size_t c) {
    const std::size_t i = c / per_atom;
    if (!interior[i]) return;
    for (std::size_t s = (c % per_atom) * block; s < std::min(S, (c % per_atom + 1) * block); ++s) {
      SampleStream rng(cfg.seed, i, static_cast<std::uint32_t>(s));
      slots[i][s] = disk ? poisson_exit_sample(disk_c, disk_r, cloud.points[i], rng.next())
                         : walk(bd, cloud.points[i], shell, cfg, rng);
    }
  });

  MeasureCloud out;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (!interior[i]) {
      out.add(cloud.points[i], cloud.weights[i]);
      continue;
    }
    const Mass w = cloud.weights[i] / Mass(static_cast<std::int64_t>(S));
    for (const auto& z : slots[i]) out.add(z, w);
  }
  return out;
}

ProofProbeConfig default_proof_probe(const geom::Domain& d) {
  auto* s = std::get_if<geom::Sector>(&d.shape);
  if (!s) throw Error(Errc::GeometryUnsupported, "proof probe needs a sector");
  const double R = s->radius.to_double();
  const double mid = (s->angle_start.to_double() + s->angle_end.to_double()) / 2;
  ProofProbeConfig cfg{d, s->vertex.to_std() + std::polar(R / 2, mid), R / 10, {}, {}};
  cfg.mu0 = MeasureCloud::uniform({cfg.k_center});
  cfg.radii = pot::geometric_radii(1e-3, 1e-6, 13);
  return cfg;
}

ProofProbe proof_probe_s(const ProofProbeConfig& cfg) {
  auto* s = std::get_if<geom::Sector>(&cfg.domain.shape);
  if (!s) throw Error(Errc::GeometryUnsupported, "proof probe needs a sector");
  const geom::Domain& G = cfg.domain;
  if (!(cfg.k_radius > 0) || !(geom::distance_to_boundary(G, cfg.k_center) > cfg.k_radius))
    throw Error(Errc::BadInput, "K must be a disk inside G");
  if (cfg.mu0.total_mass() > Mass(1)) throw Error(Errc::BadInput, "mu0 mass exceeds 1");
  for (auto z : cfg.mu0.points)
    if (std::abs(z - cfg.k_center) > cfg.k_radius) throw Error(Errc::BadInput, "mu0 must be supported in K");
  if (cfg.radii.size() < 2) throw Error(Errc::BadInput, "need at least two radii");

  const cplx v = s->vertex.to_std();
  const double R = s->radius.to_double();
  const double a0 = s->angle_start.to_double(), a1 = s->angle_end.to_double();
  if (!(a1 - a0 > std::numbers::pi)) throw Error(Errc::GeometryUnsupported, "proof probe needs an inward-corner vertex (opening > pi)");
  const double mid = (a0 + a1) / 2;
  // frame angle t corresponds to the physical direction t + (mid - pi/2)
  const double turn = mid - std::numbers::pi / 2;

  MeasureCloud mu = pot::leja_points(G, cfg.leja_count, pot::default_leja_mesh(G, cfg.leja_count));
  const double anchor = pot::log_potential(mu, v);

  std::vector<pot::GreenSpec> poles;
  for (auto z : cfg.mu0.points) poles.push_back(pot::make_green_spec(G, z));
  const geom::Boundary bd(G);
  auto S = [&](cplx z) {
    if (bd.distance(z) > 0) {
      double acc = 0;
      for (std::size_t j = 0; j < poles.size(); ++j) acc += cfg.mu0.weight(j) * pot::green_eval(poles[j], z);
      return acc;
    }
    if (bd.contains(z)) return 0.0;
    return pot::log_potential(mu, z) - anchor;
  };

  // Break points of the integrand in the frame: the two edge directions.
  auto frame = [&](double phys) {
    double t = std::remainder(phys - turn, 2 * std::numbers::pi);
    return t < 0 ? t + 2 * std::numbers::pi : t;
  };
  std::vector<double> cuts{frame(a0), frame(a1)};
  std::vector<double> nodes, weights;
  num::gauss_legendre_double(static_cast<int>(cfg.quad_points), nodes, weights);
  auto integral = [&](double r, double lo, double hi) {
    std::vector<double> pts{lo, hi};
    for (double c : cuts)
      if (c > lo && c < hi) pts.push_back(c);
    std::sort(pts.begin(), pts.end());
    double acc = 0;
    for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
      const double h = (pts[p + 1] - pts[p]) / 2, m = (pts[p + 1] + pts[p]) / 2;
      for (std::size_t q = 0; q < nodes.size(); ++q) {
        const double t = m + h * nodes[q];
        acc += h * weights[q] * S(v + std::polar(R * r, t + turn));
      }
    }
    return acc / r;
  };

  ProofProbe out;
  out.capacity = pot::capacity_leja(mu).value;
  std::vector<double> radii(cfg.radii);
  std::sort(radii.begin(), radii.end(), std::greater<>());
  out.r = radii;
  out.claim_a.resize(radii.size());
  out.claim_b.resize(radii.size());
  parallel_chunks(radii.size(), [&](std::size_t i) {
    out.claim_b[i] = integral(radii[i], 0, std::numbers::pi);
    out.claim_a[i] = integral(radii[i], std::numbers::pi, 2 * std::numbers::pi);
  });
  out.tau = *std::min_element(out.claim_a.begin(), out.claim_a.end());
  const double decades = std::log10(radii.front() / radii.back());
  out.growth_per_decade = out.claim_b.front() > 0 ? std::pow(out.claim_b.back() / out.claim_b.front(), 1 / decades) : 0;
  out.claim_b_monotone = true;
  for (std::size_t i = 1; i < radii.size(); ++i) out.claim_b_monotone &= out.claim_b[i] > out.claim_b[i - 1];
  out.claim_b_diverging = out.claim_b_monotone && out.growth_per_decade > 2;
  // Bounded below: the smallest radii do not undercut the largest-radius decade.
  double head = out.claim_a.front();
  for (std::size_t i = 0; i < radii.size() && radii[i] >= radii.front() / 10; ++i) head = std::min(head, out.claim_a[i]);
  out.claim_a_bounded = std::isfinite(out.tau) && out.tau >= head - 0.5 * (std::abs(head) + 1);
  out.s_corner = S(v);
  for (std::size_t q = 0; q < 64; ++q)
    out.s_ring_max = std::max(out.s_ring_max, std::abs(S(v + std::polar(R * radii.back(), 2 * std::numbers::pi * q / 64))));
  return out;
}

std::string proof_probe_csv(const ProofProbe& p) {
  std::string out = "r,claim_a_integral,claim_b_integral\n";
  char buf[96];
  for (std::size_t i = 0; i < p.r.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.r[i], p.claim_a[i], p.claim_b[i]);
    out += buf;
  }
  return out;
}

}  // namespace exz::bal
