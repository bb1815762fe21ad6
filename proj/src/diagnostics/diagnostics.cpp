#include "exz/diagnostics/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "exz/error.hpp"
#include "exz/parallel.hpp"

namespace exz::diag {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

std::vector<std::complex<double>> moments(const MeasureCloud& c, const Frame& f, int K) {
  std::vector<std::complex<double>> m(K + 1, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const cplx u = (c.points[i] - f.center) / f.scale;
    cplx p = 1;
    for (int k = 0; k <= K; ++k, p *= u) m[k] += c.weight(i) * p;
  }
  return m;
}

double min_gap(const geom::Domain& d, int comp) {
  auto comps = d.components();
  const geom::Boundary own(*comps[comp]);
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < comps.size(); ++j) {
    if (static_cast<int>(j) == comp) continue;
    const geom::Boundary other(*comps[j]);
    for (const auto& p : own.pieces())
      for (int s = 0; s <= 256; ++s) gap = std::min(gap, std::abs(other.distance(p.at(p.length() * s / 256))));
  }
  return gap;
}

}  // namespace

void RegionFilter::validate(const geom::Domain& d) const {
  const auto comps = d.components();
  if (component < 0 || component >= static_cast<int>(comps.size()))
    throw Error(Errc::BadInput, "filter component out of range");
  if (!(margin > 0)) throw Error(Errc::BadInput, "filter margin must be positive");
  if (comps.size() > 1 && !(margin < min_gap(d, component) / 2))
    throw Error(Errc::BadInput, "filter margin must be below half the distance to the other parts");
}

bool RegionFilter::contains(const geom::Domain& d, cplx z) const {
  return geom::Boundary(*d.components()[component]).distance(z) > -margin;
}

Frame frame_of(const geom::Domain& d) {
  const double diam = geom::diameter(d);
  return {geom::centroid(d), diam / 2, diam};
}

std::vector<cplx> circle_points(cplx center, double radius, std::size_t count) {
  std::vector<cplx> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = center + std::polar(radius, kTwoPi * i / count);
  return out;
}

std::vector<cplx> exterior_grid(const geom::Domain& d, const GridSpec& g) {
  const Frame f = frame_of(d);
  auto pts = circle_points(f.center, g.circle_factor * f.diam, g.circle_points);
  for (std::size_t i = 0; i < g.annulus_radii; ++i) {
    const double t = g.annulus_radii == 1 ? 0 : static_cast<double>(i) / (g.annulus_radii - 1);
    const double r = f.diam * (g.annulus_inner + t * (g.annulus_outer - g.annulus_inner));
    for (std::size_t j = 0; j < g.annulus_angles; ++j)
      pts.push_back(f.center + std::polar(r, kTwoPi * (j + 0.5 * (i % 2)) / g.annulus_angles));
  }
  return pts;
}

double potential_sup(const MeasureCloud& a, const MeasureCloud& b, const std::vector<cplx>& pts) {
  std::vector<double> diff(pts.size());
  parallel_chunks(pts.size(), [&](std::size_t i) {
    diff[i] = std::abs(pot::log_potential(a, pts[i]) - pot::log_potential(b, pts[i]));
  });
  return diff.empty() ? 0.0 : *std::max_element(diff.begin(), diff.end());
}

std::vector<double> boundary_histogram(const MeasureCloud& c, const geom::Domain& d, const GridSpec& g) {
  const Frame f = frame_of(d);
  const geom::Boundary bd(d);
  std::vector<double> h(g.bins + 1, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const cplx z = c.points[i];
    const cplx p = bd.nearest(z);
    if (std::abs(z - p) > g.band * f.diam) {
      h[g.bins] += c.weight(i);
      continue;
    }
    double t = std::arg(p - f.center);
    if (t < 0) t += kTwoPi;
    h[std::min(g.bins - 1, static_cast<int>(t / kTwoPi * g.bins))] += c.weight(i);
  }
  return h;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return s / 2;
}

double hull_escape(const MeasureCloud& c, const geom::Domain& d, double tol) {
  const geom::Hull hull(d);
  const double lim = tol * geom::diameter(d);
  std::vector<double> w(c.size(), 0.0);
  parallel_chunks(chunk_count(c.size(), 256), [&](std::size_t k) {
    for (std::size_t i = k * 256; i < std::min(c.size(), (k + 1) * 256); ++i)
      if (hull.excess(c.points[i]) > lim) w[i] = c.weight(i);
  });
  double s = 0;
  for (double x : w) s += x;
  return s;
}

MeasureCloud restrict_to(const MeasureCloud& c, const geom::Domain& d, const RegionFilter& f, Mass* inside,
                         Mass* outside) {
  const geom::Boundary bd(*d.components()[f.component]);
  MeasureCloud out;
  Mass in(0), rest(0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (bd.distance(c.points[i]) > -f.margin) {
      out.add(c.points[i], c.weights[i]);
      in += c.weights[i];
    } else {
      rest += c.weights[i];
    }
  }
  if (in == Mass(0)) throw Error(Errc::EmptyRestriction, "filter captures no mass");
  for (auto& w : out.weights) w /= in;
  if (inside) *inside = in;
  if (outside) *outside = rest;
  return out;
}

ConvergenceReport compare_measures(const MeasureCloud& nu_in, const MeasureCloud& mu_in, const geom::Domain& d,
                                   const std::optional<RegionFilter>& filter, const GridSpec& grid,
                                   const Thresholds& th) {
  ConvergenceReport r;
  MeasureCloud nu = nu_in, mu = mu_in;
  if (filter) {
    filter->validate(d);
    nu = restrict_to(nu_in, d, *filter, &r.nu_restricted, &r.nu_complement);
    mu = restrict_to(mu_in, d, *filter, &r.mu_restricted, &r.mu_complement);
  } else {
    r.nu_restricted = nu.total_mass();
    r.mu_restricted = mu.total_mass();
  }
  const Frame f = frame_of(d);
  r.moments_nu = moments(nu, f, grid.moments);
  r.moments_mu = moments(mu, f, grid.moments);
  for (int k = 0; k <= grid.moments; ++k) r.moment_distances.push_back(std::abs(r.moments_nu[k] - r.moments_mu[k]));
  r.potential_sup_distance = potential_sup(nu, mu, exterior_grid(d, grid));
  r.histogram_tv = total_variation(boundary_histogram(nu, d, grid), boundary_histogram(mu, d, grid));
  r.hull_escape_fraction = hull_escape(nu, d, grid.hull_tol);
  r.verdict = r.histogram_tv <= th.tv && r.hull_escape_fraction <= th.hull_escape;
  return r;
}

std::vector<cplx> interior_grid(const geom::Domain& d, const RegionFilter& f, std::size_t per_side, double inset) {
  const geom::Domain& comp = *d.components()[f.component];
  const geom::Box box = geom::bounding_box(comp);
  const geom::Boundary bd(comp);
  const double lim = inset * geom::diameter(comp);
  std::vector<cplx> out;
  for (std::size_t i = 0; i < per_side; ++i)
    for (std::size_t j = 0; j < per_side; ++j) {
      const cplx z(box.xmin + (box.xmax - box.xmin) * (i + 0.5) / per_side,
                   box.ymin + (box.ymax - box.ymin) * (j + 0.5) / per_side);
      if (bd.distance(z) > lim) out.push_back(z);
    }
  return out;
}

GrowthProbe interior_growth_probe(const ortho::OrthoSequence& seq, const std::vector<int>& n_list,
                                  const std::vector<cplx>& points, double capacity) {
  GrowthProbe g;
  g.n = n_list;
  g.capacity = capacity;
  int top = 0;
  for (int n : n_list) {
    if (n < 1 || n > seq.n_max) throw Error(Errc::BadInput, "growth probe degree out of range");
    top = std::max(top, n);
  }
  std::vector<std::vector<double>> per_point(points.size());
  parallel_chunks(points.size(), [&](std::size_t i) {
    ScopedPrecision wp(256);
    auto vals = ortho::evaluate_all(seq, Complex(points[i]), top);
    for (int n : n_list) {
      Real v = abs(vals[n]) / seq.leading_coeffs[n];
      per_point[i].push_back(v.is_zero() ? 0.0 : std::exp(log(v).to_double() / n));
    }
  });
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    double m = 0;
    for (const auto& p : per_point) m = std::max(m, p[k]);
    g.max_root.push_back(m);
  }
  g.running_limsup.resize(g.max_root.size());
  double tail = 0;
  for (std::size_t k = g.max_root.size(); k-- > 0;) g.running_limsup[k] = tail = std::max(tail, g.max_root[k]);
  return g;
}

bool non_increasing(const std::vector<double>& v, int inversions) {
  int bad = 0;
  for (std::size_t i = 1; i < v.size(); ++i) bad += v[i] > v[i - 1];
  return bad <= inversions;
}

}  // namespace exz::diag
