#include "exz/geometry/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace exz::geom {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Angle of w shifted into [t0, t0 + 2pi).
double angle_from(double t0, cplx w) {
  double t = std::arg(w);
  while (t < t0) t += kTwoPi;
  while (t >= t0 + kTwoPi) t -= kTwoPi;
  return t;
}

struct SectorD {
  cplx v;
  double r, a0, a1;
};

SectorD sector_d(const Sector& s) {
  ScopedPrecision guard(128);
  return {s.vertex.to_std(), s.radius.to_double(), s.angle_start.value().to_double(), s.angle_end.value().to_double()};
}

Piece segment(cplx a, cplx b, int comp) {
  Piece p;
  p.kind = Piece::Kind::segment;
  p.a = a;
  p.b = b;
  p.component = comp;
  return p;
}

Piece arc(cplx c, double r, double t0, double t1, int comp) {
  Piece p;
  p.kind = Piece::Kind::arc;
  p.center = c;
  p.radius = r;
  p.t0 = t0;
  p.t1 = t1;
  p.a = c + std::polar(r, t0);
  p.b = c + std::polar(r, t1);
  p.component = comp;
  return p;
}

void leaf_pieces(const Domain& d, int comp, std::vector<Piece>& out) {
  if (auto* p = std::get_if<Polygon>(&d.shape)) {
    const std::size_t n = p->vertices.size();
    for (std::size_t i = 0; i < n; ++i) out.push_back(segment(p->vertices[i].to_std(), p->vertices[(i + 1) % n].to_std(), comp));
  } else if (auto* c = std::get_if<Disk>(&d.shape)) {
    out.push_back(arc(c->center.to_std(), c->radius.to_double(), 0.0, kTwoPi, comp));
  } else if (auto* s = std::get_if<Sector>(&d.shape)) {
    SectorD q = sector_d(*s);
    out.push_back(segment(q.v, q.v + std::polar(q.r, q.a0), comp));
    out.push_back(arc(q.v, q.r, q.a0, q.a1, comp));
    out.push_back(segment(q.v + std::polar(q.r, q.a1), q.v, comp));
  }
}

double leaf_area(const Domain& d) {
  ScopedPrecision guard(128);
  return area(d).to_double();
}

cplx leaf_centroid(const Domain& d) {
  if (auto* p = std::get_if<Polygon>(&d.shape)) {
    const std::size_t n = p->vertices.size();
    double a = 0;
    cplx c;
    for (std::size_t i = 0; i < n; ++i) {
      cplx u = p->vertices[i].to_std(), v = p->vertices[(i + 1) % n].to_std();
      double cr = u.real() * v.imag() - v.real() * u.imag();
      a += cr;
      c += (u + v) * cr;
    }
    return c / (3.0 * a);
  }
  if (auto* c = std::get_if<Disk>(&d.shape)) return c->center.to_std();
  const auto& s = std::get<Sector>(d.shape);
  SectorD q = sector_d(s);
  double half = (q.a1 - q.a0) / 2.0;
  return q.v + std::polar(2.0 * q.r * std::sin(half) / (3.0 * half), (q.a0 + q.a1) / 2.0);
}

}  // namespace

double Piece::length() const { return kind == Kind::segment ? std::abs(b - a) : radius * (t1 - t0); }

cplx Piece::at(double s) const {
  if (kind == Kind::segment) {
    double len = length();
    return len == 0 ? a : a + (b - a) * (s / len);
  }
  return center + std::polar(radius, t0 + s / radius);
}

cplx Piece::nearest(cplx z) const {
  if (kind == Kind::segment) {
    cplx d = b - a;
    double len2 = std::norm(d);
    if (len2 == 0) return a;
    double t = std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return a + d * t;
  }
  cplx w = z - center;
  if (w == cplx(0, 0)) return a;
  double t = angle_from(t0, w);
  if (t <= t1) return center + std::polar(radius, t);
  return std::abs(z - a) <= std::abs(z - b) ? a : b;
}

std::vector<Piece> boundary_pieces(const Domain& d) {
  std::vector<Piece> out;
  auto comps = d.components();
  for (std::size_t i = 0; i < comps.size(); ++i) leaf_pieces(*comps[i], static_cast<int>(i), out);
  return out;
}

Boundary::Boundary(const Domain& d) : pieces_(boundary_pieces(d)) {
  for (const auto* c : d.components()) {
    Leaf l{c->kind(), {}, {}, 0, 0, 0};
    if (auto* p = std::get_if<Polygon>(&c->shape)) {
      for (const auto& v : p->vertices) l.vertices.push_back(v.to_std());
    } else if (auto* k = std::get_if<Disk>(&c->shape)) {
      l.center = k->center.to_std();
      l.radius = k->radius.to_double();
    } else if (auto* s = std::get_if<Sector>(&c->shape)) {
      SectorD q = sector_d(*s);
      l.center = q.v;
      l.radius = q.r;
      l.a0 = q.a0;
      l.a1 = q.a1;
    }
    leaves_.push_back(std::move(l));
  }
}

bool Boundary::leaf_contains(const Leaf& l, cplx z) const {
  switch (l.kind) {
    case Kind::polygon: {
      // Crossing number; boundary points count as inside.
      const std::size_t n = l.vertices.size();
      bool inside = false;
      for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        cplx a = l.vertices[i], b = l.vertices[j];
        if (segment(a, b, 0).distance(z) == 0.0) return true;
        if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
          double x = (b.real() - a.real()) * (z.imag() - a.imag()) / (b.imag() - a.imag()) + a.real();
          if (z.real() < x) inside = !inside;
        }
      }
      return inside;
    }
    case Kind::disk:
      return std::abs(z - l.center) <= l.radius;
    case Kind::sector: {
      cplx w = z - l.center;
      if (std::abs(w) > l.radius) return false;
      if (w == cplx(0, 0)) return true;
      return angle_from(l.a0, w) <= l.a1;
    }
    default:
      return false;
  }
}

int Boundary::component_of(cplx z) const {
  for (std::size_t i = 0; i < leaves_.size(); ++i)
    if (leaf_contains(leaves_[i], z)) return static_cast<int>(i);
  return -1;
}

double Boundary::distance(cplx z) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : pieces_) best = std::min(best, p.distance(z));
  return contains(z) ? best : -best;
}

cplx Boundary::nearest(cplx z) const {
  double best = std::numeric_limits<double>::infinity();
  cplx out;
  for (const auto& p : pieces_) {
    cplx q = p.nearest(z);
    double dist = std::abs(z - q);
    if (dist < best) {
      best = dist;
      out = q;
    }
  }
  return out;
}

int component_of(const Domain& d, cplx z) { return Boundary(d).component_of(z); }
bool contains(const Domain& d, cplx z) { return Boundary(d).contains(z); }
double distance_to_boundary(const Domain& d, cplx z) { return Boundary(d).distance(z); }
cplx nearest_boundary_point(const Domain& d, cplx z) { return Boundary(d).nearest(z); }

double diameter(const Domain& d) {
  std::vector<cplx> pts;
  for (const auto& p : boundary_pieces(d)) {
    if (p.kind == Piece::Kind::segment) {
      pts.push_back(p.a);
    } else {
      const int k = 1024;
      for (int i = 0; i <= k; ++i) pts.push_back(p.at(p.length() * i / k));
    }
  }
  double best = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, std::abs(pts[i] - pts[j]));
  return best;
}

double area_double(const Domain& d) {
  double s = 0;
  for (const auto* c : d.components()) s += leaf_area(*c);
  return s;
}

cplx centroid(const Domain& d) {
  double s = 0;
  cplx c;
  for (const auto* p : d.components()) {
    double a = leaf_area(*p);
    s += a;
    c += a * leaf_centroid(*p);
  }
  return c / s;
}

Box bounding_box(const Domain& d) {
  Box b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
        std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  auto add = [&b](cplx z) {
    b.xmin = std::min(b.xmin, z.real());
    b.xmax = std::max(b.xmax, z.real());
    b.ymin = std::min(b.ymin, z.imag());
    b.ymax = std::max(b.ymax, z.imag());
  };
  for (const auto& p : boundary_pieces(d)) {
    add(p.a);
    add(p.b);
    if (p.kind == Piece::Kind::arc)
      for (int k = -4; k <= 8; ++k) {
        double t = k * M_PI / 2;
        if (t >= p.t0 && t <= p.t1) add(p.center + std::polar(p.radius, t));
      }
  }
  return b;
}

namespace {

double support(const std::vector<Piece>& pieces, double phi) {
  cplx u = std::polar(1.0, phi);
  auto dot = [&u](cplx z) { return z.real() * u.real() + z.imag() * u.imag(); };
  double h = -std::numeric_limits<double>::infinity();
  for (const auto& p : pieces) {
    h = std::max({h, dot(p.a), dot(p.b)});
    if (p.kind == Piece::Kind::arc && angle_from(p.t0, u) <= p.t1) h = std::max(h, dot(p.center) + p.radius);
  }
  return h;
}

}  // namespace

Hull::Hull(const Domain& d) : pieces_(boundary_pieces(d)) {
  table_.reserve(kDirections);
  for (int i = 0; i < kDirections; ++i) {
    const double phi = kTwoPi * i / kDirections;
    table_.push_back({std::cos(phi), std::sin(phi), support(pieces_, phi)});
  }
}

double Hull::excess(cplx z) const {
  int best_i = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kDirections; ++i) {
    const auto& t = table_[i];
    const double v = z.real() * t[0] + z.imag() * t[1] - t[2];
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  auto f = [&](double phi) { return z.real() * std::cos(phi) + z.imag() * std::sin(phi) - support(pieces_, phi); };
  // Golden-section refinement on the bracketing cell; f is concave near its max when positive.
  double lo = kTwoPi * (best_i - 1) / kDirections, hi = kTwoPi * (best_i + 1) / kDirections;
  const double g = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    }
  }
  return std::max({best, f1, f2});
}

double hull_excess(const Domain& d, cplx z) { return Hull(d).excess(z); }

double boundary_length(const Domain& d) {
  double s = 0;
  for (const auto& p : boundary_pieces(d)) s += p.length();
  return s;
}

std::vector<cplx> boundary_mesh(const Domain& d, std::size_t count, double phase) {
  auto pieces = boundary_pieces(d);
  double total = 0;
  for (const auto& p : pieces) total += p.length();
  std::vector<cplx> out;
  out.reserve(count);
  std::size_t k = 0;
  double start = 0;
  for (std::size_t i = 0; i < count; ++i) {
    double s = total * (static_cast<double>(i) + phase) / static_cast<double>(count);
    while (k + 1 < pieces.size() && s >= start + pieces[k].length()) {
      start += pieces[k].length();
      ++k;
    }
    out.push_back(pieces[k].at(std::min(s - start, pieces[k].length())));
  }
  return out;
}

}  // namespace exz::geom
