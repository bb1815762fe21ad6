#include "exz/geometry/corners.hpp"

#include <cmath>
#include <limits>

#include "exz/error.hpp"
#include "exz/geometry/boundary.hpp"

namespace exz::geom {

const char* to_string(CornerClass c) {
  switch (c) {
    case CornerClass::convex: return "convex";
    case CornerClass::straight: return "straight";
    case CornerClass::inward_corner: return "inward_corner";
  }
  return "?";
}

namespace {

Real cross(const Complex& u, const Complex& v) { return u.re * v.im - u.im * v.re; }
Real dot(const Complex& u, const Complex& v) { return u.re * v.re + u.im * v.im; }

Point to_point(const Complex& z) { return {Scalar::from_real(z.re), Scalar::from_real(z.im)}; }

// Interior wedge (theta_out, theta_out + angle) at a reentrant corner, shrunk so its closure stays inside.
IcSector ic_from_wedge(const Real& theta_out, const Real& angle, const Real& r) {
  Real margin = (angle - pi()) / 4.0;
  return {(theta_out + margin) / pi(), (theta_out + angle - margin) / pi(), r};
}

void polygon_corners(const Polygon& p, int comp, std::vector<CornerReport>& out) {
  const std::size_t n = p.vertices.size();
  std::vector<Complex> v;
  for (const auto& q : p.vertices) v.push_back(q.value());
  for (std::size_t i = 0; i < n; ++i) {
    const Complex& prev = v[(i + n - 1) % n];
    const Complex& cur = v[i];
    const Complex& next = v[(i + 1) % n];
    Complex ein = cur - prev, eout = next - cur;
    Real c = cross(ein, eout);
    CornerReport r;
    r.location = p.vertices[i];
    r.component = comp;
    r.interior_angle = pi() - atan2(c, dot(ein, eout));
    if (c.is_zero()) {
      r.classification = CornerClass::straight;
      r.interior_angle = pi();
    } else if (c.sign() > 0) {
      r.classification = CornerClass::convex;
    } else {
      r.classification = CornerClass::inward_corner;
      // Radius: half the distance from the vertex to the non-incident edges.
      double reach = std::numeric_limits<double>::infinity();
      cplx z = cur.to_std();
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || (j + 1) % n == i) continue;
        Piece e;
        e.a = v[j].to_std();
        e.b = v[(j + 1) % n].to_std();
        reach = std::min(reach, e.distance(z));
      }
      r.ic_sector = ic_from_wedge(arg(eout), r.interior_angle, Real(reach / 2.0));
    }
    out.push_back(std::move(r));
  }
}

void sector_corners(const Sector& s, int comp, std::vector<CornerReport>& out) {
  Complex v = s.vertex.value();
  Real radius = s.radius.value(), a0 = s.angle_start.value(), a1 = s.angle_end.value();
  Real open = a1 - a0;
  CornerReport apex;
  apex.location = s.vertex;
  apex.component = comp;
  apex.interior_angle = open;
  if (open > pi()) {
    apex.classification = CornerClass::inward_corner;
    apex.ic_sector = ic_from_wedge(a0, open, radius / 2.0);
  } else if (open == pi()) {
    apex.classification = CornerClass::straight;
  } else {
    apex.classification = CornerClass::convex;
  }
  out.push_back(std::move(apex));
  for (const Real* a : {&a0, &a1}) {
    CornerReport r;
    r.location = to_point(v + polar(radius, *a));
    r.component = comp;
    r.interior_angle = pi() / 2.0;
    r.classification = CornerClass::convex;
    out.push_back(std::move(r));
  }
}

}  // namespace

std::vector<CornerReport> corner_scan(const Domain& d) {
  std::vector<CornerReport> out;
  auto comps = d.components();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const int c = static_cast<int>(i);
    if (auto* p = std::get_if<Polygon>(&comps[i]->shape))
      polygon_corners(*p, c, out);
    else if (auto* s = std::get_if<Sector>(&comps[i]->shape))
      sector_corners(*s, c, out);
  }
  return out;
}

TheoremVerdict theorem_verdict(const Domain& d) {
  TheoremVerdict v;
  auto corners = corner_scan(d);
  const int n = static_cast<int>(d.components().size());
  v.full_sequence_convergence_predicted = true;
  for (int c = 0; c < n; ++c) {
    ComponentVerdict cv;
    cv.component = c;
    for (const auto& r : corners)
      if (r.component == c && r.classification == CornerClass::inward_corner) {
        cv.has_ncs_point = true;
        cv.witness = r;
        break;
      }
    v.full_sequence_convergence_predicted = v.full_sequence_convergence_predicted && cv.has_ncs_point;
    v.components.push_back(std::move(cv));
  }
  return v;
}

namespace {

int orient(const Complex& a, const Complex& b, const Complex& c) { return cross(b - a, c - a).sign(); }

bool in_closed_triangle(const Complex& a, const Complex& b, const Complex& c, const Complex& p) {
  return orient(a, b, p) >= 0 && orient(b, c, p) >= 0 && orient(c, a, p) >= 0;
}

void ear_clip(const Polygon& poly, std::vector<num::Cell>& out) {
  std::vector<Complex> v;
  for (const auto& q : poly.vertices) v.push_back(q.value());
  std::vector<std::size_t> idx(v.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  while (idx.size() > 3) {
    const std::size_t m = idx.size();
    bool clipped = false;
    for (std::size_t k = 0; k < m && !clipped; ++k) {
      const Complex& a = v[idx[(k + m - 1) % m]];
      const Complex& b = v[idx[k]];
      const Complex& c = v[idx[(k + 1) % m]];
      const int o = orient(a, b, c);
      if (o == 0) {
        // Straight vertex: drop it, the zero-area triangle contributes nothing.
        idx.erase(idx.begin() + static_cast<long>(k));
        clipped = true;
        break;
      }
      if (o < 0) continue;
      bool empty = true;
      for (std::size_t j = 0; j < m && empty; ++j) {
        if (j == k || j == (k + 1) % m || j == (k + m - 1) % m) continue;
        const Complex& p = v[idx[j]];
        if (p == a || p == b || p == c) continue;
        if (in_closed_triangle(a, b, c, p)) empty = false;
      }
      if (!empty) continue;
      out.push_back(num::TriangleCell{a, b, c});
      idx.erase(idx.begin() + static_cast<long>(k));
      clipped = true;
    }
    if (!clipped) throw Error(Errc::TriangulationFailed, "no ear found; polygon is not simple");
  }
  if (orient(v[idx[0]], v[idx[1]], v[idx[2]]) != 0) out.push_back(num::TriangleCell{v[idx[0]], v[idx[1]], v[idx[2]]});
}

void polar_cells(const Complex& c, const Real& r, const Real& a0, const Real& a1, std::vector<num::Cell>& out) {
  Real open = a1 - a0;
  long pieces = static_cast<long>(std::ceil((open / (pi() / 2.0)).to_double() - 1e-12));
  if (pieces < 1) pieces = 1;
  for (long k = 0; k < pieces; ++k) {
    Real t0 = k == 0 ? a0 : a0 + open * Real(k) / Real(pieces);
    Real t1 = k + 1 == pieces ? a1 : a0 + open * Real(k + 1) / Real(pieces);
    out.push_back(num::PolarCell{c, Real(0), r, t0, t1});
  }
}

}  // namespace

std::vector<num::Cell> triangulate(const Domain& d) {
  std::vector<num::Cell> out;
  for (const auto* comp : d.components()) {
    if (auto* p = std::get_if<Polygon>(&comp->shape)) {
      ear_clip(*p, out);
    } else if (auto* c = std::get_if<Disk>(&comp->shape)) {
      polar_cells(c->center.value(), c->radius.value(), Real(0), Real(2) * pi(), out);
    } else if (auto* s = std::get_if<Sector>(&comp->shape)) {
      polar_cells(s->vertex.value(), s->radius.value(), s->angle_start.value(), s->angle_end.value(), out);
    }
  }
  return out;
}

}  // namespace exz::geom
