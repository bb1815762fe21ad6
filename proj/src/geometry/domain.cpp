#include "exz/geometry/domain.hpp"

#include <algorithm>
#include <limits>
#include <nlohmann/json.hpp>

#include "exz/error.hpp"
#include "exz/geometry/boundary.hpp"

namespace exz::geom {

using nlohmann::json;

const char* to_string(Kind k) {
  switch (k) {
    case Kind::polygon: return "polygon";
    case Kind::disk: return "disk";
    case Kind::sector: return "sector";
    case Kind::union_: return "union";
  }
  return "?";
}

std::vector<const Domain*> Domain::components() const {
  std::vector<const Domain*> out;
  if (auto* u = std::get_if<Union>(&shape)) {
    for (const auto& p : u->parts) {
      auto sub = p.components();
      out.insert(out.end(), sub.begin(), sub.end());
    }
  } else {
    out.push_back(this);
  }
  return out;
}

Domain make_polygon(const std::vector<std::pair<double, double>>& xy) {
  Polygon p;
  for (auto [x, y] : xy) p.vertices.push_back({Scalar::from_double(x), Scalar::from_double(y)});
  return {p};
}

Domain make_disk(double cx, double cy, double r) {
  return {Disk{{Scalar::from_double(cx), Scalar::from_double(cy)}, Scalar::from_double(r)}};
}

Domain make_sector(double vx, double vy, double r, std::string_view start, std::string_view end) {
  return {Sector{{Scalar::from_double(vx), Scalar::from_double(vy)}, Scalar::from_double(r), Scalar::parse(start),
                 Scalar::parse(end)}};
}

Domain make_union(std::vector<Domain> parts) { return {Union{std::move(parts)}}; }

namespace {

int orient(const Complex& a, const Complex& b, const Complex& c) {
  Real det = (b.re - a.re) * (c.im - a.im) - (b.im - a.im) * (c.re - a.re);
  return det.sign();
}

bool on_segment(const Complex& a, const Complex& b, const Complex& p) {
  return min(a.re, b.re) <= p.re && p.re <= max(a.re, b.re) && min(a.im, b.im) <= p.im && p.im <= max(a.im, b.im);
}

// Closed segments [a,b] and [c,d] share a point.
bool segments_meet(const Complex& a, const Complex& b, const Complex& c, const Complex& d) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

Real signed_area2(const std::vector<Complex>& v) {
  Real s(0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex& p = v[i];
    const Complex& q = v[(i + 1) % v.size()];
    s += p.re * q.im - q.re * p.im;
  }
  return s;
}

Polygon validate_polygon(const Polygon& raw, std::vector<std::string>* warnings) {
  Polygon p;
  for (const auto& v : raw.vertices)
    if (p.vertices.empty() || !(p.vertices.back().value() == v.value())) p.vertices.push_back(v);
  while (p.vertices.size() > 1 && p.vertices.back().value() == p.vertices.front().value()) p.vertices.pop_back();
  if (p.vertices.size() != raw.vertices.size() && warnings)
    warnings->push_back("merged " + std::to_string(raw.vertices.size() - p.vertices.size()) + " repeated vertices");
  const std::size_t n = p.vertices.size();
  if (n < 3) throw Error(Errc::InvalidShape, "polygon needs at least 3 distinct vertices");
  std::vector<Complex> v;
  for (const auto& q : p.vertices) v.push_back(q.value());
  bool flat = true;
  for (std::size_t i = 2; i < n && flat; ++i) flat = orient(v[0], v[1], v[i]) == 0;
  if (flat) throw Error(Errc::InvalidShape, "polygon vertices are collinear");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (v[i] == v[j]) throw Error(Errc::SelfIntersecting, "polygon repeats vertex " + std::to_string(j));
  for (std::size_t i = 0; i < n; ++i) {
    const Complex &a = v[i], &b = v[(i + 1) % n], &c = v[(i + 2) % n];
    // Adjacent edges may only share their common vertex.
    if (orient(a, b, c) == 0) {
      Real dot = (b.re - a.re) * (c.re - b.re) + (b.im - a.im) * (c.im - b.im);
      if (dot.sign() < 0) throw Error(Errc::SelfIntersecting, "polygon folds back on itself at vertex " + std::to_string((i + 1) % n));
    }
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_meet(a, b, v[j], v[(j + 1) % n]))
        throw Error(Errc::SelfIntersecting, "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
    }
  }
  Real a2 = signed_area2(v);
  if (a2.is_zero()) throw Error(Errc::InvalidShape, "polygon has zero area");
  if (a2.sign() < 0) {
    std::reverse(p.vertices.begin(), p.vertices.end());
    // Keep the first vertex first.
    std::rotate(p.vertices.begin(), p.vertices.end() - 1, p.vertices.end());
    if (warnings) warnings->push_back("ClockwiseInput: polygon given clockwise; orientation flipped");
  }
  return p;
}

void flatten_union(const Domain& d, std::vector<Domain>& out, std::vector<std::string>* warnings) {
  if (auto* u = std::get_if<Union>(&d.shape)) {
    for (const auto& p : u->parts) flatten_union(p, out, warnings);
  } else {
    out.push_back(validate(d, warnings));
  }
}

// Positive distance between two validated simple parts, or 0 if their closures meet.
double part_distance(const Domain& a, const Domain& b) {
  auto pa = boundary_pieces(a), pb = boundary_pieces(b);
  if (contains(a, pb[0].a) || contains(b, pa[0].a)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  auto sweep = [&best](const std::vector<Piece>& from, const std::vector<Piece>& to) {
    for (const auto& p : from) {
      const int samples = p.kind == Piece::Kind::segment ? 2 : 4097;
      for (int k = 0; k < samples; ++k) {
        cplx z = p.at(p.length() * k / (samples - 1));
        for (const auto& q : to) best = std::min(best, q.distance(z));
      }
    }
  };
  sweep(pa, pb);
  sweep(pb, pa);
  // Segment pairs can be closest in their interiors: use exact segment-segment distance.
  for (const auto& p : pa)
    for (const auto& q : pb)
      if (p.kind == Piece::Kind::segment && q.kind == Piece::Kind::segment) {
        best = std::min({best, q.distance(p.a), q.distance(p.b), p.distance(q.a), p.distance(q.b)});
        // Crossing segments.
        auto cross = [](cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); };
        double d1 = cross(p.b - p.a, q.a - p.a), d2 = cross(p.b - p.a, q.b - p.a);
        double d3 = cross(q.b - q.a, p.a - q.a), d4 = cross(q.b - q.a, p.b - q.a);
        if (d1 * d2 < 0 && d3 * d4 < 0) best = 0;
      }
  return best;
}

double circle_gap(const Disk& a, const Disk& b) {
  return std::abs(a.center.to_std() - b.center.to_std()) - a.radius.to_double() - b.radius.to_double();
}

}  // namespace

Domain validate(const Domain& raw, std::vector<std::string>* warnings) {
  switch (raw.kind()) {
    case Kind::polygon: return {validate_polygon(std::get<Polygon>(raw.shape), warnings)};
    case Kind::disk: {
      const auto& d = std::get<Disk>(raw.shape);
      if (d.radius.value().sign() <= 0) throw Error(Errc::InvalidShape, "disk radius must be positive");
      return raw;
    }
    case Kind::sector: {
      const auto& s = std::get<Sector>(raw.shape);
      if (s.radius.value().sign() <= 0) throw Error(Errc::DegenerateSector, "sector radius must be positive");
      Real open = s.angle_end.value() - s.angle_start.value();
      if (open.sign() <= 0 || open >= Real(2) * pi())
        throw Error(Errc::DegenerateSector, "sector opening must lie in (0, 2pi)");
      return raw;
    }
    case Kind::union_: {
      std::vector<Domain> parts;
      flatten_union(raw, parts, warnings);
      if (parts.empty()) throw Error(Errc::InvalidShape, "union has no parts");
      if (parts.size() == 1) return parts[0];
      for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
          double gap;
          if (parts[i].kind() == Kind::disk && parts[j].kind() == Kind::disk)
            gap = circle_gap(std::get<Disk>(parts[i].shape), std::get<Disk>(parts[j].shape));
          else
            gap = part_distance(parts[i], parts[j]);
          double scale = std::max(diameter(parts[i]), diameter(parts[j]));
          if (gap <= 1e-12 * scale)
            throw Error(Errc::OverlappingUnionParts,
                        "union parts " + std::to_string(i) + " and " + std::to_string(j) + " have intersecting closures");
        }
      return make_union(std::move(parts));
    }
  }
  throw Error(Errc::BadInput, "unknown domain kind");
}

namespace {

Scalar scalar_from_json(const json& j, const char* what) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(static_cast<int>(j.get<long long>()));
  if (j.is_number()) return Scalar::from_double(j.get<double>());
  throw Error(Errc::BadInput, std::string("expected a number for ") + what);
}

Point point_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) throw Error(Errc::BadInput, std::string("expected [x, y] for ") + what);
  return {scalar_from_json(j[0], what), scalar_from_json(j[1], what)};
}

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(Errc::BadInput, std::string("missing field '") + key + "'");
  return *it;
}

json scalar_json(const Scalar& s) { return s.text(); }
json point_json(const Point& p) { return json::array({p.x.text(), p.y.text()}); }

}  // namespace

Domain parse_domain_json(const json& root) {
  if (!root.is_object()) throw Error(Errc::BadInput, "domain spec must be a JSON object");
  const json& j = root.contains("domain") ? root.at("domain") : root;
  if (!j.is_object()) throw Error(Errc::BadInput, "domain must be a JSON object");
  const json& kind = field(j, "kind");
  if (!kind.is_string()) throw Error(Errc::BadInput, "domain kind must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "polygon") {
    const json& vs = field(j, "vertices");
    if (!vs.is_array()) throw Error(Errc::BadInput, "vertices must be an array");
    Polygon p;
    for (const auto& v : vs) p.vertices.push_back(point_from_json(v, "vertex"));
    return {p};
  }
  if (k == "disk") return {Disk{point_from_json(field(j, "center"), "center"), scalar_from_json(field(j, "radius"), "radius")}};
  if (k == "sector")
    return {Sector{point_from_json(field(j, "vertex"), "vertex"), scalar_from_json(field(j, "radius"), "radius"),
                   scalar_from_json(field(j, "angle_start"), "angle_start"),
                   scalar_from_json(field(j, "angle_end"), "angle_end")}};
  if (k == "union") {
    const json& ps = field(j, "parts");
    if (!ps.is_array()) throw Error(Errc::BadInput, "parts must be an array");
    Union u;
    for (const auto& p : ps) u.parts.push_back(parse_domain_json(p));
    return {u};
  }
  throw Error(Errc::BadInput, "unknown domain kind '" + k + "'");
}

Domain parse_domain_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::BadInput, std::string("malformed JSON: ") + e.what());
  }
  return parse_domain_json(j);
}

json domain_to_json(const Domain& d) {
  json j;
  j["kind"] = to_string(d.kind());
  std::visit(
      [&j](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          j["vertices"] = json::array();
          for (const auto& v : s.vertices) j["vertices"].push_back(point_json(v));
        } else if constexpr (std::is_same_v<T, Disk>) {
          j["center"] = point_json(s.center);
          j["radius"] = scalar_json(s.radius);
        } else if constexpr (std::is_same_v<T, Sector>) {
          j["vertex"] = point_json(s.vertex);
          j["radius"] = scalar_json(s.radius);
          j["angle_start"] = scalar_json(s.angle_start);
          j["angle_end"] = scalar_json(s.angle_end);
        } else {
          j["parts"] = json::array();
          for (const auto& p : s.parts) j["parts"].push_back(domain_to_json(p));
        }
      },
      d.shape);
  return j;
}

Domain similarity(const Domain& d, const Complex& a, const Complex& b) {
  auto map_point = [&](const Point& p) {
    Complex z = a * p.value() + b;
    return Point{Scalar::from_real(z.re), Scalar::from_real(z.im)};
  };
  const Real s = abs(a);
  const Real rot = arg(a);
  return std::visit(
      [&](const auto& sh) -> Domain {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          Polygon p;
          for (const auto& v : sh.vertices) p.vertices.push_back(map_point(v));
          return {p};
        } else if constexpr (std::is_same_v<T, Disk>) {
          return {Disk{map_point(sh.center), Scalar::from_real(sh.radius.value() * s)}};
        } else if constexpr (std::is_same_v<T, Sector>) {
          return {Sector{map_point(sh.vertex), Scalar::from_real(sh.radius.value() * s),
                         Scalar::from_real(sh.angle_start.value() + rot), Scalar::from_real(sh.angle_end.value() + rot)}};
        } else {
          Union u;
          for (const auto& p : sh.parts) u.parts.push_back(similarity(p, a, b));
          return {u};
        }
      },
      d.shape);
}

Real area(const Domain& d) {
  return std::visit(
      [&](const auto& sh) -> Real {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          std::vector<Complex> v;
          for (const auto& q : sh.vertices) v.push_back(q.value());
          return abs(signed_area2(v)) / 2.0;
        } else if constexpr (std::is_same_v<T, Disk>) {
          Real r = sh.radius.value();
          return pi() * r * r;
        } else if constexpr (std::is_same_v<T, Sector>) {
          Real r = sh.radius.value();
          return r * r * (sh.angle_end.value() - sh.angle_start.value()) / 2.0;
        } else {
          Real s(0);
          for (const auto& p : sh.parts) s += area(p);
          return s;
        }
      },
      d.shape);
}

}  // namespace exz::geom
