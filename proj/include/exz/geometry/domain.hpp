#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <variant>
#include <vector>

#include "exz/geometry/scalar.hpp"

namespace exz::geom {

enum class Kind { polygon, disk, sector, union_ };
const char* to_string(Kind k);

struct Polygon {
  std::vector<Point> vertices;  // counterclockwise after validation
};

struct Disk {
  Point center;
  Scalar radius;
};

/// {vertex + r e^{it} : 0 <= r <= radius, angle_start <= t <= angle_end}.
struct Sector {
  Point vertex;
  Scalar radius;
  Scalar angle_start, angle_end;
};

struct Domain;

struct Union {
  std::vector<Domain> parts;
};

struct Domain {
  std::variant<Polygon, Disk, Sector, Union> shape;

  Kind kind() const { return static_cast<Kind>(shape.index()); }

  /// The simply connected pieces: the domain itself, or the (flattened) union parts.
  std::vector<const Domain*> components() const;
};

Domain make_polygon(const std::vector<std::pair<double, double>>& xy);
Domain make_disk(double cx, double cy, double r);
/// Angles as text so that multiples of pi stay exact, e.g. make_sector(0, 0, 1, "-3pi/4", "3pi/4").
Domain make_sector(double vx, double vy, double r, std::string_view start, std::string_view end);
Domain make_union(std::vector<Domain> parts);

/// Checks the invariants and normalizes: clockwise polygons are reversed (with a warning),
/// repeated consecutive vertices merged, nested unions flattened.
/// Errors: SelfIntersecting, OverlappingUnionParts, DegenerateSector, InvalidShape.
Domain validate(const Domain& raw, std::vector<std::string>* warnings = nullptr);

/// Parses {"domain": {...}} or a bare domain object. Errors: BadInput.
Domain parse_domain_json(const nlohmann::json& j);
Domain parse_domain_text(const std::string& text);
/// Serializes as {"kind": ..., ...} with scalars as strings.
nlohmann::json domain_to_json(const Domain& d);

/// Image of the domain under z -> a z + b (a != 0).
Domain similarity(const Domain& d, const Complex& a, const Complex& b);

/// Area at the working precision.
Real area(const Domain& d);

}  // namespace exz::geom
