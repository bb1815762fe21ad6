#pragma once

#include <optional>
#include <vector>

#include "exz/geometry/domain.hpp"
#include "exz/numerics/quadrature.hpp"

namespace exz::geom {

enum class CornerClass { convex, straight, inward_corner };
const char* to_string(CornerClass c);

/// Interior sector {z : 0 < |z - location| < r, alpha pi < arg(z - location) < beta pi}, beta - alpha > 1.
struct IcSector {
  Real alpha, beta, r;
};

struct CornerReport {
  Point location;
  int component = 0;
  Real interior_angle;
  CornerClass classification = CornerClass::convex;
  std::optional<IcSector> ic_sector;
};

/// One report per polygon vertex and per sector vertex / arc endpoint; disks give none.
std::vector<CornerReport> corner_scan(const Domain& d);

struct ComponentVerdict {
  int component = 0;
  bool has_ncs_point = false;
  std::optional<CornerReport> witness;
};

struct TheoremVerdict {
  std::vector<ComponentVerdict> components;
  bool full_sequence_convergence_predicted = false;
};

TheoremVerdict theorem_verdict(const Domain& d);

/// Partition into triangles (ear clipping) and polar cells of opening <= pi/2.
/// Errors: TriangulationFailed.
std::vector<num::Cell> triangulate(const Domain& d);

}  // namespace exz::geom
