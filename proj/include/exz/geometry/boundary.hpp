#pragma once

#include <array>
#include <complex>
#include <vector>

#include "exz/geometry/domain.hpp"

namespace exz::geom {

using cplx = std::complex<double>;

/// Straight segment or counterclockwise circular arc of a domain boundary (double precision).
struct Piece {
  enum class Kind { segment, arc };
  Kind kind = Kind::segment;
  cplx a, b;  // start and end points
  cplx center;
  double radius = 0, t0 = 0, t1 = 0;  // arc angles, t0 < t1
  int component = 0;

  double length() const;
  /// Point at arclength s from the start, s in [0, length()].
  cplx at(double s) const;
  cplx nearest(cplx z) const;
  double distance(cplx z) const { return std::abs(z - nearest(z)); }
};

/// Boundary pieces, counterclockwise within each component, components in order.
std::vector<Piece> boundary_pieces(const Domain& d);

/// Double-precision snapshot of a domain for repeated distance and membership queries.
class Boundary {
 public:
  explicit Boundary(const Domain& d);

  const std::vector<Piece>& pieces() const { return pieces_; }
  /// Signed distance: positive inside, negative outside, zero on the boundary.
  double distance(cplx z) const;
  cplx nearest(cplx z) const;
  int component_of(cplx z) const;
  bool contains(cplx z) const { return component_of(z) >= 0; }

 private:
  struct Leaf {
    Kind kind;
    std::vector<cplx> vertices;  // polygon
    cplx center;                 // disk center or sector vertex
    double radius = 0, a0 = 0, a1 = 0;
  };
  bool leaf_contains(const Leaf& l, cplx z) const;

  std::vector<Piece> pieces_;
  std::vector<Leaf> leaves_;
};

/// Signed distance: positive inside, negative outside, zero on the boundary.
double distance_to_boundary(const Domain& d, cplx z);
cplx nearest_boundary_point(const Domain& d, cplx z);
/// Index of the component containing z (closed set), or -1.
int component_of(const Domain& d, cplx z);
bool contains(const Domain& d, cplx z);

double diameter(const Domain& d);
cplx centroid(const Domain& d);
double area_double(const Domain& d);

struct Box {
  double xmin, xmax, ymin, ymax;
};
Box bounding_box(const Domain& d);

/// max over unit directions u of <z,u> - h(u), h the support function of the domain:
/// the distance from z to the convex hull when positive, nonpositive inside the hull.
double hull_excess(const Domain& d, cplx z);

/// hull_excess with the support function tabulated once.
class Hull {
 public:
  explicit Hull(const Domain& d);
  double excess(cplx z) const;

 private:
  static constexpr int kDirections = 2048;
  std::vector<Piece> pieces_;
  std::vector<std::array<double, 3>> table_;  // cos, sin, support
};

/// `count` points spaced uniformly in arclength along the whole boundary (all components),
/// point i at arclength (i + phase) * length / count.
std::vector<cplx> boundary_mesh(const Domain& d, std::size_t count, double phase = 0);
double boundary_length(const Domain& d);

}  // namespace exz::geom
