#pragma once

#include <complex>
#include <string>
#include <vector>

#include "exz/geometry/boundary.hpp"
#include "exz/geometry/corners.hpp"
#include "exz/measure.hpp"
#include "exz/orthopoly/sequence.hpp"

namespace exz::pot {

using geom::cplx;

/// Greedy Leja sequence on a point mesh: z_0 maximizes |z| (ties: smallest re, then im),
/// z_k maximizes sum_j log|z - z_j| (ties: lowest mesh index). Uniform weights 1/M.
MeasureCloud leja_on_mesh(const std::vector<cplx>& mesh, std::size_t M);

/// Leja points on the boundary of the domain from a uniform arclength mesh of mesh_count points
/// (midpoints of equal arclength steps).
/// Errors: MeshTooCoarse (mesh spacing >= diam / (4M)), BadInput (M < 2).
MeasureCloud leja_points(const geom::Domain& d, std::size_t M, std::size_t mesh_count);
/// Smallest uniform mesh accepted for M points, times a safety factor of 4.
std::size_t default_leja_mesh(const geom::Domain& d, std::size_t M);

enum class CapacityMethod { leja_product, exterior_map };
const char* to_string(CapacityMethod m);

struct CapacityEstimate {
  double value = 0;
  std::size_t point_count = 0;
  CapacityMethod method = CapacityMethod::leja_product;
};

/// Transfinite-diameter estimate from M >= 16 points, corrected by the factor M^{-1/(M-1)}
/// that the discrete energy of M equispaced points on a circle carries.
CapacityEstimate capacity_leja(const MeasureCloud& cloud);
/// 1 / gamma.
CapacityEstimate capacity_from_map(const ortho::ExteriorMapSeries& map);

/// sum w_i log(1/|z - t_i|). Errors: PotentialInfinite.
double log_potential(const MeasureCloud& cloud, cplx z);

/// Green function of a disk or sector with a pole inside.
struct GreenSpec {
  geom::Domain domain;
  cplx pole;
};

/// Errors: GeometryUnsupported (not a single disk or sector), OutsideDomain.
GreenSpec make_green_spec(const geom::Domain& d, cplx pole);
/// The pole used by the probes when none is given: the center of a disk, the bisector at R/2 of a sector.
cplx default_pole(const geom::Domain& d);

/// g(z, pole); 0 on the boundary, +inf at the pole. Errors: OutsideDomain.
double green_eval(const GreenSpec& spec, cplx z);

struct Trace {
  std::vector<double> r, value;
};

/// Least-squares slope of log(value) against log(r).
double fit_loglog_slope(const Trace& t);

struct NcsProbe {
  Trace trace;
  double exponent = 0;
  bool ncs = false;
  cplx direction;
};

/// g along the inward ray from a sector vertex (bisector), a disk boundary point (toward the center)
/// or a sector arc point (toward the vertex). Radii must span at least 3 decades.
/// Errors: RadiiOutsideDomain, BadInput.
NcsProbe ncs_limit_probe(const GreenSpec& spec, cplx corner, const std::vector<double>& radii,
                         double fit_tol = 0.1);

/// n radii from hi down to lo, geometrically spaced.
std::vector<double> geometric_radii(double hi, double lo, std::size_t n);

enum class DensityTrend { vanishing, flat, blowup };
const char* to_string(DensityTrend t);

struct DensityProbe {
  Trace trace;  // r, mass within r divided by boundary length within r
  double slope = 0;
  DensityTrend trend = DensityTrend::flat;
};

/// Boundary density of the cloud near the corner over shrinking discs.
/// slope > threshold or zero mass at the small end: vanishing; slope < -threshold: blowup.
DensityProbe corner_density_probe(const MeasureCloud& cloud, const geom::Domain& d, cplx corner,
                                  const std::vector<double>& ring_radii, double threshold = 0.15);
/// Length of the boundary inside the closed disc |z - c| <= r.
double boundary_length_within(const geom::Domain& d, cplx c, double r);

std::string cloud_csv(const MeasureCloud& c);
std::string trace_csv(const Trace& t);

}  // namespace exz::pot
