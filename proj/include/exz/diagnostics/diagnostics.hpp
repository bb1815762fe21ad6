#pragma once

#include <complex>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <vector>

#include "exz/balayage/balayage.hpp"
#include "exz/geometry/corners.hpp"
#include "exz/measure.hpp"
#include "exz/orthopoly/sequence.hpp"
#include "exz/potential/potential.hpp"

namespace exz::diag {

using geom::cplx;

/// Open neighborhood V of one component: points within `margin` of it.
struct RegionFilter {
  int component = 0;
  double margin = 0;

  /// Errors: BadInput (bad component, margin <= 0, or margin >= half the gap to another part).
  void validate(const geom::Domain& d) const;
  bool contains(const geom::Domain& d, cplx z) const;
};

struct GridSpec {
  int moments = 12;
  double circle_factor = 2.0;  // circle of radius factor * diam about the centroid
  std::size_t circle_points = 128;
  std::size_t annulus_radii = 16, annulus_angles = 16;
  double annulus_inner = 1.5, annulus_outer = 3.0;  // times diam
  int bins = 36;
  double band = 0.05;       // interior bin beyond band * diam from the boundary
  double hull_tol = 1e-6;   // times diam
};

struct Thresholds {
  double tv = 0.15;
  double hull_escape = 0.05;
};

/// Moment and histogram frame: center = centroid of the domain, scale = diam / 2.
struct Frame {
  cplx center;
  double scale = 1, diam = 1;
};
Frame frame_of(const geom::Domain& d);

struct ConvergenceReport {
  std::vector<double> moment_distances;  // k = 0..K, moments of (z - center) / scale
  std::vector<std::complex<double>> moments_nu, moments_mu;
  double potential_sup_distance = 0;
  double histogram_tv = 0;
  double hull_escape_fraction = 0;
  Mass nu_restricted{1}, nu_complement{0}, mu_restricted{1}, mu_complement{0};
  bool verdict = false;
};

/// Errors: EmptyRestriction.
ConvergenceReport compare_measures(const MeasureCloud& nu, const MeasureCloud& mu_hat, const geom::Domain& d,
                                   const std::optional<RegionFilter>& filter = std::nullopt,
                                   const GridSpec& grid = {}, const Thresholds& th = {});

/// Circle plus annular grid used for potential distances.
std::vector<cplx> exterior_grid(const geom::Domain& d, const GridSpec& grid);
std::vector<cplx> circle_points(cplx center, double radius, std::size_t count);
double potential_sup(const MeasureCloud& a, const MeasureCloud& b, const std::vector<cplx>& pts);
/// Mass within band of the boundary goes to one of `bins` angle bins, by the angle of its nearest
/// boundary point about the frame center; the rest goes to a final interior bin.
std::vector<double> boundary_histogram(const MeasureCloud& c, const geom::Domain& d, const GridSpec& grid);
double total_variation(const std::vector<double>& p, const std::vector<double>& q);
/// Mass of the cloud at least tol * diam outside the convex hull.
double hull_escape(const MeasureCloud& c, const geom::Domain& d, double tol);
MeasureCloud restrict_to(const MeasureCloud& c, const geom::Domain& d, const RegionFilter& f, Mass* inside,
                         Mass* outside);

struct GrowthProbe {
  std::vector<int> n;
  std::vector<double> max_root;        // max over points of |P_n / lambda_n|^{1/n}
  std::vector<double> running_limsup;  // max over the tail n' >= n
  double capacity = 0;
};

/// Interior grid points (per_side x per_side over the bounding box of the component) at distance
/// > inset * diam from the boundary.
std::vector<cplx> interior_grid(const geom::Domain& d, const RegionFilter& f, std::size_t per_side, double inset);
GrowthProbe interior_growth_probe(const ortho::OrthoSequence& seq, const std::vector<int>& n_list,
                                  const std::vector<cplx>& points, double capacity);

struct StudyConfig {
  std::size_t leja_count = 512;
  std::size_t leja_mesh = 0;  // 0: pot::default_leja_mesh
  bal::WosConfig wos;
  std::size_t wos_total_samples = 100000;  // split evenly over the zeros of each n
  GridSpec grid;
  Thresholds thresholds;
  double interior_distance = 0.05;  // zeros farther than this from the boundary count as interior
  std::size_t sup_samples = 512;
  double balayage_circle = 5.0;  // |z| = R check circle about the origin
  bool balayage = true;
  std::vector<double> ring_radii = {0.25, 0.2, 0.15, 0.1, 0.075, 0.05};  // times diam
};

struct PerN {
  int n = 0;
  ConvergenceReport report;
  double interior_fraction = 0;
  double sup_norm_root = 0;
  MeasureCloud zeros;
  // balayage check
  double balayage_grid_sup = 0, balayage_circle_sup = 0, eps_stat = 0;
  bool balayage_ok = false;
  Mass balayage_mass{0};
};

struct CornerDensity {
  geom::CornerReport corner;
  pot::DensityProbe probe;
};

struct StudyReport {
  geom::Domain domain;
  std::vector<int> n_list;
  geom::TheoremVerdict theorem;
  pot::CapacityEstimate capacity;
  MeasureCloud leja;
  double eps_leja = 0;
  std::vector<PerN> per_n;
  std::vector<CornerDensity> corners;
  bool tv_non_increasing = false;  // allowing one inversion
  bool convergence_observed = false;
  bool consistent = false;  // prediction implies observation
  double ortho_residual = 0;
};

/// Errors: BadInput (n_list not increasing), plus those of the modules it drives.
StudyReport sequence_study(const geom::Domain& d, const std::vector<int>& n_list, const num::PrecisionContext& ctx,
                           const StudyConfig& cfg);
/// {"domain", "verdict", "per_n", "balayage_check", "calibration", ...}.
nlohmann::json study_to_json(const StudyReport& r, const StudyConfig& cfg);

/// Non-increasing up to `inversions` strict increases.
bool non_increasing(const std::vector<double>& v, int inversions = 1);

}  // namespace exz::diag
