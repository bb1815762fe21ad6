#pragma once

#include <cstdint>
#include <vector>

#include "exz/geometry/boundary.hpp"
#include "exz/measure.hpp"
#include "exz/potential/potential.hpp"

namespace exz::bal {

using geom::cplx;

struct WosConfig {
  std::uint32_t samples_per_atom = 1000;
  double shell_epsilon = 1e-6;  // fraction of the domain diameter
  std::uint32_t max_steps = 10000;
  std::uint64_t seed = 0;
  bool exact_disk = false;  // use the Poisson sampler on disks

  /// Errors: BadInput.
  void validate() const;
};

/// Walk-on-spheres exit point from `start`; the stream is keyed by (seed, atom, sample).
/// Errors: OutsideDomain (start not interior), MaxStepsExceeded.
cplx wos_exit_sample(const geom::Domain& d, cplx start, const WosConfig& cfg, std::uint64_t atom = 0,
                     std::uint32_t sample = 0);

/// Exact harmonic measure sample for the disk |z - c| < R from z: the Moebius image of a uniform angle.
cplx poisson_exit_sample(cplx c, double R, cplx z, double u);

/// Interior atoms replaced by samples_per_atom exit samples of weight w / samples_per_atom, in atom order;
/// atoms within shell_epsilon * diam of the boundary pass through unchanged.
/// Errors: AtomOutsideDomain, MaxStepsExceeded.
MeasureCloud balayage_out(const MeasureCloud& cloud, const geom::Domain& d, const WosConfig& cfg);

struct ProofProbeConfig {
  geom::Domain domain;  // a sector of opening > pi
  cplx k_center;
  double k_radius = 0;
  MeasureCloud mu0;
  std::vector<double> radii;  // relative to the sector radius
  std::size_t leja_count = 512;
  std::size_t quad_points = 64;  // Gauss points per angular piece
};

/// Default K (disk of radius R/10 on the bisector at R/2), mu0 = delta at its center,
/// radii 1e-3 .. 1e-6 (13 points). Errors: GeometryUnsupported.
ProofProbeConfig default_proof_probe(const geom::Domain& sector);

struct ProofProbe {
  std::vector<double> r, claim_a, claim_b;
  double tau = 0;                 // min of claim_a over the grid
  double growth_per_decade = 0;   // (claim_b(r_min)/claim_b(r_max))^(1/decades)
  bool claim_b_monotone = false;
  bool claim_a_bounded = false;
  bool claim_b_diverging = false;
  double s_corner = 0;            // S at the corner
  double s_ring_max = 0;          // max |S| on the smallest circle
  double capacity = 0;
};

/// In the frame with the vertex at 0 and the bisector along +i:
/// claim_a(r) = int_pi^2pi S(r e^it)/r dt, claim_b(r) = int_0^pi S(r e^it)/r dt,
/// S = int g(z, zeta) dmu0 in G and U^{mu_E}(z) - U^{mu_E}(0) outside, with mu_E the Leja surrogate.
/// Errors: GeometryUnsupported, BadInput.
ProofProbe proof_probe_s(const ProofProbeConfig& cfg);

std::string proof_probe_csv(const ProofProbe& p);

}  // namespace exz::bal
