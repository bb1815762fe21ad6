#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "exz/geometry/domain.hpp"
#include "exz/measure.hpp"
#include "exz/numerics/hessenberg.hpp"
#include "exz/numerics/precision.hpp"

namespace exz::ortho {

enum class SeqKind { bergman, faber };
const char* to_string(SeqKind k);

/// Polynomials P_0..P_{n_max} with z P_k = sum_{j <= k+1} h(j, k) P_j.
///
/// Bergman: P_k = B_k orthonormal over the domain. Faber: P_k = F_k, the polynomial part of Phi^k.
/// leading_coeffs[k] is the leading coefficient of P_k; the monic polynomial is P_k / leading_coeffs[k].
struct OrthoSequence {
  SeqKind kind = SeqKind::bergman;
  int n_max = 0;
  num::Matrix<Complex> hessenberg;  // (n_max + 1) x n_max
  std::vector<Real> leading_coeffs;
  std::optional<geom::Domain> domain;
  long precision_bits = 1024;
  Real eig_tol;

  /// Coefficients of P_k in powers of (z - center)/scale, when known.
  std::vector<std::vector<Complex>> coeffs;
  Complex center;
  Real scale = Real(1);

  /// max |<B_i, B_j> - delta_ij| from the independent check (Bergman only).
  Real ortho_residual;
};

/// Bergman polynomials by Arnoldi with classical Gram-Schmidt and one re-orthogonalization pass.
/// Errors: QuadratureTooCoarse, PrecisionExhausted.
OrthoSequence bergman_arnoldi(const geom::Domain& domain, int n_max, const num::PrecisionContext& ctx);

/// Phi(z) = gamma z + c[0] + c[1]/z + c[2]/z^2 + ...
struct ExteriorMapSeries {
  Real gamma;
  std::vector<Complex> coeffs;  // gamma_0 .. gamma_K
};

/// Phi for the disk |z - c| <= r.
ExteriorMapSeries disk_map(const Complex& c, const Real& r, int K);
/// Phi for the ellipse x^2/a^2 + y^2/b^2 <= 1 (a >= b >= 0); b = 0 gives the interval [-a, a].
ExteriorMapSeries ellipse_map(const Real& a, const Real& b, int K);

/// Faber polynomials F_0..F_{n_max}. Errors: InsufficientSeriesTail (K < n_max).
OrthoSequence faber_from_series(const ExteriorMapSeries& map, int n_max);

/// P_n(z) by the Hessenberg recurrence.
Complex evaluate(const OrthoSequence& seq, const Complex& z, int n);
/// P_0(z) .. P_n(z).
std::vector<Complex> evaluate_all(const OrthoSequence& seq, const Complex& z, int n);

struct SupNorm {
  Real value;      // max |P_n / lambda_n| on the boundary discretization
  Real nth_root;   // value^(1/n)
  std::size_t points = 0;
};

/// Max of the monic P_n over a boundary discretization with Chebyshev spacing per piece,
/// doubled near corners. Requires a domain reference and boundary_samples >= 64.
SupNorm sup_norm_estimate(const OrthoSequence& seq, int n, std::size_t boundary_samples);

/// Zeros of P_n at working precision: Hessenberg section eigenvalues (Bergman) or
/// companion eigenvalues of the monic F_n (Faber). Sorted by real part, then imaginary part.
std::vector<Complex> zeros_mp(const OrthoSequence& seq, int n);
/// Normalized counting measure of the zeros.
MeasureCloud zeros(const OrthoSequence& seq, int n);

nlohmann::json sequence_to_json(const OrthoSequence& seq);
OrthoSequence sequence_from_json(const nlohmann::json& j);

/// CSV rows "n,re,im" (with header) for the given zeros.
std::string zeros_csv(int n, const std::vector<Complex>& z);

}  // namespace exz::ortho
