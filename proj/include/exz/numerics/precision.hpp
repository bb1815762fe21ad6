#pragma once

#include "exz/numerics/real.hpp"

namespace exz::num {

/// Working precision, quadrature degree and tolerances shared by the high-precision numerics.
struct PrecisionContext {
  long precision_bits = 1024;
  int quad_degree = 0;  // 0: derive as 2n + 8 for the requested degree n
  // Tolerances as base-2 exponents: tol = 2^(-bits). 0 selects the floor 2^(-precision_bits/2).
  long ortho_tol_bits = 0;
  long eig_tol_bits = 0;

  /// Throws Error(BadInput) when precision_bits < 128 or a tolerance is below 2^(-precision_bits/2).
  void validate() const;

  /// quad_degree if set, else 2n + 8.
  int quad_degree_for(int n) const { return quad_degree > 0 ? quad_degree : 2 * n + 8; }

  long effective_ortho_bits() const { return ortho_tol_bits > 0 ? ortho_tol_bits : precision_bits / 2; }
  long effective_eig_bits() const { return eig_tol_bits > 0 ? eig_tol_bits : precision_bits / 2; }

  /// Tolerances at the current working precision.
  Real ortho_tol() const { return pow2(-effective_ortho_bits()); }
  Real eig_tol() const { return pow2(-effective_eig_bits()); }

  static PrecisionContext with_bits(long bits) {
    PrecisionContext ctx;
    ctx.precision_bits = bits;
    return ctx;
  }
};

}  // namespace exz::num
