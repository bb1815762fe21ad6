#pragma once

#include "exz/orthopoly/sequence.hpp"

namespace exz::ortho::detail {

/// Knobs of the Arnoldi construction, exposed for tests and calibration runs.
struct ArnoldiTuning {
  long guard_bits = -1;      // extra internal bits; -1 picks a default from n_max
  bool check_residual = true;
};

OrthoSequence bergman_arnoldi(const geom::Domain& domain, int n_max, const num::PrecisionContext& ctx,
                              const ArnoldiTuning& tuning);

/// Monomial basis frame (center, scale) used for a domain.
std::pair<Complex, Real> basis_frame(const geom::Domain& domain);

}  // namespace exz::ortho::detail
