#pragma once

#include <stdexcept>
#include <string>

namespace exz {

enum class Errc {
  BadInput,
  SelfIntersecting,
  ClockwiseInput,
  OverlappingUnionParts,
  DegenerateSector,
  InvalidShape,
  TriangulationFailed,
  NoConvergence,
  QrStagnation,
  QuadratureTooCoarse,
  PrecisionExhausted,
  InsufficientSeriesTail,
  MeshTooCoarse,
  PotentialInfinite,
  OutsideDomain,
  RadiiOutsideDomain,
  MaxStepsExceeded,
  AtomOutsideDomain,
  GeometryUnsupported,
  EmptyRestriction,
};

const char* to_string(Errc code) noexcept;

// Every failure in the library surfaces as an Error carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace exz
