#pragma once

#include <complex>
#include <string>
#include <string_view>

#include "exz/numerics/complex.hpp"

namespace exz::geom {

/// Exact coordinate as written in the input; evaluated at whatever precision is current.
///
/// Accepted forms: decimal or hex literals, fractions and multiples of pi, e.g.
/// "0.25", "-1/3", "3pi/4", "-0.75*pi", "0x1.8p+1".
class Scalar {
 public:
  Scalar() : text_("0") {}
  Scalar(int v) : text_(std::to_string(v)) {}

  /// Throws Error(BadInput) on malformed text.
  static Scalar parse(std::string_view text);
  /// Exact (hexfloat) representation of a double.
  static Scalar from_double(double v);
  /// Round-trip decimal representation of a Real at its own precision.
  static Scalar from_real(const Real& v);

  const std::string& text() const { return text_; }
  Real value() const;
  double to_double() const;

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.text_ == b.text_; }

 private:
  std::string text_;
};

struct Point {
  Scalar x, y;

  Complex value() const { return {x.value(), y.value()}; }
  std::complex<double> to_std() const { return {x.to_double(), y.to_double()}; }
  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
};

}  // namespace exz::geom
