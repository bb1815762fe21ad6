#pragma once

#include <boost/rational.hpp>
#include <complex>
#include <cstdint>
#include <vector>

namespace exz {

using Mass = boost::rational<std::int64_t>;

/// Finite weighted point set (counting measures, Leja surrogates, balayage samples).
/// Weights are exact rationals so that mass bookkeeping is exact.
struct MeasureCloud {
  std::vector<std::complex<double>> points;
  std::vector<Mass> weights;

  std::size_t size() const { return points.size(); }
  double weight(std::size_t i) const { return boost::rational_cast<double>(weights[i]); }

  Mass total_mass() const {
    Mass s(0);
    for (const auto& w : weights) s += w;
    return s;
  }

  void add(std::complex<double> z, Mass w) {
    points.push_back(z);
    weights.push_back(w);
  }

  /// Weight 1/n on each point.
  static MeasureCloud uniform(std::vector<std::complex<double>> pts) {
    MeasureCloud c;
    const auto n = static_cast<std::int64_t>(pts.size());
    c.points = std::move(pts);
    c.weights.assign(c.points.size(), Mass(1, n == 0 ? 1 : n));
    return c;
  }
};

}  // namespace exz
