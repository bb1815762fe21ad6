#pragma once

#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "exz/numerics/complex.hpp"
#include "exz/numerics/matrix.hpp"

namespace exz::num {

/// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

/// m-point Gauss-Legendre rule at the working precision (Newton on P_m).
/// Throws Error(NoConvergence) if Newton fails to settle.
GaussRule gauss_legendre_nodes(int m);

/// Cached variant keyed by (m, working precision).
std::shared_ptr<const GaussRule> gauss_legendre_cached(int m);

/// Double-precision rule for the statistics side of the code.
void gauss_legendre_double(int m, std::vector<double>& nodes, std::vector<double>& weights);

struct TriangleCell {
  Complex a, b, c;
};

/// Annular sector {center + r e^{i theta} : r0 <= r <= r1, theta0 <= theta <= theta1}.
struct PolarCell {
  Complex center;
  Real r0, r1, theta0, theta1;
};

using Cell = std::variant<TriangleCell, PolarCell>;

Real cell_area(const Cell& cell);

struct QuadratureRule {
  std::vector<Complex> nodes;
  std::vector<Real> weights;

  Real total_weight() const;
  /// Sum of w_i f(z_i), reduced by a fixed pairwise tree.
  template <class F>
  Complex integrate(F&& f) const;
};

/// Tensor-factored rule on one cell.
///
/// Triangle: z = anchor + s (e1 + t e2), s,t in [0,1], dA = jacobian * s ds dt.
/// Polar:    z = anchor + r e^{i theta}.
/// outer_* hold the s (or r) factor with the s (or r) Jacobian folded into the weights;
/// inner_* hold the t (or theta) factor. The flat rule is their tensor product.
struct CellRule {
  enum class Kind { triangle, polar };
  Kind kind = Kind::triangle;
  Complex anchor;
  Complex e1, e2;
  Real jacobian;
  std::vector<Real> outer_nodes, outer_weights;
  std::vector<Real> inner_nodes, inner_weights;

  std::size_t size() const { return outer_nodes.size() * inner_nodes.size(); }
  QuadratureRule flatten() const;
};

/// Rule on `cell` exact (to working precision) for polynomials in z, conj(z) of total degree <= degree.
CellRule cell_rule(const Cell& cell, int degree);

/// Flat rule for a union of cells.
QuadratureRule domain_rule(std::span<const Cell> cells, int degree);

/// Number of Gauss-Legendre points that integrate e^{i w x} on [-1, 1] to 2^-bits.
int oscillatory_points(double omega, long bits);

/// Gram matrix of the scaled monomials u^a, u = (z - center)/scale, a,b = 0..n:
///   G(a, b) = integral over the cells of u^a conj(u)^b dA,
/// evaluated with the tensor-factored cell rules of the given degree.
Matrix<Complex> gram_moments(std::span<const Cell> cells, int degree, const Complex& center, const Real& scale, int n);

template <class F>
Complex QuadratureRule::integrate(F&& f) const {
  std::vector<Complex> level(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) level[i] = f(nodes[i]) * weights[i];
  if (level.empty()) return Complex();
  while (level.size() > 1) {
    std::vector<Complex> next((level.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = std::move(level[2 * i]);
      if (2 * i + 1 < level.size()) next[i] += level[2 * i + 1];
    }
    level = std::move(next);
  }
  return std::move(level[0]);
}

}  // namespace exz::num
