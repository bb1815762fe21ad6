#pragma once

#include <vector>

#include "exz/numerics/complex.hpp"
#include "exz/numerics/matrix.hpp"

namespace exz::num {

/// Square upper Hessenberg matrix; entries below the subdiagonal are ignored.
struct HessenbergMatrix {
  Matrix<Complex> h;

  HessenbergMatrix() = default;
  explicit HessenbergMatrix(std::size_t n) : h(n, n) {}
  explicit HessenbergMatrix(Matrix<Complex> m) : h(std::move(m)) {}

  std::size_t order() const { return h.rows(); }
  Complex& operator()(std::size_t j, std::size_t k) { return h(j, k); }
  const Complex& operator()(std::size_t j, std::size_t k) const { return h(j, k); }

  /// Leading n x n section of a (possibly rectangular) Hessenberg array.
  static HessenbergMatrix leading(const Matrix<Complex>& m, std::size_t n);
  /// Companion matrix of the monic polynomial z^n + c[n-1] z^{n-1} + ... + c[0], in Hessenberg form.
  static HessenbergMatrix companion(const std::vector<Complex>& c);
};

/// All eigenvalues of H by single-shift complex QR with Wilkinson shifts.
/// Deflates when |h(k+1,k)| <= eig_tol (|h(k,k)| + |h(k+1,k+1)|).
/// Throws Error(QrStagnation) after 50 n sweeps without a deflation.
std::vector<Complex> hessenberg_eigenvalues(const HessenbergMatrix& H, const Real& eig_tol);

/// det(H) by LU with pivoting between adjacent rows.
Complex hessenberg_determinant(const HessenbergMatrix& H);

/// Max over entries of |re| + |im|.
Real max_abs_entry(const HessenbergMatrix& H);

}  // namespace exz::num
