#include "exz/numerics/hessenberg.hpp"

#include "exz/error.hpp"

namespace exz::num {

namespace {

Real cabs1(const Complex& z) { return abs(z.re) + abs(z.im); }

// Eigenvalues of [a b; c d].
std::pair<Complex, Complex> eig2(const Complex& a, const Complex& b, const Complex& c, const Complex& d) {
  Complex half_tr = (a + d) / Real(2);
  Complex half_diff = (a - d) / Real(2);
  Complex disc = sqrt(half_diff * half_diff + b * c);
  return {half_tr + disc, half_tr - disc};
}

}  // namespace

HessenbergMatrix HessenbergMatrix::leading(const Matrix<Complex>& m, std::size_t n) {
  if (n > m.rows() || n > m.cols()) throw Error(Errc::BadInput, "leading section larger than the matrix");
  HessenbergMatrix H(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = (j == 0 ? 0 : j - 1); k < n; ++k) H(j, k) = m(j, k);
  return H;
}

HessenbergMatrix HessenbergMatrix::companion(const std::vector<Complex>& c) {
  const std::size_t n = c.size();
  if (n == 0) throw Error(Errc::BadInput, "companion of a constant polynomial");
  HessenbergMatrix H(n);
  for (std::size_t k = 0; k + 1 < n; ++k) H(k + 1, k) = Complex(1);
  for (std::size_t j = 0; j < n; ++j) H(j, n - 1) = -c[j];
  return H;
}

Real max_abs_entry(const HessenbergMatrix& H) {
  Real m(0);
  const std::size_t n = H.order();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = (j == 0 ? 0 : j - 1); k < n; ++k) {
      Real v = cabs1(H(j, k));
      if (v > m) m = std::move(v);
    }
  return m;
}

std::vector<Complex> hessenberg_eigenvalues(const HessenbergMatrix& H, const Real& eig_tol) {
  const std::size_t n = H.order();
  if (n == 0) throw Error(Errc::BadInput, "hessenberg_eigenvalues: empty matrix");
  Matrix<Complex> A(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = (j == 0 ? 0 : j - 1); k < n; ++k) A(j, k) = H(j, k);

  const Real tiny = eig_tol * eig_tol * max(max_abs_entry(H), Real(1));
  std::vector<Complex> eig;
  eig.reserve(n);
  long hi = static_cast<long>(n) - 1;
  long its = 0;
  const long max_its = 50 * static_cast<long>(n);
  while (hi >= 0) {
    // Find the start of the active unreduced block.
    long lo = hi;
    while (lo > 0) {
      Real sub = cabs1(A(lo, lo - 1));
      if (sub <= tiny || sub <= eig_tol * (cabs1(A(lo, lo)) + cabs1(A(lo - 1, lo - 1)))) {
        A(lo, lo - 1) = Complex();
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig.push_back(A(hi, hi));
      --hi;
      its = 0;
      continue;
    }
    if (lo == hi - 1) {
      auto [e1, e2] = eig2(A(lo, lo), A(lo, hi), A(hi, lo), A(hi, hi));
      eig.push_back(std::move(e1));
      eig.push_back(std::move(e2));
      hi -= 2;
      its = 0;
      continue;
    }
    if (++its > max_its) throw Error(Errc::QrStagnation, "QR iteration made no progress in " + std::to_string(max_its) + " sweeps");

    Complex mu;
    if (its % 10 == 0) {
      // Exceptional shift to break cycles.
      mu = A(hi, hi) + Complex(Real(0.75) * cabs1(A(hi, hi - 1)));
    } else {
      auto [e1, e2] = eig2(A(hi - 1, hi - 1), A(hi - 1, hi), A(hi, hi - 1), A(hi, hi));
      mu = cabs1(e1 - A(hi, hi)) <= cabs1(e2 - A(hi, hi)) ? std::move(e1) : std::move(e2);
    }

    // Implicit single-shift sweep on rows/columns lo..hi.
    Complex x, y;
    for (long k = lo; k < hi; ++k) {
      if (k == lo) {
        x = A(lo, lo) - mu;
        y = A(lo + 1, lo);
      } else {
        x = A(k, k - 1);
        y = A(k + 1, k - 1);
      }
      // Rotation G = [c s; -conj(s) c] with real c annihilating y.
      Real ax = abs(x), ay = abs(y);
      if (ay.is_zero()) continue;
      Real r = hypot(ax, ay);
      Real c;
      Complex s;
      if (ax.is_zero()) {
        c = Real(0);
        s = Complex(1);
      } else {
        c = ax / r;
        s = (x / ax) * conj(y) / r;
      }
      Complex sc = conj(s);
      for (long j = (k == lo ? lo : k - 1); j <= hi; ++j) {
        Complex a = A(k, j), b = A(k + 1, j);
        A(k, j) = a * c + s * b;
        A(k + 1, j) = b * c - sc * a;
      }
      if (k > lo) A(k + 1, k - 1) = Complex();
      const long last = std::min(k + 2, hi);
      for (long i = lo; i <= last; ++i) {
        Complex a = A(i, k), b = A(i, k + 1);
        A(i, k) = a * c + sc * b;
        A(i, k + 1) = b * c - s * a;
      }
    }
  }
  return eig;
}

Complex hessenberg_determinant(const HessenbergMatrix& H) {
  const std::size_t n = H.order();
  Matrix<Complex> A(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = (j == 0 ? 0 : j - 1); k < n; ++k) A(j, k) = H(j, k);
  Complex det(1);
  for (std::size_t k = 0; k < n; ++k) {
    if (k + 1 < n && cabs1(A(k + 1, k)) > cabs1(A(k, k))) {
      for (std::size_t j = k; j < n; ++j) std::swap(A(k, j), A(k + 1, j));
      det = -det;
    }
    if (A(k, k).is_zero()) return Complex();
    det *= A(k, k);
    if (k + 1 < n) {
      Complex f = A(k + 1, k) / A(k, k);
      for (std::size_t j = k + 1; j < n; ++j) fms_acc(A(k + 1, j), f, A(k, j));
    }
  }
  return det;
}

}  // namespace exz::num
