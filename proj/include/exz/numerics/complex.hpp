#pragma once

#include <complex>

#include "exz/numerics/real.hpp"

namespace exz {

/// Complex number over Real. std::complex<T> is unspecified for non-builtin T.
struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(Real r) : re(std::move(r)), im() {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(double r) : re(r), im() {}
  Complex(int r) : re(r), im() {}
  Complex(double r, double i) : re(r), im(i) {}
  explicit Complex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  std::complex<double> to_std() const { return {re.to_double(), im.to_double()}; }

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Real& s) { re *= s; im *= s; return *this; }
  Complex& operator/=(const Real& s) { re /= s; im /= s; return *this; }
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator/(Complex a, const Complex& b) { return a /= b; }
inline Complex operator*(Complex a, const Real& s) { return a *= s; }
inline Complex operator*(const Real& s, Complex a) { return a *= s; }
inline Complex operator/(Complex a, const Real& s) { return a /= s; }
inline Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
inline bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

inline Complex conj(const Complex& a) { return {a.re, -a.im}; }
inline Real norm(const Complex& a) { return a.re * a.re + a.im * a.im; }
inline Real abs(const Complex& a) { return hypot(a.re, a.im); }
inline Real arg(const Complex& a) { return atan2(a.im, a.re); }
inline Complex polar(const Real& r, const Real& theta) { return {r * cos(theta), r * sin(theta)}; }

inline Complex rounded(const Complex& z) { return {rounded(z.re), rounded(z.im)}; }

/// e^{i theta}
Complex cis(const Real& theta);
Complex sqrt(const Complex& z);
Complex exp(const Complex& z);
/// Principal branch.
Complex log(const Complex& z);
/// Principal branch z^p = |z|^p e^{i p arg z}, arg in (-pi, pi].
Complex pow(const Complex& z, const Real& p);
Complex pow(const Complex& z, long k);

// In-place kernels for the hot loops; they avoid temporaries.
/// acc += a * b
void fma_acc(Complex& acc, const Complex& a, const Complex& b);
/// acc -= a * b
void fms_acc(Complex& acc, const Complex& a, const Complex& b);
/// acc += a * conj(b)
void fma_conj_acc(Complex& acc, const Complex& a, const Complex& b);
/// out = a * b
void mul_into(Complex& out, const Complex& a, const Complex& b);

}  // namespace exz
