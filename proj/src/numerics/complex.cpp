#include "exz/numerics/complex.hpp"

namespace exz {

namespace {

// Scratch value at the caller's working precision.
mpfr_ptr scratch(int slot) {
  thread_local Real buf[2];
  Real& r = buf[slot];
  if (r.precision() != working_precision()) r = Real();
  return r.get();
}

}  // namespace

Complex& Complex::operator*=(const Complex& o) {
  mpfr_ptr t = scratch(0);
  mpfr_fmms(t, re.get(), o.re.get(), im.get(), o.im.get(), MPFR_RNDN);
  mpfr_fmma(im.get(), re.get(), o.im.get(), im.get(), o.re.get(), MPFR_RNDN);
  mpfr_set(re.get(), t, MPFR_RNDN);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  // Smith's algorithm keeps intermediate magnitudes bounded.
  if (abs(o.re) >= abs(o.im)) {
    Real ratio = o.im / o.re;
    Real den = o.re + o.im * ratio;
    Real nr = (re + im * ratio) / den;
    Real ni = (im - re * ratio) / den;
    re = std::move(nr);
    im = std::move(ni);
  } else {
    Real ratio = o.re / o.im;
    Real den = o.re * ratio + o.im;
    Real nr = (re * ratio + im) / den;
    Real ni = (im * ratio - re) / den;
    re = std::move(nr);
    im = std::move(ni);
  }
  return *this;
}

Complex cis(const Real& theta) {
  Complex z;
  mpfr_sin_cos(z.im.get(), z.re.get(), theta.get(), MPFR_RNDN);
  return z;
}

Complex sqrt(const Complex& z) {
  if (z.is_zero()) return Complex();
  Real r = abs(z);
  if (z.re.sign() >= 0) {
    Real t = sqrt((r + z.re) / 2.0);
    return {t, z.im / (2.0 * t)};
  }
  Real t = sqrt((r - z.re) / 2.0);
  Real re = abs(z.im) / (2.0 * t);
  return {re, z.im.sign() < 0 ? -t : t};
}

Complex exp(const Complex& z) { return exp(z.re) * cis(z.im); }

Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

Complex pow(const Complex& z, const Real& p) {
  if (z.is_zero()) return Complex();
  return polar(pow(abs(z), p), arg(z) * p);
}

Complex pow(const Complex& z, long k) {
  if (k < 0) return Complex(1) / pow(z, -k);
  Complex result(1), base = z;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

void fma_acc(Complex& acc, const Complex& a, const Complex& b) {
  mpfr_ptr t = scratch(0);
  mpfr_fmms(t, a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(acc.re.get(), acc.re.get(), t, MPFR_RNDN);
  mpfr_fmma(t, a.re.get(), b.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(acc.im.get(), acc.im.get(), t, MPFR_RNDN);
}

void fms_acc(Complex& acc, const Complex& a, const Complex& b) {
  mpfr_ptr t = scratch(0);
  mpfr_fmms(t, a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(acc.re.get(), acc.re.get(), t, MPFR_RNDN);
  mpfr_fmma(t, a.re.get(), b.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(acc.im.get(), acc.im.get(), t, MPFR_RNDN);
}

void fma_conj_acc(Complex& acc, const Complex& a, const Complex& b) {
  mpfr_ptr t = scratch(0);
  mpfr_fmma(t, a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(acc.re.get(), acc.re.get(), t, MPFR_RNDN);
  mpfr_fmms(t, a.im.get(), b.re.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(acc.im.get(), acc.im.get(), t, MPFR_RNDN);
}

void mul_into(Complex& out, const Complex& a, const Complex& b) {
  mpfr_ptr t = scratch(1);
  mpfr_fmms(t, a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmma(out.im.get(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_set(out.re.get(), t, MPFR_RNDN);
}

}  // namespace exz
