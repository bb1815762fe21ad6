#pragma once

#include <mpfr.h>

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

namespace exz {

/// Precision in bits given to freshly constructed Real values on the calling thread.
long working_precision() noexcept;
void set_working_precision(long bits);

class ScopedPrecision {
 public:
  explicit ScopedPrecision(long bits) : saved_(working_precision()) { set_working_precision(bits); }
  ~ScopedPrecision() { set_working_precision(saved_); }
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  long saved_;
};

/// Arbitrary-precision real backed by an mpfr_t.
///
/// New values (and the results of arithmetic) are created at the thread's working
/// precision; copies keep the precision of their source.
class Real {
 public:
  Real() {
    mpfr_init2(v_, working_precision());
    mpfr_set_zero(v_, 1);
  }
  Real(double x) {
    mpfr_init2(v_, working_precision());
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  Real(int x) : Real(static_cast<long>(x)) {}
  Real(long x) {
    mpfr_init2(v_, working_precision());
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  Real(long long x) : Real(static_cast<long>(x)) {}
  Real(unsigned long x) {
    mpfr_init2(v_, working_precision());
    mpfr_set_ui(v_, x, MPFR_RNDN);
  }
  Real(unsigned x) : Real(static_cast<unsigned long>(x)) {}

  /// Parses a decimal or 0x-prefixed hexadecimal literal; throws Error(BadInput).
  static Real parse(std::string_view text);

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    v_[0] = o.v_[0];
    o.v_[0]._mpfr_d = nullptr;
  }
  Real& operator=(const Real& o) {
    if (this == &o) return *this;
    if (v_[0]._mpfr_d == nullptr)
      mpfr_init2(v_, mpfr_get_prec(o.v_));
    else if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_))
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    std::swap(v_[0], o.v_[0]);
    return *this;
  }
  ~Real() {
    if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
  }

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }
  long precision() const noexcept { return mpfr_get_prec(v_); }

  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
  explicit operator double() const noexcept { return to_double(); }

  /// Decimal scientific representation with `digits` significant digits
  /// (0 = enough digits to round-trip at this value's precision).
  std::string to_string(int digits = 0) const;

  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  int sign() const noexcept { return mpfr_sgn(v_); }

  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator+=(double o) { mpfr_add_d(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator-=(double o) { mpfr_sub_d(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator*=(double o) { mpfr_mul_d(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator/=(double o) { mpfr_div_d(v_, v_, o, MPFR_RNDN); return *this; }

 private:
  mpfr_t v_;
};

// Binary operators reuse rvalue storage where possible.
#define EXZ_REAL_BINOP(OP, FN, FN_D, FN_DR)                                                    \
  inline Real operator OP(const Real& a, const Real& b) {                                     \
    Real r;                                                                                   \
    FN(r.get(), a.get(), b.get(), MPFR_RNDN);                                                 \
    return r;                                                                                 \
  }                                                                                           \
  inline Real operator OP(Real&& a, const Real& b) {                                          \
    FN(a.get(), a.get(), b.get(), MPFR_RNDN);                                                 \
    return std::move(a);                                                                      \
  }                                                                                           \
  inline Real operator OP(const Real& a, Real&& b) {                                          \
    FN(b.get(), a.get(), b.get(), MPFR_RNDN);                                                 \
    return std::move(b);                                                                      \
  }                                                                                           \
  inline Real operator OP(Real&& a, Real&& b) {                                               \
    FN(a.get(), a.get(), b.get(), MPFR_RNDN);                                                 \
    return std::move(a);                                                                      \
  }                                                                                           \
  inline Real operator OP(const Real& a, double b) {                                          \
    Real r;                                                                                   \
    FN_D(r.get(), a.get(), b, MPFR_RNDN);                                                     \
    return r;                                                                                 \
  }                                                                                           \
  inline Real operator OP(Real&& a, double b) {                                               \
    FN_D(a.get(), a.get(), b, MPFR_RNDN);                                                     \
    return std::move(a);                                                                      \
  }                                                                                           \
  inline Real operator OP(double a, const Real& b) {                                          \
    Real r;                                                                                   \
    FN_DR(r.get(), a, b.get(), MPFR_RNDN);                                                    \
    return r;                                                                                 \
  }                                                                                           \
  inline Real operator OP(double a, Real&& b) {                                               \
    FN_DR(b.get(), a, b.get(), MPFR_RNDN);                                                    \
    return std::move(b);                                                                      \
  }

namespace detail {
inline int add_dr(mpfr_ptr r, double a, mpfr_srcptr b, mpfr_rnd_t rnd) { return mpfr_add_d(r, b, a, rnd); }
inline int mul_dr(mpfr_ptr r, double a, mpfr_srcptr b, mpfr_rnd_t rnd) { return mpfr_mul_d(r, b, a, rnd); }
}  // namespace detail

EXZ_REAL_BINOP(+, mpfr_add, mpfr_add_d, detail::add_dr)
EXZ_REAL_BINOP(-, mpfr_sub, mpfr_sub_d, mpfr_d_sub)
EXZ_REAL_BINOP(*, mpfr_mul, mpfr_mul_d, detail::mul_dr)
EXZ_REAL_BINOP(/, mpfr_div, mpfr_div_d, mpfr_d_div)
#undef EXZ_REAL_BINOP

inline Real operator-(const Real& a) {
  Real r;
  mpfr_neg(r.get(), a.get(), MPFR_RNDN);
  return r;
}
inline Real operator-(Real&& a) {
  mpfr_neg(a.get(), a.get(), MPFR_RNDN);
  return std::move(a);
}

inline bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
inline bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()) != 0; }
inline bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }
inline bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.get(), b.get()) != 0; }
inline bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }
inline bool operator!=(const Real& a, const Real& b) { return !(a == b); }
inline bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) < 0; }
inline bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) > 0; }
inline bool operator<=(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) <= 0; }
inline bool operator>=(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) >= 0; }
inline bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) == 0; }
inline bool operator!=(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) != 0; }

#define EXZ_REAL_FN1(NAME, FN)          \
  inline Real NAME(const Real& a) {     \
    Real r;                             \
    FN(r.get(), a.get(), MPFR_RNDN);    \
    return r;                           \
  }                                     \
  inline Real NAME(Real&& a) {          \
    FN(a.get(), a.get(), MPFR_RNDN);    \
    return std::move(a);                \
  }

EXZ_REAL_FN1(sqrt, mpfr_sqrt)
EXZ_REAL_FN1(abs, mpfr_abs)
EXZ_REAL_FN1(log, mpfr_log)
EXZ_REAL_FN1(log1p, mpfr_log1p)
EXZ_REAL_FN1(exp, mpfr_exp)
EXZ_REAL_FN1(expm1, mpfr_expm1)
EXZ_REAL_FN1(sin, mpfr_sin)
EXZ_REAL_FN1(cos, mpfr_cos)
EXZ_REAL_FN1(atan, mpfr_atan)
#undef EXZ_REAL_FN1

inline Real atan2(const Real& y, const Real& x) {
  Real r;
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}
inline Real hypot(const Real& x, const Real& y) {
  Real r;
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}
inline Real pow(const Real& x, const Real& y) {
  Real r;
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}
inline Real pow(const Real& x, long k) {
  Real r;
  mpfr_pow_si(r.get(), x.get(), k, MPFR_RNDN);
  return r;
}
inline Real ldexp(const Real& x, long e) {
  Real r;
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}
inline Real min(const Real& a, const Real& b) { return a < b ? a : b; }
inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }

/// Copy of x rounded to the working precision.
inline Real rounded(const Real& x) {
  Real r;
  mpfr_set(r.get(), x.get(), MPFR_RNDN);
  return r;
}

/// pi at the working precision.
Real pi();
/// 2^(-bits) at the working precision.
Real pow2(long exponent);

std::ostream& operator<<(std::ostream& os, const Real& x);

}  // namespace exz
