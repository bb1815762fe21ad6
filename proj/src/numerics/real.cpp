#include "exz/numerics/real.hpp"

#include <cctype>
#include <memory>
#include <ostream>

#include "exz/error.hpp"

namespace exz {

namespace {
thread_local long tl_precision = 1024;
}

long working_precision() noexcept { return tl_precision; }

void set_working_precision(long bits) {
  if (bits < MPFR_PREC_MIN || bits > MPFR_PREC_MAX)
    throw Error(Errc::BadInput, "precision out of range: " + std::to_string(bits));
  tl_precision = bits;
}

Real Real::parse(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  const std::string s(text.substr(b, e - b));
  Real r;
  char* end = nullptr;
  if (!s.empty()) mpfr_strtofr(r.get(), s.c_str(), &end, 0, MPFR_RNDN);
  if (s.empty() || end == nullptr || *end != '\0' || mpfr_nan_p(r.get()))
    throw Error(Errc::BadInput, "not a number: '" + std::string(text) + "'");
  return r;
}

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(v_)) return "0";
  std::size_t n = digits > 0 ? static_cast<std::size_t>(digits) : mpfr_get_str_ndigits(10, mpfr_get_prec(v_));
  mpfr_exp_t exp10 = 0;
  std::unique_ptr<char, void (*)(char*)> raw(mpfr_get_str(nullptr, &exp10, 10, n, v_, MPFR_RNDN),
                                             [](char* p) { mpfr_free_str(p); });
  std::string mant(raw.get());
  std::string out;
  if (!mant.empty() && mant[0] == '-') {
    out.push_back('-');
    mant.erase(0, 1);
  }
  while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
  out.push_back(mant[0]);
  if (mant.size() > 1) {
    out.push_back('.');
    out.append(mant, 1, std::string::npos);
  }
  long e = static_cast<long>(exp10) - 1;
  if (e != 0) out += "e" + std::to_string(e);
  return out;
}

Real pi() {
  Real r;
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

Real pow2(long exponent) {
  Real r(1);
  mpfr_mul_2si(r.get(), r.get(), exponent, MPFR_RNDN);
  return r;
}

std::ostream& operator<<(std::ostream& os, const Real& x) {
  auto digits = os.precision();
  return os << x.to_string(static_cast<int>(digits > 0 ? digits : 6));
}

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::BadInput: return "BadInput";
    case Errc::SelfIntersecting: return "SelfIntersecting";
    case Errc::ClockwiseInput: return "ClockwiseInput";
    case Errc::OverlappingUnionParts: return "OverlappingUnionParts";
    case Errc::DegenerateSector: return "DegenerateSector";
    case Errc::InvalidShape: return "InvalidShape";
    case Errc::TriangulationFailed: return "TriangulationFailed";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::QrStagnation: return "QrStagnation";
    case Errc::QuadratureTooCoarse: return "QuadratureTooCoarse";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::InsufficientSeriesTail: return "InsufficientSeriesTail";
    case Errc::MeshTooCoarse: return "MeshTooCoarse";
    case Errc::PotentialInfinite: return "PotentialInfinite";
    case Errc::OutsideDomain: return "OutsideDomain";
    case Errc::RadiiOutsideDomain: return "RadiiOutsideDomain";
    case Errc::MaxStepsExceeded: return "MaxStepsExceeded";
    case Errc::AtomOutsideDomain: return "AtomOutsideDomain";
    case Errc::GeometryUnsupported: return "GeometryUnsupported";
    case Errc::EmptyRestriction: return "EmptyRestriction";
  }
  return "Unknown";
}

}  // namespace exz
