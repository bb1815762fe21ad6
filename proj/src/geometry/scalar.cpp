#include "exz/geometry/scalar.hpp"

#include <cctype>
#include <cstdio>

#include "exz/error.hpp"

namespace exz::geom {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

struct Parts {
  bool negative = false;
  std::string num;  // empty means 1 (only with pi)
  bool has_pi = false;
  std::string den;  // empty means 1
};

Parts split(std::string_view raw) {
  std::string s = trim(raw);
  Parts p;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) p.negative = s[i++] == '-';
  std::string body = s.substr(i);
  std::size_t slash = body.find('/');
  std::string head = body.substr(0, slash);
  if (slash != std::string::npos) {
    p.den = trim(body.substr(slash + 1));
    if (p.den.empty()) throw Error(Errc::BadInput, "malformed number '" + s + "'");
  }
  std::size_t pi_pos = head.find("pi");
  if (pi_pos != std::string::npos) {
    if (trim(head.substr(pi_pos + 2)).size() != 0) throw Error(Errc::BadInput, "malformed number '" + s + "'");
    p.has_pi = true;
    head = trim(head.substr(0, pi_pos));
    if (!head.empty() && head.back() == '*') head = trim(head.substr(0, head.size() - 1));
  }
  p.num = trim(head);
  if (p.num.empty() && !p.has_pi) throw Error(Errc::BadInput, "malformed number '" + s + "'");
  if (!p.num.empty() && (p.num[0] == '+' || p.num[0] == '-'))
    throw Error(Errc::BadInput, "malformed number '" + s + "'");
  return p;
}

}  // namespace

Scalar Scalar::parse(std::string_view text) {
  Scalar s;
  s.text_ = trim(text);
  s.value();  // validates
  return s;
}

Scalar Scalar::from_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  Scalar s;
  s.text_ = buf;
  return s;
}

Scalar Scalar::from_real(const Real& v) {
  Scalar s;
  s.text_ = v.to_string();
  return s;
}

Real Scalar::value() const {
  Parts p = split(text_);
  Real v = p.num.empty() ? Real(1) : Real::parse(p.num);
  if (p.has_pi) v *= pi();
  if (!p.den.empty()) {
    Real d = Real::parse(p.den);
    if (d.is_zero()) throw Error(Errc::BadInput, "division by zero in '" + text_ + "'");
    v /= d;
  }
  return p.negative ? -v : v;
}

double Scalar::to_double() const {
  ScopedPrecision guard(128);
  return value().to_double();
}

}  // namespace exz::geom
