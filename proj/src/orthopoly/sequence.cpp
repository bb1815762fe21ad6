#include "exz/orthopoly/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "exz/error.hpp"
#include "exz/geometry/boundary.hpp"
#include "exz/geometry/corners.hpp"

namespace exz::ortho {

using nlohmann::json;
using num::Matrix;

ExteriorMapSeries disk_map(const Complex& c, const Real& r, int K) {
  if (r.sign() <= 0) throw Error(Errc::BadInput, "disk radius must be positive");
  ExteriorMapSeries m;
  m.gamma = 1.0 / r;
  m.coeffs.assign(K + 1, Complex());
  m.coeffs[0] = -c / r;
  return m;
}

ExteriorMapSeries ellipse_map(const Real& a, const Real& b, int K) {
  if (!(a >= b) || b.sign() < 0 || a.sign() <= 0) throw Error(Errc::BadInput, "ellipse needs a >= b >= 0, a > 0");
  // Phi(z) = (z + sqrt(z^2 - q)) / (2c), q = a^2 - b^2, c = (a + b)/2
  //        = (1/c) (z - sum_k Catalan_k (q/4)^{k+1} z^{-2k-1}).
  const Real c = (a + b) / 2.0;
  const Real q4 = (a * a - b * b) / 4.0;
  ExteriorMapSeries m;
  m.gamma = 1.0 / c;
  m.coeffs.assign(K + 1, Complex());
  Real catalan(1), qp = q4;
  for (int k = 0; 2 * k + 1 <= K; ++k) {
    m.coeffs[2 * k + 1] = Complex(-catalan * qp / c);
    catalan = catalan * Real(2 * (2 * k + 1)) / Real(k + 2);
    qp *= q4;
  }
  return m;
}

OrthoSequence faber_from_series(const ExteriorMapSeries& map, int n_max) {
  const int K = static_cast<int>(map.coeffs.size()) - 1;
  if (n_max < 0) throw Error(Errc::BadInput, "n_max must be nonnegative");
  if (K < n_max)
    throw Error(Errc::InsufficientSeriesTail,
                "series has K = " + std::to_string(K) + " < n_max = " + std::to_string(n_max));
  if (map.gamma.sign() <= 0) throw Error(Errc::BadInput, "gamma must be positive");
  const std::size_t dim = n_max + 1;
  // Phi(z) = z A(1/z), A(w) = gamma + gamma_0 w + gamma_1 w^2 + ...; F_n has coefficient [w^j] A^n at z^{n-j}.
  std::vector<Complex> A(dim);
  A[0] = Complex(map.gamma);
  for (std::size_t k = 1; k < dim; ++k) A[k] = map.coeffs[k - 1];
  OrthoSequence seq;
  seq.kind = SeqKind::faber;
  seq.n_max = n_max;
  seq.precision_bits = working_precision();
  seq.eig_tol = pow2(-working_precision() / 2);
  seq.center = Complex();
  seq.scale = Real(1);
  seq.coeffs.resize(dim);
  seq.leading_coeffs.resize(dim);
  std::vector<Complex> power(dim);
  power[0] = Complex(1);
  for (std::size_t n = 0; n < dim; ++n) {
    if (n > 0) {
      std::vector<Complex> next(dim);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; i + j < dim; ++j) fma_acc(next[i + j], power[i], A[j]);
      power = std::move(next);
    }
    seq.coeffs[n].resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) seq.coeffs[n][n - j] = power[j];
    seq.leading_coeffs[n] = power[0].re;
  }
  // Recurrence z F_k = F_{k+1}/gamma + sum_{j <= k} h(j, k) F_j, read off by peeling leading terms.
  seq.hessenberg = Matrix<Complex>(dim, n_max);
  for (int k = 0; k < n_max; ++k) {
    std::vector<Complex> r(k + 2);
    for (int i = 0; i <= k; ++i) r[i + 1] = seq.coeffs[k][i];
    const Real inv = 1.0 / map.gamma;
    for (int i = 0; i <= k + 1; ++i) fms_acc(r[i], Complex(inv), seq.coeffs[k + 1][i]);
    seq.hessenberg(k + 1, k) = Complex(inv);
    for (int j = k; j >= 0; --j) {
      Complex h = r[j] / seq.coeffs[j][j];
      for (int i = 0; i <= j; ++i) fms_acc(r[i], h, seq.coeffs[j][i]);
      seq.hessenberg(j, k) = std::move(h);
    }
  }
  return seq;
}

std::vector<Complex> evaluate_all(const OrthoSequence& seq, const Complex& z, int n) {
  if (n < 0 || n > seq.n_max) throw Error(Errc::BadInput, "degree out of range");
  std::vector<Complex> p(n + 1);
  p[0] = Complex(seq.leading_coeffs[0]);
  for (int k = 0; k < n; ++k) {
    Complex v = z * p[k];
    for (int j = 0; j <= k; ++j) fms_acc(v, seq.hessenberg(j, k), p[j]);
    p[k + 1] = v / seq.hessenberg(k + 1, k);
  }
  return p;
}

Complex evaluate(const OrthoSequence& seq, const Complex& z, int n) { return std::move(evaluate_all(seq, z, n)[n]); }

namespace {

// Boundary discretization: Chebyshev points per piece, doubled near corners.
std::vector<geom::cplx> sup_norm_points(const geom::Domain& d, std::size_t samples) {
  auto pieces = geom::boundary_pieces(d);
  const double total = geom::boundary_length(d);
  const double near = 0.1 * geom::diameter(d);
  std::vector<geom::cplx> corners;
  for (const auto& c : geom::corner_scan(d)) corners.push_back(c.location.to_std());
  auto is_corner = [&](geom::cplx z) {
    for (auto c : corners)
      if (std::abs(c - z) < 1e-12 * (1 + std::abs(c))) return true;
    return false;
  };
  std::vector<geom::cplx> out;
  for (const auto& p : pieces) {
    const double len = p.length();
    const std::size_t m = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(samples * len / total)));
    for (std::size_t i = 0; i < m; ++i) out.push_back(p.at(len * (1 - std::cos(M_PI * i / (m - 1))) / 2));
    // Same count again inside the corner neighborhoods at either end.
    const double span = std::min(near, len / 2);
    if (is_corner(p.a))
      for (std::size_t i = 1; i < m; ++i) out.push_back(p.at(span * (1 - std::cos(M_PI * i / (m - 1))) / 2));
    if (is_corner(p.b))
      for (std::size_t i = 1; i < m; ++i) out.push_back(p.at(len - span * (1 - std::cos(M_PI * i / (m - 1))) / 2));
  }
  return out;
}

}  // namespace

SupNorm sup_norm_estimate(const OrthoSequence& seq, int n, std::size_t boundary_samples) {
  if (!seq.domain) throw Error(Errc::BadInput, "sup_norm_estimate needs a domain");
  if (boundary_samples < 64) throw Error(Errc::BadInput, "boundary_samples must be >= 64");
  if (n < 0 || n > seq.n_max) throw Error(Errc::BadInput, "degree out of range");
  auto pts = sup_norm_points(*seq.domain, boundary_samples);
  SupNorm s;
  s.value = Real(0);
  for (auto z : pts) s.value = max(s.value, abs(evaluate(seq, Complex(z), n)));
  s.value /= seq.leading_coeffs[n];
  s.nth_root = n == 0 ? s.value : pow(s.value, Real(1) / Real(n));
  s.points = pts.size();
  return s;
}

std::vector<Complex> zeros_mp(const OrthoSequence& seq, int n) {
  if (n < 1 || n > seq.n_max) throw Error(Errc::BadInput, "zeros: need 1 <= n <= n_max");
  num::HessenbergMatrix H;
  if (seq.kind == SeqKind::bergman) {
    H = num::HessenbergMatrix::leading(seq.hessenberg, n);
  } else {
    std::vector<Complex> c(n);
    for (int i = 0; i < n; ++i) c[i] = seq.coeffs[n][i] / seq.leading_coeffs[n];
    H = num::HessenbergMatrix::companion(c);
  }
  auto z = num::hessenberg_eigenvalues(H, seq.eig_tol);
  std::sort(z.begin(), z.end(), [](const Complex& a, const Complex& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  });
  return z;
}

MeasureCloud zeros(const OrthoSequence& seq, int n) {
  std::vector<std::complex<double>> pts;
  for (const auto& z : zeros_mp(seq, n)) pts.push_back(z.to_std());
  return MeasureCloud::uniform(std::move(pts));
}

namespace {

json complex_json(const Complex& z) { return json::array({z.re.to_string(), z.im.to_string()}); }

Complex complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
    throw Error(Errc::BadInput, "expected [\"re\", \"im\"]");
  return {Real::parse(j[0].get<std::string>()), Real::parse(j[1].get<std::string>())};
}

}  // namespace

json sequence_to_json(const OrthoSequence& seq) {
  json j;
  j["kind"] = to_string(seq.kind);
  j["n_max"] = seq.n_max;
  j["precision_bits"] = seq.precision_bits;
  j["hessenberg"] = json::array();
  for (std::size_t r = 0; r < seq.hessenberg.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < seq.hessenberg.cols(); ++c) row.push_back(complex_json(seq.hessenberg(r, c)));
    j["hessenberg"].push_back(std::move(row));
  }
  j["leading_coeffs"] = json::array();
  for (const auto& l : seq.leading_coeffs) j["leading_coeffs"].push_back(l.to_string());
  if (seq.kind == SeqKind::bergman) j["ortho_residual"] = seq.ortho_residual.to_string(6);
  if (seq.domain) j["domain"] = geom::domain_to_json(*seq.domain);
  if (seq.kind == SeqKind::faber) {
    j["coeffs"] = json::array();
    for (const auto& c : seq.coeffs) {
      json row = json::array();
      for (const auto& x : c) row.push_back(complex_json(x));
      j["coeffs"].push_back(std::move(row));
    }
  }
  return j;
}

OrthoSequence sequence_from_json(const json& j) {
  try {
    OrthoSequence seq;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != "bergman" && kind != "faber") throw Error(Errc::BadInput, "unknown sequence kind '" + kind + "'");
    seq.kind = kind == "bergman" ? SeqKind::bergman : SeqKind::faber;
    seq.n_max = j.at("n_max").get<int>();
    seq.precision_bits = j.value("precision_bits", working_precision());
    ScopedPrecision guard(seq.precision_bits);
    const auto& h = j.at("hessenberg");
    const std::size_t rows = h.size();
    if (rows != static_cast<std::size_t>(seq.n_max) + 1) throw Error(Errc::BadInput, "hessenberg must have n_max + 1 rows");
    seq.hessenberg = Matrix<Complex>(rows, seq.n_max);
    for (std::size_t r = 0; r < rows; ++r) {
      if (h[r].size() != static_cast<std::size_t>(seq.n_max)) throw Error(Errc::BadInput, "ragged hessenberg row");
      for (int c = 0; c < seq.n_max; ++c) seq.hessenberg(r, c) = complex_from(h[r][c]);
    }
    for (const auto& l : j.at("leading_coeffs")) seq.leading_coeffs.push_back(Real::parse(l.get<std::string>()));
    if (seq.leading_coeffs.size() != rows) throw Error(Errc::BadInput, "leading_coeffs must have n_max + 1 entries");
    if (j.contains("domain")) seq.domain = geom::validate(geom::parse_domain_json(j["domain"]));
    if (j.contains("coeffs"))
      for (const auto& row : j["coeffs"]) {
        seq.coeffs.emplace_back();
        for (const auto& x : row) seq.coeffs.back().push_back(complex_from(x));
      }
    if (seq.kind == SeqKind::faber && seq.coeffs.size() != rows)
      throw Error(Errc::BadInput, "faber sequence needs coeffs for every degree");
    seq.eig_tol = pow2(-seq.precision_bits / 2);
    seq.ortho_residual = Real(0);
    return seq;
  } catch (const json::exception& e) {
    throw Error(Errc::BadInput, std::string("malformed sequence JSON: ") + e.what());
  }
}

std::string zeros_csv(int n, const std::vector<Complex>& z) {
  std::ostringstream os;
  os << "n,re,im\n";
  for (const auto& x : z) os << n << ',' << x.re.to_string() << ',' << x.im.to_string() << '\n';
  return os.str();
}

}  // namespace exz::ortho
