#include <doctest.h>

#include <nlohmann/json.hpp>

#include "exz/error.hpp"
#include "exz/geometry/boundary.hpp"
#include "exz/numerics/quadrature.hpp"
#include "exz/geometry/corners.hpp"
#include "exz/orthopoly/sequence.hpp"

using namespace exz;
using namespace exz::ortho;

namespace {

num::PrecisionContext ctx1024() { return num::PrecisionContext{}; }

geom::Domain unit_disk() { return geom::validate(geom::make_disk(0, 0, 1)); }

Real max_dist(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Real worst(0);
  for (const auto& z : a) {
    Real best(1e300);
    for (const auto& w : b) best = min(best, abs(z - w));
    worst = max(worst, best);
  }
  return worst;
}

// <p, q> over the domain with an independent flat rule.
Complex inner(const num::QuadratureRule& q, const std::vector<Complex>& pv, const std::vector<Complex>& qv) {
  Complex s;
  for (std::size_t i = 0; i < q.weights.size(); ++i) s += pv[i] * conj(qv[i]) * q.weights[i];
  return s;
}

}  // namespace

TEST_CASE("bergman: unit disk n_max=5") {
  OrthoSequence s = bergman_arnoldi(unit_disk(), 5, ctx1024());
  REQUIRE(s.hessenberg.rows() == 6);
  REQUIRE(s.hessenberg.cols() == 5);
  for (int j = 0; j <= 5; ++j)
    for (int k = 0; k < 5; ++k) {
      if (j == k + 1) {
        Real want = sqrt(Real(k + 1) / Real(k + 2));
        CHECK(abs(s.hessenberg(j, k) - Complex(want)).to_double() < 1e-290);
        CHECK(s.hessenberg(j, k).im.is_zero());
      } else {
        CHECK(s.hessenberg(j, k).is_zero());
      }
    }
  for (int n = 0; n <= 5; ++n) CHECK(abs(s.leading_coeffs[n] - sqrt(Real(n + 1) / pi())).to_double() < 1e-290);
  CHECK(s.ortho_residual <= s.eig_tol);
}

TEST_CASE("bergman: translated disk shifts the diagonal") {
  const Complex c(0.3, -1.25);
  OrthoSequence s = bergman_arnoldi(geom::validate(geom::make_disk(0.3, -1.25, 2)), 6, ctx1024());
  for (int k = 0; k < 6; ++k) {
    CHECK(abs(s.hessenberg(k, k) - c).to_double() < 1e-290);
    CHECK(abs(s.hessenberg(k + 1, k) - Complex(Real(2) * sqrt(Real(k + 1) / Real(k + 2)))).to_double() < 1e-290);
    for (int j = 0; j < k; ++j) CHECK(s.hessenberg(j, k).is_zero());
  }
}

TEST_CASE("bergman: pi/2 sector n_max=50 is orthonormal to ortho_tol") {
  auto d = geom::validate(geom::make_sector(0, 0, 1, "-pi/4", "pi/4"));
  auto ctx = ctx1024();
  OrthoSequence s = bergman_arnoldi(d, 50, ctx);
  CHECK(s.ortho_residual <= ctx.ortho_tol());
  for (int k = 0; k < 50; ++k) CHECK(s.hessenberg(k + 1, k).re > 0.0);
  for (const auto& l : s.leading_coeffs) CHECK(l > 0.0);
}

TEST_CASE("bergman: independent orthonormality and faithfulness on an L-shape") {
  auto d = geom::validate(geom::make_polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}));
  const int n = 12;
  auto ctx = ctx1024();
  OrthoSequence s = bergman_arnoldi(d, n, ctx);
  // Independent flat rule of a different degree evaluated through the recurrence.
  num::QuadratureRule q = num::domain_rule(geom::triangulate(d), 2 * n + 5);
  std::vector<std::vector<Complex>> vals(n + 1, std::vector<Complex>(q.nodes.size()));
  std::vector<Complex> zb(q.nodes.size());
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    auto p = evaluate_all(s, q.nodes[i], n);
    for (int k = 0; k <= n; ++k) vals[k][i] = p[k];
  }
  Real tol = ctx.ortho_tol();
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      Complex ip = inner(q, vals[i], vals[j]);
      if (i == j) ip -= Complex(1);
      CHECK(abs(ip) <= tol);
    }
  for (int k = 0; k < n; ++k) {
    std::vector<Complex> r(q.nodes.size());
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      r[i] = q.nodes[i] * vals[k][i];
      for (int j = 0; j <= k + 1; ++j) fms_acc(r[i], s.hessenberg(j, k), vals[j][i]);
    }
    CHECK(sqrt(inner(q, r, r).re) <= tol);
  }
}

TEST_CASE("bergman: recurrence matches coefficient evaluation") {
  auto d = geom::validate(geom::make_sector(0, 0, 1, "-3pi/4", "3pi/4"));
  OrthoSequence s = bergman_arnoldi(d, 20, ctx1024());
  for (auto z : {Complex(0.3, 0.2), Complex(-0.1, 0.5), Complex(0.7, -0.6)}) {
    auto rec = evaluate_all(s, z, 20);
    Complex u = (z - s.center) / s.scale;
    for (int k = 0; k <= 20; ++k) {
      Complex direct;
      for (int a = k; a >= 0; --a) direct = direct * u + s.coeffs[k][a];
      CHECK(abs(direct - rec[k]) <= s.eig_tol * max(Real(1), abs(direct)));
    }
  }
}

TEST_CASE("bergman: rejects a coarse quadrature degree") {
  auto ctx = ctx1024();
  ctx.quad_degree = 5;
  try {
    bergman_arnoldi(unit_disk(), 5, ctx);
    FAIL("expected QuadratureTooCoarse");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::QuadratureTooCoarse);
  }
}

TEST_CASE("evaluate: disk sequence") {
  OrthoSequence s = bergman_arnoldi(unit_disk(), 5, ctx1024());
  CHECK(evaluate(s, Complex(0), 3).is_zero());
  CHECK(abs(evaluate(s, Complex(0.4, 0.9), 0) - Complex(1.0 / sqrt(pi()))).to_double() < 1e-300);
  Complex z(0.5, 0.25);
  CHECK(abs(evaluate(s, z, 4) - pow(z, 4L) * sqrt(Real(5) / pi())).to_double() < 1e-290);
}

TEST_CASE("faber: disk gives z^n") {
  OrthoSequence f = faber_from_series(disk_map(Complex(0), Real(1), 6), 6);
  for (int n = 0; n <= 6; ++n)
    for (int a = 0; a <= n; ++a) CHECK(f.coeffs[n][a] == Complex(a == n ? 1 : 0));
  CHECK(evaluate(f, Complex(2), 4) == Complex(16));
}

TEST_CASE("faber: [-2,2] gives F_2 = z^2 - 2 with zeros +-sqrt 2") {
  ExteriorMapSeries m = ellipse_map(Real(2), Real(0), 8);
  CHECK(m.gamma == 1.0);
  CHECK(m.coeffs[1] == Complex(-1));
  CHECK(m.coeffs[3] == Complex(-1));
  CHECK(m.coeffs[5] == Complex(-2));
  CHECK(m.coeffs[7] == Complex(-5));
  OrthoSequence f = faber_from_series(m, 8);
  CHECK(f.coeffs[2][0] == Complex(-2));
  CHECK(f.coeffs[2][1] == Complex(0));
  CHECK(f.coeffs[2][2] == Complex(1));
  auto z = zeros_mp(f, 2);
  REQUIRE(z.size() == 2);
  CHECK(abs(z[0] + Complex(sqrt(Real(2)))) <= f.eig_tol);
  CHECK(abs(z[1] - Complex(sqrt(Real(2)))) <= f.eig_tol);
  // F_n = 2 T_n(z/2): F_3 = z^3 - 3z, F_4 = z^4 - 4z^2 + 2.
  CHECK(f.coeffs[3][1] == Complex(-3));
  CHECK(f.coeffs[4][2] == Complex(-4));
  CHECK(f.coeffs[4][0] == Complex(2));
  // Recurrence evaluation agrees with the coefficients.
  CHECK(abs(evaluate(f, Complex(0.7), 4) - Complex(Real(0.7 * 0.7 * 0.7 * 0.7) - Real(4 * 0.49) + Real(2))).to_double() < 1e-15);
}

TEST_CASE("faber: dilation rescales zeros") {
  const double s = 3.0;
  OrthoSequence a = faber_from_series(ellipse_map(Real(2), Real(1), 10), 10);
  OrthoSequence b = faber_from_series(ellipse_map(Real(2 * s), Real(1 * s), 10), 10);
  auto za = zeros_mp(a, 7), zb = zeros_mp(b, 7);
  std::vector<Complex> scaled;
  for (auto& z : za) scaled.push_back(z * Real(s));
  CHECK(max_dist(scaled, zb) <= Real(s) * a.eig_tol * Real(100));
}

TEST_CASE("faber: short series") {
  try {
    faber_from_series(disk_map(Complex(0), Real(1), 3), 5);
    FAIL("expected InsufficientSeriesTail");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InsufficientSeriesTail);
  }
}

TEST_CASE("zeros: disk counting measure is the point mass at 0") {
  OrthoSequence s = bergman_arnoldi(unit_disk(), 12, ctx1024());
  for (int n : {1, 5, 12}) {
    auto z = zeros_mp(s, n);
    CHECK(z.size() == std::size_t(n));
    for (const auto& x : z) CHECK(x.is_zero());
    MeasureCloud c = zeros(s, n);
    CHECK(c.total_mass() == Mass(1));
  }
}

TEST_CASE("zeros: translation and dilation equivariance") {
  auto base = geom::validate(geom::make_polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}));
  const Complex c(0.5, -0.25);
  const Real s(2);
  auto moved = geom::validate(geom::similarity(base, Complex(s), c));
  OrthoSequence a = bergman_arnoldi(base, 16, ctx1024()), b = bergman_arnoldi(moved, 16, ctx1024());
  auto za = zeros_mp(a, 16), zb = zeros_mp(b, 16);
  std::vector<Complex> mapped;
  for (auto& z : za) mapped.push_back(z * s + c);
  CHECK(max_dist(mapped, zb) <= a.eig_tol);
}

TEST_CASE("zeros: 3pi/2 sector n=100 stay in the convex hull") {
  auto d = geom::validate(geom::make_sector(0, 0, 1, "-3pi/4", "3pi/4"));
  OrthoSequence s = bergman_arnoldi(d, 100, ctx1024());
  MeasureCloud z = zeros(s, 100);
  for (auto p : z.points) CHECK(geom::hull_excess(d, p) <= 1e-12);
}

TEST_CASE("sup norm of z^n") {
  OrthoSequence f1 = faber_from_series(disk_map(Complex(0), Real(1), 10), 10);
  f1.domain = unit_disk();
  SupNorm a = sup_norm_estimate(f1, 10, 128);
  CHECK(abs(a.value - Real(1)).to_double() < 1e-12);
  CHECK(abs(a.nth_root - Real(1)).to_double() < 1e-12);
  OrthoSequence f2 = faber_from_series(disk_map(Complex(0), Real(2), 10), 10);
  f2.domain = geom::validate(geom::make_disk(0, 0, 2));
  SupNorm b = sup_norm_estimate(f2, 10, 128);
  CHECK(abs(b.value / Real(1024) - Real(1)).to_double() < 1e-12);
  CHECK(abs(b.nth_root - Real(2)).to_double() < 1e-12);
  CHECK_THROWS_AS(sup_norm_estimate(f2, 10, 10), Error);
}

TEST_CASE("sequence JSON round trip") {
  auto d = geom::validate(geom::make_sector(0, 0, 1, "-pi/4", "pi/4"));
  OrthoSequence s = bergman_arnoldi(d, 8, ctx1024());
  nlohmann::json j = sequence_to_json(s);
  CHECK(j["kind"] == "bergman");
  CHECK(j["hessenberg"].size() == 9);
  OrthoSequence t = sequence_from_json(j);
  auto za = zeros_mp(s, 8), zb = zeros_mp(t, 8);
  for (std::size_t i = 0; i < za.size(); ++i) CHECK(za[i] == zb[i]);
  CHECK(sequence_to_json(t)["hessenberg"] == j["hessenberg"]);
  OrthoSequence f = faber_from_series(ellipse_map(Real(2), Real(0), 4), 4);
  OrthoSequence g = sequence_from_json(sequence_to_json(f));
  CHECK(g.coeffs[2][0] == Complex(-2));
  std::string csv = zeros_csv(2, zeros_mp(g, 2));
  CHECK(csv.rfind("n,re,im\n2,-1.414", 0) == 0);
}
