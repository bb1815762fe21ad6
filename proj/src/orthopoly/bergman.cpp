#include <algorithm>
#include <cmath>

#include "exz/error.hpp"
#include "exz/geometry/boundary.hpp"
#include "exz/geometry/corners.hpp"
#include "exz/numerics/quadrature.hpp"
#include "exz/orthopoly/detail.hpp"
#include "exz/parallel.hpp"

namespace exz::ortho {

namespace {

using num::Matrix;

Real cabs1(const Complex& z) { return abs(z.re) + abs(z.im); }

// g(b) = sum_{a < len} G(a, b) v(a), for b < len.
std::vector<Complex> gram_apply(const Matrix<Complex>& G, const std::vector<Complex>& v, std::size_t len) {
  std::vector<Complex> g(len);
  parallel_chunks(chunk_count(len, 8), [&](std::size_t c) {
    for (std::size_t b = c * 8; b < std::min(len, (c + 1) * 8); ++b) {
      Complex acc;
      for (std::size_t a = 0; a < len; ++a) fma_acc(acc, G(a, b), v[a]);
      g[b] = std::move(acc);
    }
  });
  return g;
}

// sum_b conj(q(b)) g(b) over the length of q.
Complex pair_with(const std::vector<Complex>& q, const std::vector<Complex>& g) {
  Complex acc;
  for (std::size_t b = 0; b < q.size(); ++b) fma_conj_acc(acc, g[b], q[b]);
  return acc;
}

}  // namespace

const char* to_string(SeqKind k) { return k == SeqKind::bergman ? "bergman" : "faber"; }

namespace detail {

std::pair<Complex, Real> basis_frame(const geom::Domain& domain) {
  auto comps = domain.components();
  if (comps.size() == 1) {
    if (auto* d = std::get_if<geom::Disk>(&comps[0]->shape)) return {d->center.value(), d->radius.value()};
    if (auto* s = std::get_if<geom::Sector>(&comps[0]->shape)) return {s->vertex.value(), s->radius.value()};
  }
  geom::Box box = geom::bounding_box(domain);
  const double cx = (box.xmin + box.xmax) / 2, cy = (box.ymin + box.ymax) / 2;
  double reach = 0;
  for (const auto& p : geom::boundary_pieces(domain)) {
    const int k = p.kind == geom::Piece::Kind::segment ? 1 : 256;
    for (int i = 0; i <= k; ++i) reach = std::max(reach, std::abs(p.at(p.length() * i / k) - geom::cplx(cx, cy)));
  }
  return {Complex(cx, cy), Real(reach)};
}

OrthoSequence bergman_arnoldi(const geom::Domain& domain, int n_max, const num::PrecisionContext& ctx,
                              const ArnoldiTuning& tuning) {
  ctx.validate();
  if (n_max < 0) throw Error(Errc::BadInput, "n_max must be nonnegative");
  const int quad = ctx.quad_degree_for(n_max);
  if (quad < 2 * n_max + 2)
    throw Error(Errc::QuadratureTooCoarse,
                "quad_degree " + std::to_string(quad) + " < 2 n_max + 2 = " + std::to_string(2 * n_max + 2));
  const long P = ctx.precision_bits;
  // Coefficients in the monomial basis grow geometrically with the degree, so inner products
  // lose bits; compute with extra internal bits, more if the residual check says so.
  const long guard = tuning.guard_bits >= 0 ? tuning.guard_bits : 32 + std::max(0L, 4L * n_max - P / 2);
  const std::size_t dim = n_max + 1;

  OrthoSequence seq;
  seq.kind = SeqKind::bergman;
  seq.n_max = n_max;
  seq.domain = domain;
  seq.precision_bits = P;

  std::vector<std::vector<Complex>> b(dim);
  Matrix<Complex> H;
  Complex center;
  Real scale;
  Real residual;
  {
    ScopedPrecision hp(P + guard);
    std::tie(center, scale) = basis_frame(domain);
    H = Matrix<Complex>(dim, std::max<std::size_t>(n_max, 1));
    auto cells = geom::triangulate(domain);
    Matrix<Complex> G = num::gram_moments(cells, quad, center, scale, n_max);
    const Real breakdown = pow2(-(P + guard) / 2);

    if (G(0, 0).re.sign() <= 0) throw Error(Errc::PrecisionExhausted, "nonpositive domain area in Gram matrix");
    b[0] = {Complex(1.0 / sqrt(G(0, 0).re))};
    for (int k = 0; k < n_max; ++k) {
      const std::size_t len = k + 2;
      // v = z B_k with z = center + scale u.
      std::vector<Complex> v(len);
      for (std::size_t a = 0; a <= static_cast<std::size_t>(k); ++a) {
        v[a] += b[k][a] * center;
        v[a + 1] += b[k][a] * scale;
      }
      auto g = gram_apply(G, v, len);
      const Real before = pair_with(v, g).re;
      for (int pass = 0; pass < 2; ++pass) {
        if (pass > 0) g = gram_apply(G, v, len);
        std::vector<Complex> h(k + 1);
        for (int j = 0; j <= k; ++j) h[j] = pair_with(b[j], g);
        for (int j = 0; j <= k; ++j) {
          for (std::size_t a = 0; a < b[j].size(); ++a) fms_acc(v[a], h[j], b[j][a]);
          H(j, k) += h[j];
        }
      }
      g = gram_apply(G, v, len);
      Real nrm2 = pair_with(v, g).re;
      if (nrm2.sign() <= 0 || nrm2 <= before * breakdown)
        throw Error(Errc::PrecisionExhausted, "Arnoldi breakdown at degree " + std::to_string(k + 1));
      Real nrm = sqrt(nrm2);
      H(k + 1, k) = Complex(nrm);
      for (auto& x : v) x /= nrm;
      b[k + 1] = std::move(v);
    }

    if (tuning.check_residual) {
      Matrix<Complex> G2 = num::gram_moments(cells, quad + 16, center, scale, n_max);
      residual = Real(0);
      for (std::size_t i = 0; i < dim; ++i) {
        auto g = gram_apply(G2, b[i], b[i].size());
        for (std::size_t j = 0; j <= i; ++j) {
          Complex ip = pair_with(b[j], g);
          if (i == j) ip -= Complex(1);
          residual = max(residual, abs(ip));
        }
      }
    }
  }

  // Round to the working precision and remove entries at noise level.
  ScopedPrecision wp(P);
  const Real tol = ctx.ortho_tol();
  seq.center = rounded(center);
  seq.scale = rounded(scale);
  seq.ortho_residual = rounded(residual);
  seq.eig_tol = ctx.eig_tol();
  if (tuning.check_residual && seq.ortho_residual > tol)
    throw Error(Errc::QuadratureTooCoarse, "orthonormality residual " + seq.ortho_residual.to_string(6) +
                                               " exceeds ortho_tol " + tol.to_string(6));
  seq.hessenberg = Matrix<Complex>(dim, n_max);
  Real hmax(0);
  for (std::size_t j = 0; j < dim; ++j)
    for (int k = 0; k < n_max; ++k) hmax = max(hmax, cabs1(H(j, k)));
  const Real chop = tol * hmax;
  for (std::size_t j = 0; j < dim; ++j)
    for (int k = 0; k < n_max; ++k) {
      Complex h = rounded(H(j, k));
      if (abs(h.re) <= chop) h.re = Real(0);
      if (abs(h.im) <= chop) h.im = Real(0);
      seq.hessenberg(j, k) = std::move(h);
    }
  seq.coeffs.resize(dim);
  seq.leading_coeffs.resize(dim);
  Real scale_pow(1);
  for (std::size_t k = 0; k < dim; ++k) {
    for (const auto& c : b[k]) seq.coeffs[k].push_back(rounded(c));
    seq.leading_coeffs[k] = rounded(b[k][k].re) / scale_pow;
    scale_pow *= seq.scale;
  }
  return seq;
}

}  // namespace detail

OrthoSequence bergman_arnoldi(const geom::Domain& domain, int n_max, const num::PrecisionContext& ctx) {
  detail::ArnoldiTuning tuning;
  for (int attempt = 0;; ++attempt) {
    try {
      return detail::bergman_arnoldi(domain, n_max, ctx, tuning);
    } catch (const Error& e) {
      if (attempt == 2 || (e.code() != Errc::QuadratureTooCoarse && e.code() != Errc::PrecisionExhausted)) throw;
      const long used = tuning.guard_bits >= 0 ? tuning.guard_bits : 32 + std::max(0L, 4L * n_max - ctx.precision_bits / 2);
      if (ctx.quad_degree_for(n_max) < 2 * n_max + 2) throw;
      tuning.guard_bits = 2 * used + 128;
    }
  }
}

}  // namespace exz::ortho
