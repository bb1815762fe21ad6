#include "exz/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "exz/error.hpp"
#include "exz/parallel.hpp"

namespace exz::num {

namespace {

// Legendre P_m(x) and P_{m-1}(x) by the three-term recurrence.
template <class T>
void legendre_pair(int m, const T& x, T& pm, T& pm1) {
  T p0(1), p1 = x;
  if (m == 0) {
    pm = p0;
    pm1 = T(0);
    return;
  }
  for (int k = 2; k <= m; ++k) {
    T p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  pm = std::move(p1);
  pm1 = std::move(p0);
}

double double_root(int m, int i) {
  double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
  for (int it = 0; it < 100; ++it) {
    double pm, pm1;
    legendre_pair(m, x, pm, pm1);
    double dp = m * (x * pm - pm1) / (x * x - 1.0);
    double dx = pm / dp;
    x -= dx;
    if (std::abs(dx) < 1e-15) break;
  }
  return x;
}

}  // namespace

GaussRule gauss_legendre_nodes(int m) {
  if (m < 1) throw Error(Errc::BadInput, "gauss_legendre_nodes: m must be >= 1");
  const long bits = working_precision();
  const Real eps = pow2(-(bits - 8));
  GaussRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    Real x, pm, pm1, dp;
    if (2 * i + 1 == m) {
      x = Real(0);
      legendre_pair(m, x, pm, pm1);
      dp = m * (x * pm - pm1) / (x * x - 1.0);
    } else {
      x = Real(double_root(m, i));
      bool done = false;
      for (int it = 0; it < 60 && !done; ++it) {
        legendre_pair(m, x, pm, pm1);
        dp = m * (x * pm - pm1) / (x * x - 1.0);
        Real dx = pm / dp;
        x -= dx;
        done = abs(dx) <= eps;
      }
      if (!done) throw Error(Errc::NoConvergence, "Gauss-Legendre Newton iteration did not converge for m=" + std::to_string(m));
      legendre_pair(m, x, pm, pm1);
      dp = m * (x * pm - pm1) / (x * x - 1.0);
    }
    Real w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[m - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[m - 1 - i] = w;
    rule.weights[i] = std::move(w);
  }
  return rule;
}

std::shared_ptr<const GaussRule> gauss_legendre_cached(int m) {
  static std::mutex mu;
  static std::map<std::pair<int, long>, std::shared_ptr<const GaussRule>> cache;
  const auto key = std::make_pair(m, working_precision());
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const GaussRule>(gauss_legendre_nodes(m));
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(rule)).first->second;
}

void gauss_legendre_double(int m, std::vector<double>& nodes, std::vector<double>& weights) {
  ScopedPrecision guard(128);
  auto rule = gauss_legendre_cached(m);
  nodes.resize(m);
  weights.resize(m);
  for (int i = 0; i < m; ++i) {
    nodes[i] = rule->nodes[i].to_double();
    weights[i] = rule->weights[i].to_double();
  }
}

int oscillatory_points(double omega, long bits) {
  omega = std::abs(omega);
  if (omega == 0.0) return 1;
  // Gauss-Legendre error for f = e^{i omega x}:
  //   2^{2m+1} (m!)^4 / ((2m+1) ((2m)!)^3) * omega^{2m}, compared against 2^{-bits}/64.
  const double target = -(static_cast<double>(bits) + 6.0) * std::log(2.0);
  for (int m = 1; m < 100000; ++m) {
    double lg = (2.0 * m + 1.0) * std::log(2.0) + 4.0 * std::lgamma(m + 1.0) + 2.0 * m * std::log(omega) -
                std::log(2.0 * m + 1.0) - 3.0 * std::lgamma(2.0 * m + 1.0);
    if (lg < target) return m;
  }
  throw Error(Errc::BadInput, "oscillatory_points: frequency too large");
}

Real cell_area(const Cell& cell) {
  if (auto* t = std::get_if<TriangleCell>(&cell)) {
    Complex e1 = t->b - t->a, e2 = t->c - t->a;
    return abs(e1.re * e2.im - e1.im * e2.re) / 2.0;
  }
  const auto& p = std::get<PolarCell>(cell);
  return (p.r1 * p.r1 - p.r0 * p.r0) * (p.theta1 - p.theta0) / 2.0;
}

Real QuadratureRule::total_weight() const {
  return integrate([](const Complex&) { return Complex(1); }).re;
}

QuadratureRule CellRule::flatten() const {
  QuadratureRule q;
  q.nodes.reserve(size());
  q.weights.reserve(size());
  for (std::size_t i = 0; i < outer_nodes.size(); ++i) {
    for (std::size_t j = 0; j < inner_nodes.size(); ++j) {
      if (kind == Kind::triangle) {
        q.nodes.push_back(anchor + (e1 + e2 * inner_nodes[j]) * outer_nodes[i]);
        q.weights.push_back(jacobian * outer_weights[i] * inner_weights[j]);
      } else {
        q.nodes.push_back(anchor + polar(outer_nodes[i], inner_nodes[j]));
        q.weights.push_back(outer_weights[i] * inner_weights[j]);
      }
    }
  }
  return q;
}

namespace {

// Gauss-Legendre rule mapped to [lo, hi].
void mapped_rule(int m, const Real& lo, const Real& hi, std::vector<Real>& nodes, std::vector<Real>& weights) {
  auto g = gauss_legendre_cached(m);
  Real half = (hi - lo) / 2.0, mid = (hi + lo) / 2.0;
  nodes.resize(m);
  weights.resize(m);
  for (int i = 0; i < m; ++i) {
    nodes[i] = mid + half * g->nodes[i];
    weights[i] = half * g->weights[i];
  }
}

}  // namespace

CellRule cell_rule(const Cell& cell, int degree) {
  if (degree < 0) throw Error(Errc::BadInput, "cell_rule: degree must be >= 0");
  CellRule r;
  if (auto* t = std::get_if<TriangleCell>(&cell)) {
    // z = a + s (e1 + t e2): s-degree <= degree + 1 (with Jacobian s), t-degree <= degree.
    r.kind = CellRule::Kind::triangle;
    r.anchor = t->a;
    r.e1 = t->b - t->a;
    r.e2 = t->c - t->b;
    r.jacobian = abs(r.e1.re * r.e2.im - r.e1.im * r.e2.re);
    mapped_rule(degree / 2 + 1, Real(0), Real(1), r.outer_nodes, r.outer_weights);
    for (std::size_t i = 0; i < r.outer_nodes.size(); ++i) r.outer_weights[i] *= r.outer_nodes[i];
    mapped_rule(degree / 2 + 1, Real(0), Real(1), r.inner_nodes, r.inner_weights);
    return r;
  }
  const auto& p = std::get<PolarCell>(cell);
  r.kind = CellRule::Kind::polar;
  r.anchor = p.center;
  r.jacobian = Real(1);
  mapped_rule(degree / 2 + 1, p.r0, p.r1, r.outer_nodes, r.outer_weights);
  for (std::size_t i = 0; i < r.outer_nodes.size(); ++i) r.outer_weights[i] *= r.outer_nodes[i];
  double half = ((p.theta1 - p.theta0) / 2.0).to_double();
  mapped_rule(oscillatory_points(degree * half, working_precision()), p.theta0, p.theta1, r.inner_nodes, r.inner_weights);
  return r;
}

QuadratureRule domain_rule(std::span<const Cell> cells, int degree) {
  QuadratureRule out;
  for (const auto& c : cells) {
    QuadratureRule q = cell_rule(c, degree).flatten();
    for (auto& z : q.nodes) out.nodes.push_back(std::move(z));
    for (auto& w : q.weights) out.weights.push_back(std::move(w));
  }
  return out;
}

namespace {

// Moments M(a, b) = sum over the cell of u^a conj(u)^b dA with u = (z - anchor)/scale.
Matrix<Complex> anchored_moments(const CellRule& r, const Real& scale, int n) {
  const std::size_t dim = n + 1;
  Matrix<Complex> M(dim, dim);
  // Radial (or s) factor: S_p = sum_i w_i (x_i)^p for p <= 2n.
  std::vector<Real> S(2 * n + 1);
  {
    std::vector<Real> xs(r.outer_nodes.size()), pw(r.outer_nodes.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      xs[i] = r.kind == CellRule::Kind::polar ? r.outer_nodes[i] / scale : r.outer_nodes[i];
      pw[i] = r.outer_weights[i] * r.jacobian;
    }
    for (int p = 0; p <= 2 * n; ++p) {
      Real acc(0);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        acc += pw[i];
        pw[i] *= xs[i];
      }
      S[p] = std::move(acc);
    }
  }
  if (r.kind == CellRule::Kind::polar) {
    // Angular factor: Theta_k = sum_l w_l e^{i k theta_l}.
    const std::size_t m = r.inner_nodes.size();
    std::vector<Complex> e(m), pw(m);
    for (std::size_t l = 0; l < m; ++l) {
      e[l] = cis(r.inner_nodes[l]);
      pw[l] = Complex(r.inner_weights[l]);
    }
    std::vector<Complex> theta(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      Complex acc;
      for (std::size_t l = 0; l < m; ++l) {
        acc += pw[l];
        pw[l] *= e[l];
      }
      theta[k] = std::move(acc);
    }
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b)
        M(a, b) = a >= b ? theta[a - b] * S[a + b] : conj(theta[b - a]) * S[a + b];
    return M;
  }
  // Triangle: u = s w_t, w_t = (e1 + t e2)/scale; T(a, b) = sum_j w_j (w_t)^a conj(w_t)^b.
  const std::size_t m = r.inner_nodes.size();
  Matrix<Complex> P(m, dim), Q(m, dim);
  for (std::size_t j = 0; j < m; ++j) {
    Complex w = (r.e1 + r.e2 * r.inner_nodes[j]) / scale;
    P(j, 0) = Complex(1);
    Q(j, 0) = Complex(r.inner_weights[j]);
    for (std::size_t a = 1; a < dim; ++a) {
      mul_into(P(j, a), P(j, a - 1), w);
      mul_into(Q(j, a), Q(j, a - 1), w);
    }
  }
  parallel_chunks(dim, [&](std::size_t a) {
    for (std::size_t b = a; b < dim; ++b) {
      Complex acc;
      for (std::size_t j = 0; j < m; ++j) fma_conj_acc(acc, Q(j, a), P(j, b));
      M(a, b) = acc * S[a + b];
    }
  });
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < a; ++b) M(a, b) = conj(M(b, a));
  return M;
}

// G = T M T^H with T(a, p) = binom(a, p) delta^{a-p}: moves moments from u to u + delta.
Matrix<Complex> translate_moments(const Matrix<Complex>& M, const Complex& delta) {
  const std::size_t dim = M.rows();
  Matrix<Complex> T(dim, dim);
  {
    std::vector<Complex> dp(dim);
    dp[0] = Complex(1);
    for (std::size_t k = 1; k < dim; ++k) dp[k] = dp[k - 1] * delta;
    std::vector<Real> binom(dim), next(dim);
    binom[0] = Real(1);
    for (std::size_t a = 0; a < dim; ++a) {
      if (a > 0) {
        next[0] = Real(1);
        for (std::size_t p = 1; p < a; ++p) next[p] = binom[p - 1] + binom[p];
        next[a] = Real(1);
        std::swap(binom, next);
      }
      for (std::size_t p = 0; p <= a; ++p) T(a, p) = dp[a - p] * binom[p];
    }
  }
  Matrix<Complex> X(dim, dim), G(dim, dim);
  parallel_chunks(dim, [&](std::size_t a) {
    for (std::size_t q = 0; q < dim; ++q) {
      Complex acc;
      for (std::size_t p = 0; p <= a; ++p) fma_acc(acc, T(a, p), M(p, q));
      X(a, q) = std::move(acc);
    }
  });
  parallel_chunks(dim, [&](std::size_t a) {
    for (std::size_t b = a; b < dim; ++b) {
      Complex acc;
      for (std::size_t q = 0; q <= b; ++q) fma_conj_acc(acc, X(a, q), T(b, q));
      G(a, b) = std::move(acc);
    }
  });
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < a; ++b) G(a, b) = conj(G(b, a));
  return G;
}

}  // namespace

Matrix<Complex> gram_moments(std::span<const Cell> cells, int degree, const Complex& center, const Real& scale, int n) {
  if (n < 0) throw Error(Errc::BadInput, "gram_moments: n must be >= 0");
  const std::size_t dim = n + 1;
  // Cells sharing an anchor are accumulated together and translated once.
  std::vector<std::pair<Complex, Matrix<Complex>>> groups;
  for (const auto& cell : cells) {
    CellRule r = cell_rule(cell, degree);
    Matrix<Complex> M = anchored_moments(r, scale, n);
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == r.anchor; });
    if (it == groups.end()) {
      groups.emplace_back(r.anchor, std::move(M));
    } else {
      for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b) it->second(a, b) += M(a, b);
    }
  }
  Matrix<Complex> G(dim, dim);
  for (auto& [anchor, M] : groups) {
    Complex delta = (anchor - center) / scale;
    const Matrix<Complex>& src = delta.is_zero() ? M : (M = translate_moments(M, delta));
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b) G(a, b) += src(a, b);
  }
  return G;
}

}  // namespace exz::num
