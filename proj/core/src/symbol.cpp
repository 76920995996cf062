#include "skinspec/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "skinspec/error.hpp"

namespace skinspec {

namespace {

bool finite(const Complex& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); }

double sign_k_plus_one(std::size_t k) { return (k % 2 == 1) ? 1.0 : -1.0; }  // (-1)^{k+1}

// Determinant of the tridiagonal principal submatrix of A0 - lambda on the
// 0-based index range [lo, hi]; 1 for an empty range.
Complex tridiagonal_det(const SymbolCoeffs& s, Complex lambda, std::size_t lo, std::size_t hi) {
  if (lo > hi) return 1.0;
  Complex prev = 1.0;
  Complex cur = s.a[lo] - lambda;
  for (std::size_t i = lo + 1; i <= hi; ++i) {
    const Complex next = (s.a[i] - lambda) * cur - s.b[i - 1] * s.c[i - 1] * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// Ascending-power polynomial helpers for g(lambda).
CVector poly_mul(const CVector& p, const CVector& q) {
  CVector out(p.size() + q.size() - 1, Complex{});
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  return out;
}

CVector poly_axpy(const CVector& x, Complex alpha, const CVector& y) {  // x + alpha y
  CVector out(std::max(x.size(), y.size()), Complex{});
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += x[i];
  for (std::size_t i = 0; i < y.size(); ++i) out[i] += alpha * y[i];
  return out;
}

CVector tridiagonal_det_poly(const SymbolCoeffs& s, std::size_t lo, std::size_t hi) {
  if (lo > hi) return {1.0};
  CVector prev{1.0};
  CVector cur{s.a[lo], -1.0};
  for (std::size_t i = lo + 1; i <= hi; ++i) {
    CVector next = poly_axpy(poly_mul({s.a[i], -1.0}, cur), -s.b[i - 1] * s.c[i - 1], prev);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

SymbolCoeffs SymbolCoeffs::make(CVector a, CVector b, CVector c) {
  SymbolCoeffs s{a.size(), std::move(a), std::move(b), std::move(c)};
  s.validate();
  return s;
}

SymbolCoeffs SymbolCoeffs::scalar(Complex a, Complex b, Complex c) { return make({a}, {b}, {c}); }

void SymbolCoeffs::validate() const {
  if (k == 0) throw InvalidInput("SymbolCoeffs: period k must be at least 1");
  if (a.size() != k || b.size() != k || c.size() != k) {
    throw InvalidInput("SymbolCoeffs: expected a, b, c of length k=" + std::to_string(k) +
                       ", got " + std::to_string(a.size()) + ", " + std::to_string(b.size()) +
                       ", " + std::to_string(c.size()));
  }
  auto all_finite = [](const CVector& v) { return std::all_of(v.begin(), v.end(), finite); };
  if (!all_finite(a) || !all_finite(b) || !all_finite(c)) {
    throw InvalidInput("SymbolCoeffs: non-finite coefficient");
  }
}

Complex SymbolCoeffs::prod_b() const {
  Complex p = 1.0;
  for (const auto& x : b) p *= x;
  return p;
}

Complex SymbolCoeffs::prod_c() const {
  Complex p = 1.0;
  for (const auto& x : c) p *= x;
  return p;
}

double SymbolCoeffs::scale() const {
  double m = 0.0;
  for (const auto* v : {&a, &b, &c}) m = std::max(m, max_abs(*v));
  return m;
}

SymbolBlocks build_blocks(const SymbolCoeffs& s) {
  s.validate();
  const std::size_t k = s.k;
  SymbolBlocks blocks{CMatrix(k, k), CMatrix(k, k), CMatrix(k, k)};
  for (std::size_t i = 0; i < k; ++i) {
    blocks.coeff_const(i, i) = s.a[i];
    if (i + 1 < k) {
      blocks.coeff_const(i, i + 1) = s.b[i];
      blocks.coeff_const(i + 1, i) = s.c[i];
    }
  }
  blocks.coeff_inv_z(k - 1, 0) = s.b[k - 1];
  blocks.coeff_z(0, k - 1) = s.c[k - 1];
  return blocks;
}

CMatrix eval_symbol(const SymbolCoeffs& s, Complex z) {
  if (z == Complex{}) throw InvalidInput("eval_symbol: z must be nonzero");
  s.validate();
  const std::size_t k = s.k;
  CMatrix f(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    f(i, i) = s.a[i];
    if (i + 1 < k) {
      f(i, i + 1) = s.b[i];
      f(i + 1, i) = s.c[i];
    }
  }
  f(0, k - 1) += s.c[k - 1] * z;
  f(k - 1, 0) += s.b[k - 1] / z;
  return f;
}

Complex quad_coeff_z(const SymbolCoeffs& s) { return sign_k_plus_one(s.k) * s.prod_c(); }

Complex quad_coeff_inv_z(const SymbolCoeffs& s) { return sign_k_plus_one(s.k) * s.prod_b(); }

Complex p_lambda(const SymbolCoeffs& s, Complex lambda) {
  s.validate();
  if (s.k == 1) return 0.0;
  if (s.k == 2) return 1.0;
  return tridiagonal_det(s, lambda, 1, s.k - 2);
}

Complex g_lambda(const SymbolCoeffs& s, Complex lambda) {
  s.validate();
  const Complex det_core = tridiagonal_det(s, lambda, 0, s.k - 1);
  return det_core - s.b[s.k - 1] * s.c[s.k - 1] * p_lambda(s, lambda);
}

CVector g_polynomial(const SymbolCoeffs& s) {
  s.validate();
  const CVector det_core = tridiagonal_det_poly(s, 0, s.k - 1);
  if (s.k == 1) return det_core;
  const CVector p = (s.k == 2) ? CVector{1.0} : tridiagonal_det_poly(s, 1, s.k - 2);
  return poly_axpy(det_core, -s.b[s.k - 1] * s.c[s.k - 1], p);
}

Complex det_closed_form(const SymbolCoeffs& s, Complex z, Complex lambda) {
  if (z == Complex{}) throw InvalidInput("det_closed_form: z must be nonzero");
  return quad_coeff_z(s) * z + quad_coeff_inv_z(s) / z + g_lambda(s, lambda);
}

RootPair quadratic_roots(const SymbolCoeffs& s, Complex lambda) {
  const Complex A = quad_coeff_z(s);
  const Complex B = quad_coeff_inv_z(s);
  if (A == Complex{} || B == Complex{}) {
    throw DegenerateSymbol("quadratic_roots: prod(c) or prod(b) vanishes; the z-quadratic degenerates");
  }
  const Complex g = g_lambda(s, lambda);

  RootPair out;
  out.quad_a = A;
  out.quad_b = B;
  out.g = g;

  const Complex disc = g * g - 4.0 * A * B;
  const double tol = double_root_rtol * (std::norm(g) + 4.0 * std::abs(A * B) + 1.0);
  if (std::abs(disc) <= tol) {
    out.multiplicity = RootMultiplicity::double_root;
    out.z1 = out.z2 = -g / (2.0 * A);
    return out;
  }

  // Cancellation-free pair: q = -(g + sign * sqrt(disc)) / 2, z = q / A and B / q.
  Complex sq = std::sqrt(disc);
  if ((std::conj(g) * sq).real() < 0.0) sq = -sq;
  const Complex q = -0.5 * (g + sq);
  Complex r1 = q / A;
  Complex r2 = B / q;

  const double m1 = std::abs(r1);
  const double m2 = std::abs(r2);
  const bool tie = std::abs(m1 - m2) <= 1e-14 * std::max(m1, m2);
  if ((!tie && m2 < m1) || (tie && std::arg(r2) < std::arg(r1))) std::swap(r1, r2);
  out.z1 = r1;
  out.z2 = r2;
  return out;
}

CVector double_root_lambdas(const SymbolCoeffs& s) {
  const Complex A = quad_coeff_z(s);
  const Complex B = quad_coeff_inv_z(s);
  if (A == Complex{} || B == Complex{}) {
    throw DegenerateSymbol("double_root_lambdas: prod(c) or prod(b) vanishes");
  }
  const Complex shift = 2.0 * std::sqrt(A * B);
  const CVector g = g_polynomial(s);

  CVector out;
  for (const Complex sign : {Complex(1.0), Complex(-1.0)}) {
    CVector poly = g;
    poly[0] -= sign * shift;
    CVector descending(poly.rbegin(), poly.rend());
    const CVector roots = poly_roots(descending);
    out.insert(out.end(), roots.begin(), roots.end());
  }
  sort_complex(out);
  return out;
}

CMatrix finite_section(const SymbolCoeffs& s, std::size_t n) {
  s.validate();
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = s.a[i % s.k];
    if (i + 1 < n) {
      m(i, i + 1) = s.b[i % s.k];
      m(i + 1, i) = s.c[i % s.k];
    }
  }
  return m;
}

SymbolCoeffs mirrored(const SymbolCoeffs& s) {
  s.validate();
  const std::size_t k = s.k;
  CVector a(s.a.rbegin(), s.a.rend());
  CVector b(k), c(k);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    b[i] = s.c[k - 2 - i];
    c[i] = s.b[k - 2 - i];
  }
  b[k - 1] = s.c[k - 1];
  c[k - 1] = s.b[k - 1];
  return SymbolCoeffs::make(std::move(a), std::move(b), std::move(c));
}

}  // namespace skinspec
