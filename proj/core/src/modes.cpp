#include "skinspec/modes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "skinspec/error.hpp"
#include "skinspec/winding.hpp"

namespace skinspec {

namespace {

// Cell m of the two basis sequences u1, u2 (before combination).
struct BasisCells {
  CVector u1;
  CVector u2;
};

BasisCells basis_cells(const OperatorEigenvector& ev, std::size_t m) {
  const std::size_t k = ev.k();
  const Complex p1 = std::pow(ev.roots.z1, -static_cast<double>(m));
  BasisCells out{CVector(k), CVector(k)};
  if (ev.chain == ChainKind::jordan) {
    const Complex dp = static_cast<double>(m) * std::pow(ev.roots.z1, 1.0 - static_cast<double>(m));
    for (std::size_t i = 0; i < k; ++i) {
      out.u1[i] = p1 * ev.v1[i];
      out.u2[i] = p1 * ev.v2[i] + (m == 0 ? Complex{} : dp * ev.v1[i]);
    }
  } else {
    const Complex p2 = std::pow(ev.roots.z2, -static_cast<double>(m));
    for (std::size_t i = 0; i < k; ++i) {
      out.u1[i] = p1 * ev.v1[i];
      out.u2[i] = p2 * ev.v2[i];
    }
  }
  return out;
}

// First entry of (A0 - lambda) x_0 + A-1 x_1: the only nonzero entry of the
// first block row of (T(f) - lambda) applied to a basis sequence.
Complex first_row_defect(const SymbolCoeffs& s, Complex lambda, std::span<const Complex> cell0,
                         std::span<const Complex> cell1) {
  Complex d = (s.a[0] - lambda) * cell0[0];
  if (s.k > 1) {
    d += s.b[0] * cell0[1];
  } else {
    d += s.b[0] * cell1[0];
  }
  return d;
}

CVector unit_right_null_vector(const CMatrix& m) {
  return smallest_singular_subspace(m, 1).right_vectors.front();
}

}  // namespace

CVector jordan_chain_vector(const SymbolCoeffs& s, Complex lambda, Complex z1,
                            std::span<const Complex> v1) {
  if (v1.size() != s.k) throw InvalidInput("jordan_chain_vector: v1 must have length k");
  if (z1 == Complex{}) throw InvalidInput("jordan_chain_vector: z1 must be nonzero");
  const SymbolBlocks blocks = build_blocks(s);
  const CMatrix shifted = blocks.coeff_const.shifted(lambda);
  const Complex w = 1.0 / z1;

  const CMatrix system = blocks.coeff_z + shifted * w + blocks.coeff_inv_z * (w * w);
  const CVector rhs_pos = (shifted + blocks.coeff_inv_z * (2.0 * w)).apply(v1);
  CVector rhs(rhs_pos.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = -rhs_pos[i];

  LeastSquaresSolution sol = solve_least_squares(system, rhs);
  const double scale = std::max({1.0, system.frobenius_norm(), norm2(rhs)});
  if (sol.residual > 1e-8 * scale) {
    throw NumericalError("jordan_chain_vector: inconsistent chain system (residual " +
                         std::to_string(sol.residual) + ")");
  }
  return std::move(sol.x);
}

OperatorEigenvector operator_eigenvector(const SymbolCoeffs& s, Complex lambda) {
  const WindingResult w = winding_at_radius(s, lambda, 1.0);
  if (w.winding >= 0) {
    throw InvalidInput("operator_eigenvector: winding " + std::to_string(w.winding) +
                       " >= 0; a decaying eigenvector of T(f) needs negative winding");
  }

  OperatorEigenvector ev;
  ev.lambda = lambda;
  ev.roots = quadratic_roots(s, lambda);
  ev.rho = std::max(1.0 / std::abs(ev.roots.z1), 1.0 / std::abs(ev.roots.z2));

  const CMatrix f1 = eval_symbol(s, ev.roots.z1).shifted(lambda);
  if (!ev.roots.is_double()) {
    ev.v1 = unit_right_null_vector(f1);
    ev.v2 = unit_right_null_vector(eval_symbol(s, ev.roots.z2).shifted(lambda));
    ev.chain = ChainKind::independent;
  } else {
    const std::size_t want = std::min<std::size_t>(2, s.k);
    const SingularSubspace sub = smallest_singular_subspace(f1, want);
    const double tol = 1e-8 * std::max(1.0, f1.frobenius_norm());
    ev.v1 = sub.right_vectors[0];
    if (want == 2 && sub.values[1] <= tol) {
      ev.v2 = sub.right_vectors[1];
      ev.chain = ChainKind::independent;
    } else {
      ev.v2 = jordan_chain_vector(s, lambda, ev.roots.z1, ev.v1);
      ev.chain = ChainKind::jordan;
    }
  }

  const BasisCells c0 = basis_cells(ev, 0);
  const BasisCells c1 = basis_cells(ev, 1);
  const Complex d1 = first_row_defect(s, lambda, c0.u1, c1.u1);
  const Complex d2 = first_row_defect(s, lambda, c0.u2, c1.u2);

  // Null direction of the 1 x 2 row [d1 d2], phased so the larger component is real positive.
  Complex alpha1 = d2;
  Complex alpha2 = -d1;
  const double norm = std::hypot(std::abs(alpha1), std::abs(alpha2));
  if (norm == 0.0) {
    alpha1 = 1.0;
    alpha2 = 0.0;
  } else {
    const Complex lead = std::abs(alpha1) >= std::abs(alpha2) ? alpha1 : alpha2;
    const Complex phase = std::conj(lead) / (std::abs(lead) * norm);
    alpha1 *= phase;
    alpha2 *= phase;
  }
  ev.alpha1 = alpha1;
  ev.alpha2 = alpha2;
  return ev;
}

CVector eigenvector_cell(const OperatorEigenvector& ev, std::size_t m) {
  const BasisCells cells = basis_cells(ev, m);
  CVector out(ev.k());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ev.alpha1 * cells.u1[i] + ev.alpha2 * cells.u2[i];
  return out;
}

namespace {

CVector construct(const OperatorEigenvector& ev, std::size_t n) {
  const std::size_t k = ev.k();
  if (k == 0) throw InvalidInput("materialize: empty eigenvector representation");
  CVector out(n);
  const Complex w1 = 1.0 / ev.roots.z1;
  const Complex w2 = 1.0 / ev.roots.z2;
  Complex p1 = 1.0;       // z1^{-m}
  Complex p1_prev = 0.0;  // z1^{-(m-1)}, unused at m = 0
  Complex p2 = 1.0;       // z2^{-m}
  const std::size_t cells = (n + k - 1) / k;
  for (std::size_t m = 0; m < cells; ++m) {
    for (std::size_t i = 0; i < k && m * k + i < n; ++i) {
      Complex x = ev.alpha1 * p1 * ev.v1[i];
      if (ev.chain == ChainKind::jordan) {
        x += ev.alpha2 * (p1 * ev.v2[i] + static_cast<double>(m) * p1_prev * ev.v1[i]);
      } else {
        x += ev.alpha2 * p2 * ev.v2[i];
      }
      out[m * k + i] = x;
    }
    p1_prev = p1;
    p1 *= w1;
    p2 *= w2;
  }
  return out;
}

}  // namespace

CVector materialize(const OperatorEigenvector& ev, std::size_t n) {
  CVector out = construct(ev, n);
  const double peak = max_abs(out);
  if (peak > 0.0) {
    for (auto& x : out) x /= peak;
  }
  return out;
}

double residual(const CMatrix& a, Complex lambda, std::span<const Complex> v) {
  if (v.size() != a.cols()) throw InvalidInput("residual: dimension mismatch");
  const double nv = norm2(v);
  if (nv == 0.0) throw InvalidInput("residual: zero vector");
  CVector r = a.apply(v);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= lambda * v[i];
  return norm2(r) / nv;
}

PseudoMode pseudo_eigenvector(const SymbolCoeffs& s, Complex lambda, std::size_t n) {
  if (n == 0) throw InvalidInput("pseudo_eigenvector: N must be positive");
  const WindingResult w = winding_at_radius(s, lambda, 1.0);
  if (w.winding == 0) {
    throw InvalidInput("pseudo_eigenvector: winding 0, no decaying pseudo-mode is guaranteed");
  }

  PseudoMode mode;
  const bool left = w.winding < 0;
  if (!left && n % s.k != 0) {
    throw InvalidInput("pseudo_eigenvector: right-localized modes need N divisible by k");
  }
  const SymbolCoeffs built = left ? s : mirrored(s);
  const OperatorEigenvector ev = operator_eigenvector(built, lambda);

  // One extra entry: the truncated section misses only the coupling
  // b[(n-1) % k] * x[n] in its last row.
  CVector full = construct(ev, n + 1);
  const Complex dropped = full[n];
  full.pop_back();
  const double peak = max_abs(full);
  for (auto& x : full) x /= peak;
  mode.residual = std::abs(built.b[(n - 1) % s.k] * dropped) / peak / norm2(full);

  if (left) {
    mode.vector = std::move(full);
    mode.side = Side::left;
  } else {
    mode.vector.assign(full.rbegin(), full.rend());
    mode.side = Side::right;
  }
  mode.chain = ev.chain;
  mode.rho = ev.rho;
  mode.computed_residual = residual(finite_section(s, n), lambda, mode.vector);

  const double cells = std::ceil(static_cast<double>(n) / static_cast<double>(s.k));
  const double envelope = std::pow(mode.rho, cells - 1.0) * (mode.chain == ChainKind::jordan ? cells : 1.0);
  mode.bound_constant = envelope > 0.0 ? mode.residual / envelope : 0.0;
  return mode;
}

DecayProfile decay_profile(std::span<const Complex> v, std::size_t k, Side side) {
  if (k == 0) throw InvalidInput("decay_profile: k must be positive");
  if (v.size() < 4 * k) throw InvalidInput("decay_profile: vector shorter than 4k");
  const double peak = max_abs(v);
  if (peak == 0.0) throw InvalidInput("decay_profile: all-zero vector");

  DecayProfile out;
  out.side = side;
  const std::size_t n = v.size();
  const std::size_t cells = (n + k - 1) / k;
  out.cell_max.assign(cells, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t idx = side == Side::left ? j : n - 1 - j;
    double& slot = out.cell_max[j / k];
    slot = std::max(slot, std::abs(v[idx]) / peak);
  }

  out.window_begin = 1;
  out.window_end = cells - 1;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  for (std::size_t m = out.window_begin; m < out.window_end; ++m) {
    if (out.cell_max[m] <= 0.0) continue;
    const double x = static_cast<double>(m);
    const double y = std::log(out.cell_max[m]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) {
    out.fitted_rho = 1.0;
    out.fitted_logC = 0.0;
    return out;
  }
  const double cnt = static_cast<double>(count);
  const double denom = cnt * sxx - sx * sx;
  const double slope = (cnt * sxy - sx * sy) / denom;
  out.fitted_rho = std::exp(slope);
  out.fitted_logC = (sy - slope * sx) / cnt;
  return out;
}

const char* to_string(ChainKind chain) {
  return chain == ChainKind::jordan ? "jordan" : "independent";
}

const char* to_string(Side side) { return side == Side::left ? "left" : "right"; }

}  // namespace skinspec
