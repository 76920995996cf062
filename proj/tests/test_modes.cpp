#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "skinspec/error.hpp"
#include "skinspec/modes.hpp"
#include "skinspec/spectra.hpp"
#include "skinspec/winding.hpp"
#include "support.hpp"

using namespace skinspec;
using testing::coburn2;
using testing::Rng;

namespace {

// Random symbol together with a lambda of winding -1 whose roots sit well
// outside the unit circle.
struct Draw {
  SymbolCoeffs s;
  Complex lambda;
};

Draw draw_negative_winding(Rng& rng, std::size_t k) {
  for (;;) {
    const SymbolCoeffs s = rng.symbol(k);
    for (int attempt = 0; attempt < 200; ++attempt) {
      const Complex lambda = rng.polar(0.0, 3.0);
      const RootPair r = quadratic_roots(s, lambda);
      if (std::abs(r.z1) > 1.15 && std::abs(r.z2) < 8.0) return {s, lambda};
    }
  }
}

// Largest modulus of rows 0..n-2 of (A_n - lambda) x; the last row is cut
// off by the truncation and is excluded.
double interior_row_defect(const SymbolCoeffs& s, Complex lambda, const CVector& x) {
  const CVector image = finite_section(s, x.size()).apply(x);
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) worst = std::max(worst, std::abs(image[i] - lambda * x[i]));
  return worst;
}

}  // namespace

TEST_SUITE_BEGIN("modes");

TEST_CASE("operator eigenvector for a period-one symbol") {
  const SymbolCoeffs s = SymbolCoeffs::scalar(0.0, 2.0, 0.5);
  const OperatorEigenvector ev = operator_eigenvector(s, 0.0);
  CHECK(ev.chain == ChainKind::independent);
  CHECK(ev.rho == doctest::Approx(0.5));
  CHECK(std::abs(std::abs(ev.roots.z1) - 2.0) < 1e-12);
  CHECK(std::abs(std::abs(ev.roots.z2) - 2.0) < 1e-12);
  CHECK(std::abs(ev.roots.z1 + ev.roots.z2) < 1e-12);

  const CVector x = materialize(ev, 40);
  CHECK(max_abs(x) == doctest::Approx(1.0));
  CHECK(interior_row_defect(s, 0.0, x) < 1e-12);
  const DecayProfile profile = decay_profile(x, 1);
  CHECK(profile.fitted_rho == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("operator eigenvectors satisfy every row") {
  Rng rng(51);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 1 + trial % 4;
    const Draw d = draw_negative_winding(rng, k);
    REQUIRE(eigencurve_winding_sum(d.s, d.lambda) == -1);
    const OperatorEigenvector ev = operator_eigenvector(d.s, d.lambda);
    CHECK(ev.rho < 1.0);
    CHECK(ev.k() == k);

    // Each basis vector lies in the kernel of f(z_i) - lambda.
    if (ev.chain == ChainKind::independent && !ev.roots.is_double()) {
      const CMatrix f1 = eval_symbol(d.s, ev.roots.z1).shifted(d.lambda);
      const CMatrix f2 = eval_symbol(d.s, ev.roots.z2).shifted(d.lambda);
      CHECK(norm2(f1.apply(ev.v1)) <= 1e-9 * std::max(1.0, f1.frobenius_norm()));
      CHECK(norm2(f2.apply(ev.v2)) <= 1e-9 * std::max(1.0, f2.frobenius_norm()));
    }

    const CVector x = materialize(ev, 40 * k);
    const double scale = std::max({1.0, d.s.scale(), std::abs(d.lambda)});
    CHECK(interior_row_defect(d.s, d.lambda, x) <= 1e-8 * scale);

    // The cells materialize() returns are eigenvector_cell() rescaled.
    const CVector cell3 = eigenvector_cell(ev, 3);
    const CVector raw0 = eigenvector_cell(ev, 0);
    std::size_t pivot = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (std::abs(raw0[i]) > std::abs(raw0[pivot])) pivot = i;
    }
    const Complex ratio = x[pivot] / raw0[pivot];
    for (std::size_t i = 0; i < k; ++i) CHECK(std::abs(x[3 * k + i] - ratio * cell3[i]) < 1e-10);

    const RootPair& r = ev.roots;
    const bool loose = ev.chain == ChainKind::jordan || std::abs(r.z2) < 1.1 * std::abs(r.z1);
    const double fitted = decay_profile(x, k).fitted_rho;
    CHECK(std::abs(fitted - ev.rho) <= (loose ? 0.10 : 0.05) * ev.rho);
  }
}

TEST_CASE("non-negative winding has no decaying operator eigenvector") {
  CHECK_THROWS_AS(operator_eigenvector(SymbolCoeffs::scalar(0.0, 0.5, 2.0), 0.0), InvalidInput);
  CHECK_THROWS_AS(operator_eigenvector(coburn2(), 0.0), InvalidInput);
  CHECK_THROWS_AS(operator_eigenvector(SymbolCoeffs::scalar(0.0, 1.0, 1.0), 0.0), BoundaryError);
}

TEST_CASE("Jordan chains at a double root") {
  SUBCASE("period one") {
    const SymbolCoeffs s = SymbolCoeffs::scalar(0.0, 1.0, 0.25);
    const CVector v2 = jordan_chain_vector(s, 1.0, 2.0, CVector{1.0});
    REQUIRE(v2.size() == 1);
    CHECK(std::abs(v2[0]) < 1e-12);

    const CVector shifted = jordan_chain_vector(SymbolCoeffs::scalar(5.0, 1.0, 0.25), 6.0, 2.0, CVector{1.0});
    CHECK(std::abs(shifted[0]) < 1e-12);

    const OperatorEigenvector ev = operator_eigenvector(s, 1.0);
    CHECK(ev.chain == ChainKind::jordan);
    CHECK(ev.roots.is_double());
    CHECK(ev.rho == doctest::Approx(0.5).epsilon(1e-6));
    const CVector x = materialize(ev, 60);
    CHECK(interior_row_defect(s, 1.0, x) < 1e-8);
    // x_n is a combination of 2^{-n} and n 2^{-n}; the polynomial factor
    // shows up as a slightly slower fitted rate.
    CHECK(decay_profile(x, 1).fitted_rho == doctest::Approx(0.5).epsilon(0.10));
  }
  SUBCASE("random period-two double roots") {
    Rng rng(52);
    for (int trial = 0; trial < 10; ++trial) {
      const SymbolCoeffs s = rng.symbol(2);
      for (const Complex lambda : double_root_lambdas(s)) {
        const Complex z1 = quadratic_roots(s, lambda).z1;
        const CMatrix f = eval_symbol(s, z1).shifted(lambda);
        const CVector v1 = smallest_singular_subspace(f, 1).right_vectors[0];
        const CVector v2 = jordan_chain_vector(s, lambda, z1, v1);

        // (A1 + (A0 - lambda) / z1 + A-1 / z1^2) v2 + ((A0 - lambda) + 2 A-1 / z1) v1
        const SymbolBlocks b = build_blocks(s);
        const CMatrix a0 = b.coeff_const.shifted(lambda);
        const CMatrix lhs = b.coeff_z + a0 * (1.0 / z1) + b.coeff_inv_z * (1.0 / (z1 * z1));
        const CMatrix rhs = a0 + b.coeff_inv_z * (2.0 / z1);
        const CVector l = lhs.apply(v2);
        const CVector r = rhs.apply(v1);
        double defect = 0.0;
        for (std::size_t i = 0; i < 2; ++i) defect = std::max(defect, std::abs(l[i] + r[i]));
        const double scale = std::max({1.0, lhs.frobenius_norm(), rhs.frobenius_norm()});
        CHECK(defect <= 1e-8 * scale);
      }
    }
  }
  CHECK_THROWS_AS(jordan_chain_vector(SymbolCoeffs::scalar(0.0, 1.0, 0.25), 1.0, 2.0, CVector{1.0, 0.0}),
                  InvalidInput);
  CHECK_THROWS_AS(jordan_chain_vector(SymbolCoeffs::scalar(0.0, 1.0, 0.25), 1.0, 0.0, CVector{1.0}),
                  InvalidInput);
}

TEST_CASE("residual helper") {
  const CMatrix d = CMatrix::diagonal(CVector{3.0, 1.0, 2.0});
  CHECK(residual(d, Complex(0.5, 1.0), CVector{1.0, 0.0, 0.0}) == doctest::Approx(std::abs(Complex(2.5, -1.0))));

  const auto pairs = eig_dense(finite_section(coburn2(), 12));
  const double norm = finite_section(coburn2(), 12).frobenius_norm();
  for (const auto& p : pairs) CHECK(residual(finite_section(coburn2(), 12), p.value, p.vector) <= 1e-8 * norm);

  // Truncated kernel vector: only the last row survives, with value c_1 u_19 = (-1/2)^9.
  const KernelRecurrence kernel = kernel_forward_recurrence(coburn2(), 0.0, 20);
  const double expected = std::pow(0.5, 9) / norm2(kernel.vector);
  CHECK(residual(finite_section(coburn2(), 20), 0.0, kernel.vector) == doctest::Approx(expected).epsilon(1e-12));

  CHECK_THROWS_AS(residual(d, 0.0, CVector{0.0, 0.0, 0.0}), InvalidInput);
  CHECK_THROWS_AS(residual(d, 0.0, CVector{1.0}), InvalidInput);
}

TEST_CASE("pseudo-eigenvectors of finite sections") {
  const SymbolCoeffs s = SymbolCoeffs::scalar(0.0, 2.0, 0.5);

  SUBCASE("geometric residual") {
    const PseudoMode mode = pseudo_eigenvector(s, 0.0, 40);
    CHECK(mode.vector.size() == 40);
    CHECK(mode.side == Side::left);
    CHECK(mode.chain == ChainKind::independent);
    CHECK(mode.rho == doctest::Approx(0.5));
    CHECK(mode.residual > 0.0);
    CHECK(mode.residual <= 10.0 * std::pow(0.5, 39));
    CHECK(mode.bound_constant == doctest::Approx(mode.residual / std::pow(0.5, 39)));
  }
  SUBCASE("exact and floating-point residuals agree while above round-off") {
    for (std::size_t n : {4u, 8u, 12u, 16u, 20u}) {
      const PseudoMode mode = pseudo_eigenvector(s, 0.0, n);
      CHECK(mode.computed_residual == doctest::Approx(mode.residual).epsilon(1e-8));
    }
    // Far beyond round-off the evaluated residual floors while the exact one keeps shrinking.
    const PseudoMode deep = pseudo_eigenvector(s, 0.0, 120);
    CHECK(deep.residual < 1e-30);
    CHECK(deep.computed_residual < 1e-14);
  }
  SUBCASE("a single cell") {
    Rng rng(53);
    const Draw d = draw_negative_winding(rng, 3);
    const PseudoMode mode = pseudo_eigenvector(d.s, d.lambda, 3);
    CHECK(mode.computed_residual == doctest::Approx(mode.residual).epsilon(1e-9));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(pseudo_eigenvector(coburn2(), 0.0, 20), InvalidInput);
    CHECK_THROWS_AS(pseudo_eigenvector(s, 0.0, 0), InvalidInput);
    const SymbolCoeffs right = SymbolCoeffs::make({0.0, 0.0}, {0.5, 0.5}, {2.0, 2.0});
    CHECK_THROWS_AS(pseudo_eigenvector(right, 0.1, 21), InvalidInput);
  }
}

TEST_CASE("pseudo-eigenvector residuals decay at the root rate") {
  SUBCASE("independent roots") {
    Rng rng(54);
    for (int trial = 0; trial < 6; ++trial) {
      const std::size_t k = 1 + trial % 3;
      const Draw d = draw_negative_winding(rng, k);
      std::vector<double> cells, logs;
      double rho = 0.0;
      for (std::size_t c = 10; c <= 30; c += 5) {
        const PseudoMode mode = pseudo_eigenvector(d.s, d.lambda, c * k);
        rho = mode.rho;
        cells.push_back(static_cast<double>(c));
        logs.push_back(std::log(mode.residual));
      }
      CHECK(testing::least_squares_slope(cells, logs) == doctest::Approx(std::log(rho)).epsilon(0.10));
    }
  }
  SUBCASE("Jordan chain after removing the linear factor") {
    const SymbolCoeffs s = SymbolCoeffs::scalar(0.0, 1.0, 0.25);
    std::vector<double> cells, logs;
    for (std::size_t n = 20; n <= 80; n += 10) {
      const PseudoMode mode = pseudo_eigenvector(s, 1.0, n);
      CHECK(mode.chain == ChainKind::jordan);
      cells.push_back(static_cast<double>(n));
      logs.push_back(std::log(mode.residual / static_cast<double>(n)));
    }
    CHECK(testing::least_squares_slope(cells, logs) == doctest::Approx(std::log(0.5)).epsilon(0.10));
  }
}

TEST_CASE("mirror symmetry of the constructions") {
  Rng rng(55);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t k = 1 + trial % 3;
    const Draw d = draw_negative_winding(rng, k);
    const SymbolCoeffs flipped = mirrored(d.s);
    REQUIRE(eigencurve_winding_sum(flipped, d.lambda) == 1);

    const std::size_t n = 20 * k;
    const PseudoMode left = pseudo_eigenvector(d.s, d.lambda, n);
    const PseudoMode right = pseudo_eigenvector(flipped, d.lambda, n);
    CHECK(left.side == Side::left);
    CHECK(right.side == Side::right);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(right.vector[i] - left.vector[n - 1 - i]) < 1e-12);

    const double rho_left = decay_profile(left.vector, k, Side::left).fitted_rho;
    const double rho_right = decay_profile(right.vector, k, Side::right).fitted_rho;
    CHECK(rho_right == doctest::Approx(rho_left).epsilon(1e-10));
    CHECK(right.computed_residual == doctest::Approx(left.computed_residual).epsilon(1e-6));
  }
}

TEST_CASE("decay profiles") {
  SUBCASE("exact geometric sequence") {
    CVector v(40);
    for (std::size_t j = 1; j <= v.size(); ++j) v[j - 1] = std::pow(2.0, -std::ceil(j / 2.0));
    const DecayProfile p = decay_profile(v, 2);
    CHECK(std::abs(p.fitted_rho - 0.5) <= 1e-10);
    CHECK(p.cell_max.size() == 20);
    CHECK(p.cell_max.front() == doctest::Approx(1.0));
    CHECK(p.window_begin == 1);
    CHECK(p.window_end == 19);
    CHECK(p.side == Side::left);

    CVector reversed(v.rbegin(), v.rend());
    CHECK(std::abs(decay_profile(reversed, 2, Side::right).fitted_rho - 0.5) <= 1e-10);
  }
  SUBCASE("constant vector") {
    CHECK(decay_profile(CVector(12, Complex(0.0, 3.0)), 3).fitted_rho == doctest::Approx(1.0));
  }
  SUBCASE("zero cells are skipped") {
    const KernelRecurrence kernel = kernel_forward_recurrence(coburn2(), 0.0, 40);
    CHECK(decay_profile(kernel.vector, 2).fitted_rho == doctest::Approx(0.5).epsilon(1e-12));
    // With k = 1 every odd site is zero; only even sites enter the fit.
    CHECK(decay_profile(kernel.vector, 1).fitted_rho == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(decay_profile(CVector(7, 1.0), 2), InvalidInput);
  CHECK_THROWS_AS(decay_profile(CVector(8, 0.0), 2), InvalidInput);
}

TEST_SUITE_END();
