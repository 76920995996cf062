#pragma once

#include <span>

#include "skinspec/linalg.hpp"

namespace skinspec::cli::oracle {

/// Determinant by Gaussian elimination with partial pivoting, written
/// independently of the closed-form expansion it is used to check.
Complex lu_determinant(CMatrix m);

/// Upper bound on |det| (product of row 1-norms), floored at 1.
double determinant_scale(const CMatrix& m);

/// Greedy nearest matching of `lhs` onto unused entries of `rhs`; returns the
/// largest matched distance (infinity when the sizes differ).
double greedy_match_distance(std::span<const Complex> lhs, std::span<const Complex> rhs);

/// Slope of the least-squares line through (x_i, y_i).
double fit_slope(std::span<const double> x, std::span<const double> y);

}  // namespace skinspec::cli::oracle
