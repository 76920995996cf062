#pragma once

// Helpers shared by the unit tests. The determinant and matrix-product
// routines here are deliberately naive so they can serve as oracles for the
// library's closed forms and factorizations.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <filesystem>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "skinspec/linalg.hpp"
#include "skinspec/symbol.hpp"

namespace testing {

using skinspec::CMatrix;
using skinspec::Complex;
using skinspec::CVector;
using skinspec::SymbolCoeffs;

inline SymbolCoeffs coburn1() { return SymbolCoeffs::make({0.0, 1.0}, {1.0, 0.5}, {1.0, 0.5}); }
inline SymbolCoeffs coburn2() { return SymbolCoeffs::make({0.0, 1.0}, {1.0, 2.0}, {1.0, 2.0}); }

// Laplace expansion along the first row. Exponential cost, fine for k <= 6.
inline Complex cofactor_det(const CMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1.0;
  if (n == 1) return m(0, 0);
  Complex total = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    if (m(0, col) == Complex{}) continue;
    CMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t jj = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == col) continue;
        minor(i - 1, jj++) = m(i, j);
      }
    }
    const double sign = (col % 2 == 0) ? 1.0 : -1.0;
    total += sign * m(0, col) * cofactor_det(minor);
  }
  return total;
}

// Entry-by-entry rebuild of the symbol from its definition, independent of
// build_blocks: the k x k matrix whose (i, j) entry collects every
// coefficient of the infinite operator that couples row i of one cell with
// column j of the cell m steps further along, weighted by z^{-m}.
inline CMatrix symbol_oracle(const SymbolCoeffs& s, Complex z) {
  const std::size_t k = s.k;
  CMatrix f(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t row = k + i;  // a row away from the boundary
    const auto add = [&](std::size_t col, Complex value) {
      const long long cell = static_cast<long long>(col / k) - 1;
      f(i, col % k) += value * std::pow(z, static_cast<double>(-cell));
    };
    add(row - 1, s.c[(row - 1) % k]);
    add(row, s.a[row % k]);
    add(row + 1, s.b[row % k]);
  }
  return f;
}

inline CMatrix multiply(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, l) * b(l, j);
    }
  }
  return out;
}

inline CMatrix adjoint(const CMatrix& a) {
  CMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  }
  return out;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

  Complex polar(double r_lo, double r_hi) {
    return std::polar(uniform(r_lo, r_hi), uniform(-std::numbers::pi, std::numbers::pi));
  }

  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }

  CMatrix matrix(std::size_t rows, std::size_t cols) {
    CMatrix m(rows, cols);
    for (auto& e : m.entries()) e = Complex(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
    return m;
  }

  SymbolCoeffs symbol(std::size_t k) {
    CVector a(k), b(k), c(k);
    for (std::size_t i = 0; i < k; ++i) {
      a[i] = polar(0.0, 2.0);
      b[i] = polar(0.5, 2.0);
      c[i] = polar(0.5, 2.0);
    }
    return SymbolCoeffs::make(a, b, c);
  }

 private:
  std::mt19937_64 engine_;
};

inline double max_entry_diff(const CMatrix& a, const CMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return worst;
}

inline double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("skinspec_test_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace testing
