#pragma once

// Small dense Gaussian elimination over exact rationals or doubles.

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <vector>

namespace ugkms::linalg {

template <class T>
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, T(0)) {}
  T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

inline bool negligible(const mpq_class& x) { return sgn(x) == 0; }
inline bool negligible(double x) { return std::fabs(x) <= 1e-12; }

inline double magnitude(const mpq_class& x) { return std::fabs(x.get_d()); }
inline double magnitude(double x) { return std::fabs(x); }

/// In-place reduced row echelon form; returns the pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols && row < a.rows; ++col) {
    std::size_t best = a.rows;
    double best_mag = 0;
    for (std::size_t i = row; i < a.rows; ++i) {
      if (negligible(a(i, col))) continue;
      double mag = magnitude(a(i, col));
      if (best == a.rows || mag > best_mag) {
        best = i;
        best_mag = mag;
      }
    }
    if (best == a.rows) {
      for (std::size_t i = row; i < a.rows; ++i) a(i, col) = T(0);
      continue;
    }
    for (std::size_t j = 0; j < a.cols; ++j) std::swap(a(row, j), a(best, j));
    T inv = T(1) / a(row, col);
    for (std::size_t j = 0; j < a.cols; ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows; ++i) {
      if (i == row || negligible(a(i, col))) continue;
      T factor = a(i, col);
      for (std::size_t j = 0; j < a.cols; ++j) a(i, j) -= factor * a(row, j);
      a(i, col) = T(0);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> a) {
  auto pivots = rref(a);
  std::vector<bool> is_pivot(a.cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < a.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(a.cols, T(0));
    v[free] = T(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
std::size_t rank(Matrix<T> a) {
  return rref(a).size();
}

/// Unique solution of a x = b for square nonsingular a.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b) {
  Matrix<T> aug(a.rows, a.cols + 1);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) aug(i, j) = a(i, j);
    aug(i, a.cols) = b[i];
  }
  auto pivots = rref(aug);
  if (pivots.size() != a.cols) return std::nullopt;
  for (auto p : pivots) {
    if (p == a.cols) return std::nullopt;
  }
  std::vector<T> x(a.cols, T(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols);
  return x;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
  std::size_t n = a.rows;
  if (n == 0) return Matrix<T>();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = T(1);
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<T> out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  }
  return out;
}

}  // namespace ugkms::linalg
