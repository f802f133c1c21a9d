/* matrix.hpp — dense row-major matrices over exact arithmetic types.
 *
 * All lattice bookkeeping that decides correctness (Gram matrices, duals,
 * determinants, unimodular transforms) is done over GMP integers and
 * rationals; doubles only ever steer searches, never certify results.
 */
#pragma once

#include <cstddef>
#include <gmpxx.h>
#include <optional>
#include <string>
#include <vector>

#include "svp/common.hpp"

namespace svp {

using Int = mpz_class;
using Rat = mpq_class;

template <class T> class Mat {
public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}
  Mat(std::size_t rows, std::size_t cols, const T &fill)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return a_.empty(); }

  T &operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  T *row(std::size_t i) { return a_.data() + i * cols_; }
  const T *row(std::size_t i) const { return a_.data() + i * cols_; }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j)
      return;
    for (std::size_t k = 0; k < cols_; ++k)
      std::swap((*this)(i, k), (*this)(j, k));
  }

  bool operator==(const Mat &o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Mat &o) const { return !(*this == o); }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;

// ---------------------------------------------------------------------------
// Basic algebra
// ---------------------------------------------------------------------------

template <class T> Mat<T> transpose(const Mat<T> &m) {
  Mat<T> t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      t(j, i) = m(i, j);
  return t;
}

template <class T> Mat<T> mul(const Mat<T> &a, const Mat<T> &b) {
  if (a.cols() != b.rows())
    throw ParameterError("matrix product: inner dimensions disagree");
  Mat<T> c(a.rows(), b.cols());
  T acc, tmp;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T &aik = a(i, k);
      if (aik == 0)
        continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        tmp = aik * b(k, j);
        c(i, j) += tmp;
      }
    }
  return c;
}

inline RatMat to_rat(const IntMat &m) {
  RatMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(i, j) = m(i, j);
  return r;
}

/// Multiply a rational matrix by a scalar.
inline RatMat scale(const RatMat &m, const Rat &s) {
  RatMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(i, j) = m(i, j) * s;
  return r;
}

/// True if every entry is an integer.
bool is_integral(const RatMat &m);

/// Rational matrix -> integer matrix; throws ParameterError on any
/// non-integer entry.
IntMat to_int_exact(const RatMat &m);

/// Least common multiple of all entry denominators (>= 1).
Int common_denominator(const RatMat &m);

// ---------------------------------------------------------------------------
// Exact elimination
// ---------------------------------------------------------------------------

/// Determinant of a square integer matrix by fraction-free Bareiss
/// elimination (all intermediate divisions are exact).
Int det_bareiss(IntMat m);

/// Exact inverse of a square rational matrix via Gauss-Jordan with
/// partial pivoting.  Throws ParameterError if the matrix is singular.
RatMat rat_inverse(RatMat m);

/// Determinant of a square rational matrix (global-denominator scaling
/// plus Bareiss on the integer part).
Rat rat_det(const RatMat &m);

// ---------------------------------------------------------------------------
// Small conveniences shared across modules
// ---------------------------------------------------------------------------

/// <row i of a, row j of b> over the common column count.
inline Int row_dot(const IntMat &a, std::size_t i, const IntMat &b,
                   std::size_t j) {
  Int acc = 0, tmp;
  for (std::size_t k = 0; k < a.cols(); ++k) {
    tmp = a(i, k) * b(j, k);
    acc += tmp;
  }
  return acc;
}

/// log2 of a positive rational, exact enough for radius schedules
/// (uses the top 53 bits of numerator and denominator).
double log2_rat(const Rat &x);

/// Human-readable rendering "p/q" (or "p" when q == 1).
std::string rat_to_string(const Rat &x);

/// Parse "p/q" or "p"; throws ParameterError on malformed input.
Rat rat_from_string(const std::string &s);

} // namespace svp
