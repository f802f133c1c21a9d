#include "svp/matrix.hpp"

#include <cmath>
#include <cstdlib>

namespace svp {

bool is_integral(const RatMat &m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j).get_den() != 1)
        return false;
  return true;
}

IntMat to_int_exact(const RatMat &m) {
  IntMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1)
        throw ParameterError("to_int_exact: entry " + rat_to_string(m(i, j)) +
                             " is not an integer");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

Int common_denominator(const RatMat &m) {
  Int l = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den().get_mpz_t());
  return l;
}

Int det_bareiss(IntMat m) {
  if (m.rows() != m.cols())
    throw ParameterError("det_bareiss: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0)
    return 1;
  Int prev = 1;
  int sign = 1;
  Int num, sub;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0)
        ++p;
      if (p == n)
        return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        num = m(k, k) * m(i, j);
        sub = m(i, k) * m(k, j);
        num -= sub;
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    for (std::size_t i = k + 1; i < n; ++i)
      m(i, k) = 0;
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

RatMat rat_inverse(RatMat m) {
  if (m.rows() != m.cols())
    throw ParameterError("rat_inverse: matrix is not square");
  const std::size_t n = m.rows();
  RatMat inv = RatMat::identity(n);
  Rat factor, tmp;
  for (std::size_t k = 0; k < n; ++k) {
    // Partial pivot: largest |entry| keeps intermediate fractions tame.
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (cmp(abs(m(i, k)), abs(m(p, k))) > 0)
        p = i;
    if (m(p, k) == 0)
      throw ParameterError("rat_inverse: matrix is singular");
    m.swap_rows(k, p);
    inv.swap_rows(k, p);
    const Rat pivot = m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) /= pivot;
      inv(k, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0)
        continue;
      factor = m(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        tmp = factor * m(k, j);
        m(i, j) -= tmp;
        tmp = factor * inv(k, j);
        inv(i, j) -= tmp;
      }
    }
  }
  return inv;
}

Rat rat_det(const RatMat &m) {
  if (m.rows() != m.cols())
    throw ParameterError("rat_det: matrix is not square");
  const std::size_t n = m.rows();
  const Int den = common_denominator(m);
  IntMat scaled(n, n);
  Rat t;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      t = m(i, j) * den;
      scaled(i, j) = t.get_num();
    }
  Int dpow;
  mpz_pow_ui(dpow.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(n));
  Rat r(det_bareiss(std::move(scaled)), dpow);
  r.canonicalize();
  return r;
}

double log2_rat(const Rat &x) {
  if (sgn(x) <= 0)
    throw ParameterError("log2_rat: argument must be positive");
  long en = 0, ed = 0;
  const double dn = mpz_get_d_2exp(&en, x.get_num().get_mpz_t());
  const double dd = mpz_get_d_2exp(&ed, x.get_den().get_mpz_t());
  return (std::log2(dn) + static_cast<double>(en)) -
         (std::log2(dd) + static_cast<double>(ed));
}

std::string rat_to_string(const Rat &x) {
  if (x.get_den() == 1)
    return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat rat_from_string(const std::string &s) {
  if (s.empty())
    throw ParameterError("rat_from_string: empty string");
  Rat r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    throw ParameterError("rat_from_string: cannot parse '" + s + "'");
  if (r.get_den() == 0)
    throw ParameterError("rat_from_string: zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

} // namespace svp
