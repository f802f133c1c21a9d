#include "svp/lattice.hpp"

#include <cmath>

#include "svp/rng.hpp"

namespace svp {

IntMat gram(const Basis &b) {
  const std::size_t n = b.rank();
  IntMat g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      g(i, j) = row_dot(b.rows, i, b.rows, j);
      if (i != j)
        g(j, i) = g(i, j);
    }
  return g;
}

RatMat gram_rat(const RatMat &rows) {
  const std::size_t n = rows.rows();
  RatMat g(n, n);
  Rat acc, tmp;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      acc = 0;
      for (std::size_t k = 0; k < rows.cols(); ++k) {
        tmp = rows(i, k) * rows(j, k);
        acc += tmp;
      }
      g(i, j) = acc;
      if (i != j)
        g(j, i) = acc;
    }
  return g;
}

RatMat dual_basis(const Basis &b) {
  const std::size_t n = b.rank(), d = b.dim();
  if (n == 0 || n > d)
    throw ParameterError("dual_basis: need 1 <= rank <= dim");
  if (n == d) {
    // Full rank: Bhat = (B B^T)^{-1} B = B^{-T}.
    return transpose(rat_inverse(to_rat(b.rows)));
  }
  const IntMat g = gram(b);
  if (det_bareiss(g) == 0)
    throw ParameterError("dual_basis: rows are linearly dependent");
  return mul(rat_inverse(to_rat(g)), to_rat(b.rows));
}

GsoResult gso(const Basis &b) {
  const std::size_t n = b.rank(), d = b.dim();
  GsoResult r;
  r.bstar = to_rat(b.rows);
  r.mu = RatMat::identity(n);
  r.bstar_sq.resize(n);
  Rat acc, tmp;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (r.bstar_sq[j] == 0)
        throw ParameterError("gso: rows are linearly dependent");
      acc = 0;
      for (std::size_t k = 0; k < d; ++k) {
        tmp = b.rows(i, k) * r.bstar(j, k);
        acc += tmp;
      }
      acc /= r.bstar_sq[j];
      r.mu(i, j) = acc;
      for (std::size_t k = 0; k < d; ++k) {
        tmp = acc * r.bstar(j, k);
        r.bstar(i, k) -= tmp;
      }
    }
    acc = 0;
    for (std::size_t k = 0; k < d; ++k) {
      tmp = r.bstar(i, k) * r.bstar(i, k);
      acc += tmp;
    }
    r.bstar_sq[i] = acc;
  }
  if (n > 0 && r.bstar_sq[n - 1] == 0)
    throw ParameterError("gso: rows are linearly dependent");
  return r;
}

Int volume_sq(const Basis &b) { return det_bareiss(gram(b)); }

double volume(const Basis &b) {
  const Int v2 = volume_sq(b);
  if (v2 == 0)
    return 0.0;
  return std::exp2(0.5 * log2_rat(Rat(v2)));
}

double gh_from_log2_volsq(std::size_t n, double log2_volsq, double C) {
  if (n == 0)
    throw ParameterError("gaussian_heuristic: rank must be positive");
  const double nn = static_cast<double>(n);
  return C * std::sqrt(nn / (2.0 * M_PI * M_E)) *
         std::exp2(log2_volsq / (2.0 * nn));
}

double gaussian_heuristic(const Basis &b, double C) {
  const Int v2 = volume_sq(b);
  if (v2 == 0)
    throw ParameterError("gaussian_heuristic: rank-deficient basis");
  return gh_from_log2_volsq(b.rank(), log2_rat(Rat(v2)), C);
}

double gaussian_heuristic_gram(const RatMat &g, double C) {
  const Rat d = rat_det(g);
  if (sgn(d) <= 0)
    throw ParameterError("gaussian_heuristic_gram: Gram is not positive definite");
  return gh_from_log2_volsq(g.rows(), log2_rat(d), C);
}

double orthogonality_defect_log2(const Basis &b) {
  const IntMat g = gram(b);
  const Int v2 = det_bareiss(g);
  if (v2 == 0)
    throw ParameterError("orthogonality_defect: rank-deficient basis");
  double acc = 0.0;
  for (std::size_t i = 0; i < b.rank(); ++i)
    acc += 0.5 * log2_rat(Rat(g(i, i)));
  return acc - 0.5 * log2_rat(Rat(v2));
}

double orthogonality_defect(const Basis &b) {
  return std::exp2(orthogonality_defect_log2(b));
}

Basis sample_qary(std::size_t d, std::size_t k, const Int &q,
                  std::uint64_t seed) {
  if (d == 0 || k > d)
    throw ParameterError("sample_qary: need 0 <= k <= d, d >= 1");
  if (q < 2)
    throw ParameterError("sample_qary: modulus q must be >= 2");
  if (!q.fits_ulong_p())
    throw ParameterError("sample_qary: modulus out of sampling range");
  Rng rng(seed);
  const std::uint64_t qv = q.get_ui();
  Basis b(d, d);
  for (std::size_t i = 0; i < d - k; ++i) {
    b.rows(i, i) = 1;
    for (std::size_t j = 0; j < k; ++j)
      b.rows(i, d - k + j) = static_cast<unsigned long>(rng.next_below(qv));
  }
  for (std::size_t j = 0; j < k; ++j)
    b.rows(d - k + j, d - k + j) = q;
  return b;
}

} // namespace svp
