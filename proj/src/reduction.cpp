#include "svp/reduction.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>

namespace svp {

namespace {

constexpr double kLovaszSlack = 1e-9; // certification slack of the fp steering
constexpr std::uint64_t kMaxSwaps = 50'000'000ULL;

const SvpOracle &resolve(const SvpOracle &oracle) {
  static const SvpOracle fallback = make_enum_oracle();
  return oracle ? oracle : fallback;
}

/// Apply U (r x r) to rows start..start+r-1 of b.
void apply_to_rows(Basis &b, std::size_t start, const IntMat &u) {
  const std::size_t r = u.rows(), d = b.dim();
  IntMat block(r, d);
  Int tmp;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k) {
      const Int &c = u(i, k);
      if (c == 0)
        continue;
      for (std::size_t j = 0; j < d; ++j) {
        tmp = c * b.rows(start + k, j);
        block(i, j) += tmp;
      }
    }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < d; ++j)
      b.rows(start + i, j) = block(i, j);
}

/// Floating LLL engine over an exactly maintained integer Gram matrix.
/// Gram-Schmidt rows are recomputed lazily from the exact Gram, so only
/// rows at or below the working index are ever trusted.
class LllEngine {
public:
  LllEngine(Basis &b, double delta) : b_(b), n_(b.rank()), delta_(delta) {
    g_ = gram(b_);
    // All floating steering runs on the Gram scaled down by 2^scale_ so
    // integer entries far beyond the double range stay representable.
    // Every Lovasz / size-reduction decision is a ratio, so the scale
    // cancels; Cauchy-Schwarz keeps |G(i,j)| <= max G(i,i), and size
    // reduction never grows the diagonal, so no scaled read overflows.
    for (std::size_t i = 0; i < n_; ++i) {
      long e = 0;
      (void)mpz_get_d_2exp(&e, g_(i, i).get_mpz_t());
      scale_ = std::max(scale_, e);
    }
    mu_.assign(n_ * n_, 0.0);
    r_.assign(n_ * n_, 0.0);
    bsq_.assign(n_, 0.0);
  }

  LllStats run() {
    if (n_ <= 1) {
      valid_ = 0;
      return stats_;
    }
    std::size_t k = 1;
    while (k < n_) {
      ensure_valid(k + 1);
      reduce_row(k);
      if (bsq_[k] >=
          (delta_ - mu(k, k - 1) * mu(k, k - 1)) * bsq_[k - 1] * (1.0 - kLovaszSlack)) {
        ++k;
      } else {
        swap_rows(k);
        if (++stats_.swaps > kMaxSwaps)
          throw NumericalError("lll: swap budget exhausted — basis is "
                               "numerically hopeless");
        k = std::max<std::size_t>(k - 1, 1);
      }
    }
    return stats_;
  }

private:
  double &mu(std::size_t i, std::size_t j) { return mu_[i * n_ + j]; }
  double &rr(std::size_t i, std::size_t j) { return r_[i * n_ + j]; }

  double scaled(const Int &z) const {
    long e = 0;
    double m = mpz_get_d_2exp(&e, z.get_mpz_t());
    const long sh = e - scale_;
    if (sh < -1100) // below denormal range: an exact zero is fine here
      return 0.0;
    return std::ldexp(m, static_cast<int>(sh));
  }

  void compute_row(std::size_t i) {
    for (std::size_t j = 0; j < i; ++j) {
      double v = scaled(g_(i, j));
      for (std::size_t l = 0; l < j; ++l)
        v -= rr(i, l) * mu(j, l);
      rr(i, j) = v;
      mu(i, j) = v / bsq_[j];
    }
    double v = scaled(g_(i, i));
    for (std::size_t l = 0; l < i; ++l)
      v -= rr(i, l) * mu(i, l);
    bsq_[i] = v;
    rr(i, i) = v;
    if (!(v > 0.0))
      throw NumericalError("lll: Gram-Schmidt norm collapsed (dependent "
                           "rows or precision loss)");
    mu(i, i) = 1.0;
  }

  void ensure_valid(std::size_t upto) {
    while (valid_ < upto)
      compute_row(valid_++);
  }

  /// b_k -= q * b_j together with the exact Gram update.
  void row_op(std::size_t k, std::size_t j, const Int &q) {
    Int tmp;
    // G(k,k) first: it needs the old G(k,j).
    tmp = 2 * q * g_(k, j);
    g_(k, k) -= tmp;
    tmp = q * q * g_(j, j);
    g_(k, k) += tmp;
    for (std::size_t l = 0; l < n_; ++l) {
      if (l == k)
        continue;
      tmp = q * g_(j, l);
      g_(k, l) -= tmp;
      g_(l, k) = g_(k, l);
    }
    for (std::size_t c = 0; c < b_.dim(); ++c) {
      tmp = q * b_.rows(j, c);
      b_.rows(k, c) -= tmp;
    }
  }

  void reduce_row(std::size_t k) {
    for (std::size_t jj = k; jj-- > 0;) {
      const double m = mu(k, jj);
      if (std::abs(m) <= 0.5)
        continue;
      if (std::abs(m) > 1e15)
        throw NumericalError("lll: coefficient out of double range");
      const long qv = std::llround(m);
      row_op(k, jj, Int(qv));
      const double qd = static_cast<double>(qv);
      for (std::size_t l = 0; l < jj; ++l)
        mu(k, l) -= qd * mu(jj, l);
      mu(k, jj) -= qd;
      ++stats_.size_reductions;
      // Rows above k (none are valid here) would now be stale.
      valid_ = std::min(valid_, k + 1);
    }
  }

  void swap_rows(std::size_t k) {
    b_.rows.swap_rows(k - 1, k);
    g_.swap_rows(k - 1, k);
    for (std::size_t i = 0; i < n_; ++i)
      std::swap(g_(i, k - 1), g_(i, k));
    valid_ = std::min(valid_, k - 1);
  }

  Basis &b_;
  std::size_t n_;
  double delta_;
  IntMat g_;
  long scale_ = 0;
  std::vector<double> mu_, r_, bsq_;
  std::size_t valid_ = 0;
  LllStats stats_;
};

} // namespace

Int round_rat(const Rat &x) {
  // floor(x + 1/2) = floor((2p + q) / (2q)) with q > 0 canonical.
  Int num = 2 * x.get_num() + x.get_den();
  Int den = 2 * x.get_den();
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

void size_reduce(Basis &b) {
  const std::size_t n = b.rank(), d = b.dim();
  if (n <= 1)
    return;
  GsoResult s = gso(b);
  Int q, tmp;
  Rat qd, rtmp;
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t j = k; j-- > 0;) {
      q = round_rat(s.mu(k, j));
      if (q == 0)
        continue;
      for (std::size_t c = 0; c < d; ++c) {
        tmp = q * b.rows(j, c);
        b.rows(k, c) -= tmp;
      }
      qd = q;
      for (std::size_t l = 0; l < j; ++l) {
        rtmp = qd * s.mu(j, l);
        s.mu(k, l) -= rtmp;
      }
      s.mu(k, j) -= qd;
    }
}

LllStats lll(Basis &b, double delta) {
  if (!(delta > 0.25 && delta < 1.0))
    throw ParameterError("lll: delta must lie in (1/4, 1)");
  if (b.rank() == 0)
    throw ParameterError("lll: empty basis");
  LllEngine engine(b, delta);
  LllStats stats = engine.run();
  // The floating pass already size-reduces; one exact pass settles
  // coefficients that sat numerically on the 1/2 boundary.
  size_reduce(b);
  return stats;
}

RatMat projected_gram(const Basis &b, std::size_t i, std::size_t count) {
  const std::size_t n = b.rank();
  if (i + count > n || count == 0)
    throw ParameterError("projected_gram: block out of range");
  const RatMat g = to_rat(gram(b));
  if (i == 0) {
    RatMat s(count, count);
    for (std::size_t a = 0; a < count; ++a)
      for (std::size_t c = 0; c < count; ++c)
        s(a, c) = g(a, c);
    return s;
  }
  RatMat g11(i, i), g12(i, count), g21(count, i);
  for (std::size_t a = 0; a < i; ++a) {
    for (std::size_t c = 0; c < i; ++c)
      g11(a, c) = g(a, c);
    for (std::size_t c = 0; c < count; ++c)
      g12(a, c) = g(a, i + c);
  }
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t c = 0; c < i; ++c)
      g21(a, c) = g(i + a, c);
  const RatMat corr = mul(mul(g21, rat_inverse(std::move(g11))), g12);
  RatMat s(count, count);
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t c = 0; c < count; ++c)
      s(a, c) = g(i + a, i + c) - corr(a, c);
  return s;
}

IntMat unimodular_completion(const std::vector<Int> &x) {
  const std::size_t n = x.size();
  if (n == 0)
    throw ParameterError("unimodular_completion: empty vector");
  std::vector<Int> y = x;
  IntMat m = IntMat::identity(n);
  // Column-reduce y to e_1 while maintaining m = (product of ops)^{-1};
  // column ops on y map to inverse row ops on m, so at the end the first
  // row of m equals x.
  auto nonzero_count = [&] {
    std::size_t c = 0;
    for (const Int &v : y)
      if (v != 0)
        ++c;
    return c;
  };
  Int q, tmp;
  while (nonzero_count() > 1) {
    // Pivot: smallest nonzero magnitude.
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (y[i] == 0)
        continue;
      if (p == n || cmp(abs(y[i]), abs(y[p])) < 0)
        p = i;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (j == p || y[j] == 0)
        continue;
      // y_j -= q * y_p  (column op)  <->  row_p += q * row_j on m.
      mpz_tdiv_q(q.get_mpz_t(), y[j].get_mpz_t(), y[p].get_mpz_t());
      if (q == 0)
        continue;
      tmp = q * y[p];
      y[j] -= tmp;
      for (std::size_t c = 0; c < n; ++c) {
        tmp = q * m(j, c);
        m(p, c) += tmp;
      }
    }
  }
  std::size_t p = 0;
  while (p < n && y[p] == 0)
    ++p;
  if (p == n || abs(y[p]) != 1)
    throw ParameterError("unimodular_completion: vector is not primitive");
  if (p != 0)
    m.swap_rows(0, p); // column swap on y <-> row swap on m
  if (y[p] < 0)
    for (std::size_t c = 0; c < n; ++c)
      m(0, c) = -m(0, c);
  for (std::size_t c = 0; c < n; ++c)
    if (m(0, c) != x[c])
      throw NumericalError("unimodular_completion: internal invariant lost");
  return m;
}

void hkz(Basis &b, const SvpOracle &oracle_in) {
  const SvpOracle &oracle = resolve(oracle_in);
  const std::size_t n = b.rank();
  if (n == 0)
    throw ParameterError("hkz: empty basis");
  lll(b);
  for (std::size_t i = 0; i < n; ++i) {
    const RatMat s = projected_gram(b, i, n - i);
    OracleResult res = oracle(s);
    if (!res.found)
      throw NumericalError("hkz: oracle failed on a positive definite form");
    if (res.norm_sq < s(0, 0)) {
      apply_to_rows(b, i, unimodular_completion(res.x));
      size_reduce(b); // keeps later projected blocks well-conditioned
    }
  }
  size_reduce(b);
}

void pseudo_hkz(Basis &b, const SvpOracle &oracle) {
  const std::size_t n = b.rank(), d = b.dim();
  if (n == 0)
    throw ParameterError("pseudo_hkz: empty basis");
  lll(b);
  if (n >= 2) {
    Basis head(n - 1, d);
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = 0; j < d; ++j)
        head.rows(i, j) = b.rows(i, j);
    hkz(head, oracle);
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = 0; j < d; ++j)
        b.rows(i, j) = head.rows(i, j);
    size_reduce(b); // does not move any Gram-Schmidt vector
  }
}

BkzStats bkz(Basis &b, std::size_t beta, const SvpOracle &oracle_in,
             double delta, std::size_t max_tours) {
  if (beta < 2)
    throw ParameterError("bkz: block size must be >= 2");
  const SvpOracle &oracle = resolve(oracle_in);
  const std::size_t n = b.rank();
  if (n == 0)
    throw ParameterError("bkz: empty basis");
  BkzStats stats;
  lll(b, delta);
  if (n == 1)
    return stats;
  for (std::size_t tour = 0; tour < max_tours; ++tour) {
    std::uint64_t inserted = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const std::size_t count = std::min(beta, n - i);
      const RatMat s = projected_gram(b, i, count);
      OracleResult res = oracle(s);
      if (!res.found)
        throw NumericalError("bkz: oracle failed on a positive definite form");
      if (res.norm_sq < s(0, 0)) {
        apply_to_rows(b, i, unimodular_completion(res.x));
        lll(b, delta);
        ++inserted;
      }
    }
    ++stats.tours;
    stats.insertions += inserted;
    if (inserted == 0)
      break;
  }
  return stats;
}

double hkz_defect_bound_log2(std::size_t n) {
  if (n == 0)
    throw ParameterError("hkz_defect_bound: rank must be positive");
  double acc = 0.0;
  for (std::size_t i = 1; i <= n; ++i)
    acc += 0.5 * std::log2(static_cast<double>(i) + 3.0) - 1.0;
  const double nd = static_cast<double>(n);
  acc += 0.5 * nd * std::log2(nd / 8.0 + 6.0 / 5.0);
  return acc;
}

double hkz_defect_bound(std::size_t n) {
  return std::exp2(hkz_defect_bound_log2(n));
}

Basis prepare_instance(std::size_t d, std::size_t k, const Int &q,
                       std::size_t n, std::uint64_t seed) {
  if (n == 0 || n > d)
    throw ParameterError("prepare_instance: need 1 <= n <= d");
  Basis full = sample_qary(d, k, q, seed);
  lll(full);
  Basis out(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j)
      out.rows(i, j) = full.rows(i, j);
  return out;
}

namespace {

/// Exact power of two as a rational, either sign of exponent.
Rat exp2_rat(long e) {
  Rat r(1);
  if (e >= 0)
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(e));
  else
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-e));
  return r;
}

/// Lemma-1 coefficient box at radius a: m_i = floor(a * ||dual row i||),
/// with a hair of upward slack so exact integer products are not lost to
/// the final double rounding.
std::vector<long> lemma1_box(const std::vector<double> &dual_norms, double a) {
  std::vector<long> m(dual_norms.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = static_cast<long>(std::floor(a * dual_norms[i] * (1.0 + 1e-12)));
  return m;
}

int lemma1_qubits(const std::vector<long> &m) {
  int total = 0;
  for (long v : m)
    if (v >= 1)
      total += static_cast<int>(std::bit_width(static_cast<unsigned long>(2 * v)));
  return total;
}

Basis algorithm1_rec(const Basis &input, AlgOneStats &st, double C,
                     std::uint64_t node_budget) {
  const std::size_t n = input.rank(), d = input.dim();
  if (n <= 1) {
    Basis out = input;
    return out;
  }

  // Lines 2-4: pseudo-HKZ-reduce the dual.  The dual has one global
  // denominator; all reduction happens on its integer numerator matrix
  // (rescaling a lattice uniformly commutes with every reduction step).
  ScaledBasis dual = scaled_from_rat(dual_basis(input));
  lll(dual.b);
  if (n >= 2) {
    Basis head(n - 1, d);
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = 0; j < d; ++j)
        head.rows(i, j) = dual.b.rows(i, j);
    head = algorithm1_rec(head, st, C, node_budget);
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = 0; j < d; ++j)
        dual.b.rows(i, j) = head.rows(i, j);
  }

  // Line 5: back to the primal.  dual(D/s) = s * dual(D) is exactly the
  // original lattice, so the result must be integral.
  RatMat primal_rat = scale(dual_basis(Basis(dual.b.rows)), Rat(dual.denom));
  Basis bb(to_int_exact(primal_rat));

  // Line 6: bounded enumeration of a shortest vector of L(bb) inside the
  // Lemma-1 coefficient box; the box never cuts away a ball point, so an
  // empty search means the radius undershot lambda_1 and must grow.
  //
  // Each projection level below scales the lattice by ||v||^2, so deep
  // recursion hands us integer entries far beyond the double range.  All
  // floating quantities of this level are therefore taken from the Gram
  // scaled by an exact power of two; the products a * ||dual row i|| and
  // the radius-versus-Gram comparisons are invariant under that scaling
  // and the enumerated coefficient vectors are unchanged.
  const IntMat g_int = gram(bb);
  long scale2 = 0; // 2^scale2 ~ the largest squared row norm
  for (std::size_t i = 0; i < n; ++i) {
    long e = 0;
    (void)mpz_get_d_2exp(&e, g_int(i, i).get_mpz_t());
    scale2 = std::max(scale2, e);
  }
  const Rat down = exp2_rat(-scale2);
  RatMat gb = to_rat(g_int);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      gb(i, j) *= down;
  const IntMat dual_gram = gram(Basis(dual.b.rows));
  const Rat up = exp2_rat(scale2); // dual lengths scale inversely
  std::vector<double> dual_norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rat nsq(dual_gram(i, i), dual.denom * dual.denom);
    nsq.canonicalize();
    nsq *= up;
    dual_norms[i] = std::sqrt(nsq.get_d());
  }
  const double gh = gaussian_heuristic_gram(gb);
  double min_row_d = gb(0, 0).get_d();
  for (std::size_t i = 1; i < n; ++i)
    min_row_d = std::min(min_row_d, gb(i, i).get_d());

  std::optional<EnumResult> v;
  double factor = C;
  for (;;) {
    const double a = factor * gh;
    const std::vector<long> box = lemma1_box(dual_norms, a);
    st.max_enum_qubits = std::max(st.max_enum_qubits, lemma1_qubits(box));
    ++st.enum_calls;
    st.max_radius_factor = std::max(st.max_radius_factor, factor);
    const Rat a_sq = Rat(a) * Rat(a);
    v = shortest_in_box(gb, a_sq, box, node_budget);
    if (v)
      break;
    if (a * a >= min_row_d * (1.0 + 1e-6))
      throw NumericalError("algorithm1: ball contains a basis row but the "
                           "search came back empty");
    ++st.escalations;
    factor *= 2.0;
  }

  // Line 7: extract a basis with v first.  The coefficient vector of a
  // minimal vector is primitive, so a unimodular completion followed by
  // LLL plays the role of reducing the dependent system {v, b_1..b_n}:
  // LLL can never swap v out of front, since that would require a basis
  // vector strictly shorter than lambda_1.
  std::vector<Int> coeff(v->x.begin(), v->x.end());
  apply_to_rows(bb, 0, unimodular_completion(coeff));
  lll(bb);

  // Line 8: project b_2..b_n orthogonally to v, scaled by ||v||^2 to stay
  // integral: p_j = <v,v> b_j - <b_j,v> v generates <v,v> * pi(L).
  Int vv = row_dot(bb.rows, 0, bb.rows, 0);
  Basis proj(n - 1, d);
  Int c, tmp;
  for (std::size_t j = 1; j < n; ++j) {
    c = row_dot(bb.rows, j, bb.rows, 0);
    for (std::size_t col = 0; col < d; ++col) {
      tmp = vv * bb.rows(j, col);
      proj.rows(j - 1, col) = tmp;
      tmp = c * bb.rows(0, col);
      proj.rows(j - 1, col) -= tmp;
    }
  }

  // Line 9: HKZ-reduce the projected lattice recursively.
  Basis hproj = algorithm1_rec(proj, st, C, node_budget);

  // Recover the unimodular transform T with hproj = T * proj, and apply
  // the same T to the unprojected rows.
  const RatMat pmat = to_rat(proj.rows);
  const RatMat t_rat = mul(mul(to_rat(hproj.rows), transpose(pmat)),
                           rat_inverse(gram_rat(pmat)));
  const IntMat t = to_int_exact(t_rat);

  Basis out(n, d);
  for (std::size_t col = 0; col < d; ++col)
    out.rows(0, col) = bb.rows(0, col);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    // w = sum_k T(j,k) * b_{k+1}, then line 10: subtract the integer part
    // so the offset along v lands in (-1/2, 1/2].
    std::vector<Int> w(d, Int(0));
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const Int &tc = t(j, k);
      if (tc == 0)
        continue;
      for (std::size_t col = 0; col < d; ++col) {
        tmp = tc * bb.rows(k + 1, col);
        w[col] += tmp;
      }
    }
    Int wv = 0;
    for (std::size_t col = 0; col < d; ++col) {
      tmp = w[col] * bb.rows(0, col);
      wv += tmp;
    }
    // alpha = wv/vv - round;  take k = ceil(wv/vv - 1/2).
    Int num = 2 * wv - vv;
    Int den = 2 * vv;
    Int shift;
    mpz_cdiv_q(shift.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    for (std::size_t col = 0; col < d; ++col) {
      tmp = shift * bb.rows(0, col);
      out.rows(j + 1, col) = w[col] - tmp;
    }
  }
  return out;
}

} // namespace

Basis algorithm1_dual_hkz(const Basis &b, AlgOneStats *stats, double C,
                          std::uint64_t node_budget) {
  if (b.rank() == 0)
    throw ParameterError("algorithm1_dual_hkz: empty basis");
  if (!(C >= 1.0))
    throw ParameterError("algorithm1_dual_hkz: radius factor C must be >= 1");
  AlgOneStats local;
  AlgOneStats &st = stats ? *stats : local;
  st = AlgOneStats{};
  st.max_radius_factor = C;
  return algorithm1_rec(b, st, C, node_budget);
}

} // namespace svp
