#include "svp/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "svp/lattice.hpp"

namespace svp {

namespace {

constexpr double kRadiusSlack = 1e-9;

/// Double-precision Gram-Schmidt data derived from an exact Gram matrix:
/// mu(i,j) for j < i and bsq[i] = ||bstar_i||^2.
struct DoubleGso {
  std::size_t n = 0;
  std::vector<double> mu;  // row-major n x n, lower triangle used
  std::vector<double> r;   // scratch r(i,j) = <b_i, bstar_j>
  std::vector<double> bsq;

  double &muv(std::size_t i, std::size_t j) { return mu[i * n + j]; }
  double muv(std::size_t i, std::size_t j) const { return mu[i * n + j]; }
};

DoubleGso gso_from_gram(const RatMat &g) {
  const std::size_t n = g.rows();
  DoubleGso s;
  s.n = n;
  s.mu.assign(n * n, 0.0);
  s.r.assign(n * n, 0.0);
  s.bsq.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double rij = g(i, j).get_d();
      for (std::size_t l = 0; l < j; ++l)
        rij -= s.r[i * n + l] * s.muv(j, l);
      s.r[i * n + j] = rij;
      s.muv(i, j) = rij / s.bsq[j];
    }
    double d = g(i, i).get_d();
    for (std::size_t l = 0; l < i; ++l)
      d -= s.r[i * n + l] * s.muv(i, l);
    s.r[i * n + i] = d;
    s.bsq[i] = d;
    if (!(d > 0.0))
      throw ParameterError("enumeration: Gram matrix is not numerically "
                           "positive definite (dependent rows?)");
    s.muv(i, i) = 1.0;
  }
  return s;
}

/// Exact quadratic form value x G x^T.
Rat form_value(const RatMat &g, const std::vector<long> &x) {
  const std::size_t n = g.rows();
  Rat acc = 0, tmp;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0)
      continue;
    tmp = g(i, i) * (x[i] * x[i]);
    acc += tmp;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (x[j] == 0)
        continue;
      tmp = g(i, j) * (2 * x[i] * x[j]);
      acc += tmp;
    }
  }
  return acc;
}

std::vector<Int> to_int_vec(const std::vector<long> &x) {
  std::vector<Int> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    v[i] = x[i];
  return v;
}

/// One level of the depth-first search.  Candidate values for x_i are
/// produced in order of increasing (x_i - center)^2 by keeping one
/// pointer per side of the center; each side is individually monotone in
/// the partial norm, so a side is closed the first time it leaves the
/// radius, and the level is exhausted when both sides are closed.
struct Level {
  double center = 0.0;
  double dist_above = 0.0; // accumulated partial norm of levels > i
  long lo = 0, hi = 0;     // box interval (already sign-restricted)
  long up = 0, down = 0;
  bool up_open = false, down_open = false;
  long value = 0; // currently assigned x_i
};

class TreeSearch {
public:
  TreeSearch(const RatMat &g, const std::optional<std::vector<long>> &box,
             std::uint64_t node_budget, bool minimize)
      : g_(g), n_(g.rows()), gso_(gso_from_gram(g)), budget_(node_budget),
        minimize_(minimize) {
    if (n_ == 0 || g.cols() != n_)
      throw ParameterError("enumeration: Gram matrix must be square and "
                           "non-empty");
    if (n_ > kMaxEnumRank)
      throw BudgetError("enumeration: rank " + std::to_string(n_) +
                        " exceeds the supported maximum " +
                        std::to_string(kMaxEnumRank));
    if (box) {
      if (box->size() != n_)
        throw ParameterError("enumeration: box length does not match rank");
      for (long m : *box)
        if (m < 0)
          throw ParameterError("enumeration: negative box bound");
      box_ = *box;
    }
    lv_.resize(n_);
    x_.assign(n_, 0);
    zero_above_.assign(n_, false);
  }

  /// Run with the exact squared radius; bound_d is the slacked double
  /// pruning bound.  In minimize mode the bound shrinks as better vectors
  /// appear and only the exact best is kept; in list mode every exact
  /// in-ball point is collected.
  void run(const Rat &radius_sq, double bound_d) {
    radius_sq_ = radius_sq;
    bound_d_ = bound_d;
    best_found_ = false;
    results_.clear();
    nodes_ = 0;

    std::size_t level = n_ - 1;
    enter_level(level, 0.0, true);
    for (;;) {
      long v;
      if (!next_candidate(level, v)) {
        if (++level == n_)
          return;
        continue;
      }
      lv_[level].value = v;
      x_[level] = v;
      if (level == 0) {
        handle_leaf();
        continue;
      }
      const double d = lv_[level].dist_above + step_cost(level, v);
      const std::size_t child = level - 1;
      const bool zero_above =
          zero_above_entering(level) && v == 0; // for sign halving
      --level;
      enter_level(child, d, zero_above);
    }
  }

  bool best_found() const { return best_found_; }
  const std::vector<long> &best_x() const { return best_x_; }
  const Rat &best_norm() const { return best_norm_; }
  std::vector<EnumResult> take_results() { return std::move(results_); }

private:
  double step_cost(std::size_t i, long v) const {
    const double dv = static_cast<double>(v) - lv_[i].center;
    return dv * dv * gso_.bsq[i];
  }

  bool zero_above_entering(std::size_t i) const {
    // True if all coordinates strictly above level i are zero.  Valid at
    // the moment level i holds the active path (levels above are final).
    return zero_above_[i];
  }

  void enter_level(std::size_t i, double dist_above, bool zero_above) {
    Level &L = lv_[i];
    L.dist_above = dist_above;
    double c = 0.0;
    for (std::size_t j = i + 1; j < n_; ++j)
      if (x_[j] != 0)
        c -= static_cast<double>(x_[j]) * gso_.muv(j, i);
    L.center = c;
    long lo = std::numeric_limits<long>::min() / 4;
    long hi = std::numeric_limits<long>::max() / 4;
    if (!box_.empty()) {
      lo = -box_[i];
      hi = box_[i];
    }
    if (minimize_ && zero_above)
      lo = std::max(lo, 0L); // skip the mirror half of the tree
    zero_above_[i] = zero_above;
    L.lo = lo;
    L.hi = hi;
    long start = std::llround(c);
    start = std::clamp(start, lo, hi);
    L.up = start;
    L.down = start - 1;
    L.up_open = start <= hi;
    L.down_open = L.down >= lo;
  }

  /// Next x_i candidate at level i in order of increasing partial norm;
  /// false when the level is exhausted.
  bool next_candidate(std::size_t i, long &out) {
    Level &L = lv_[i];
    for (;;) {
      double cu = std::numeric_limits<double>::infinity();
      double cd = std::numeric_limits<double>::infinity();
      if (L.up_open)
        cu = step_cost(i, L.up);
      if (L.down_open)
        cd = step_cost(i, L.down);
      if (!L.up_open && !L.down_open)
        return false;
      const bool take_up = cu <= cd;
      const double c = take_up ? cu : cd;
      if (L.dist_above + c > bound_d_) {
        // Monotone per side: this side is dead; so is the other if its
        // head candidate is no closer.
        if (take_up)
          L.up_open = false;
        else
          L.down_open = false;
        continue;
      }
      if (++nodes_ > budget_)
        throw BudgetError("enumeration: node budget (" +
                          std::to_string(budget_) + ") exhausted");
      if (take_up) {
        out = L.up;
        if (L.up == std::numeric_limits<long>::max() / 4 || ++L.up > L.hi)
          L.up_open = false;
      } else {
        out = L.down;
        if (--L.down < L.lo)
          L.down_open = false;
      }
      return true;
    }
  }

  void handle_leaf() {
    bool all_zero = true;
    for (long v : x_)
      if (v != 0) {
        all_zero = false;
        break;
      }
    if (all_zero)
      return;
    Rat q = form_value(g_, x_);
    if (minimize_) {
      if (q > radius_sq_)
        return;
      if (!best_found_ || q < best_norm_) {
        best_found_ = true;
        best_norm_ = q;
        best_x_ = x_;
        bound_d_ = std::min(bound_d_, q.get_d() * (1.0 + kRadiusSlack));
      }
    } else {
      if (q <= radius_sq_) {
        EnumResult r;
        r.x = to_int_vec(x_);
        r.norm_sq = q;
        results_.push_back(std::move(r));
      }
    }
  }

  const RatMat &g_;
  std::size_t n_;
  DoubleGso gso_;
  std::uint64_t budget_;
  bool minimize_;
  std::vector<long> box_;
  std::vector<Level> lv_;
  std::vector<long> x_;
  std::vector<bool> zero_above_;
  std::uint64_t nodes_ = 0;
  double bound_d_ = 0.0;
  Rat radius_sq_;
  bool best_found_ = false;
  std::vector<long> best_x_;
  Rat best_norm_;
  std::vector<EnumResult> results_;
};

void sort_results(std::vector<EnumResult> &res) {
  std::sort(res.begin(), res.end(), [](const EnumResult &a, const EnumResult &b) {
    const int c = cmp(a.norm_sq, b.norm_sq);
    if (c != 0)
      return c < 0;
    return coeff_less(a.x, b.x);
  });
}

} // namespace

void sign_normalize(std::vector<Int> &x) {
  for (const Int &v : x) {
    if (v == 0)
      continue;
    if (v < 0)
      for (Int &w : x)
        w = -w;
    return;
  }
}

bool coeff_less(const std::vector<Int> &a, const std::vector<Int> &b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = cmp(a[i], b[i]);
    if (c != 0)
      return c < 0;
  }
  return a.size() < b.size();
}

std::vector<EnumResult>
enumerate_gram_ball(const RatMat &g, const Rat &radius_sq,
                    const std::optional<std::vector<long>> &box,
                    std::uint64_t node_budget) {
  if (sgn(radius_sq) < 0)
    throw ParameterError("enumerate_ball: negative squared radius");
  TreeSearch search(g, box, node_budget, /*minimize=*/false);
  const double bound_d =
      radius_sq.get_d() * (1.0 + kRadiusSlack) +
      std::numeric_limits<double>::min();
  search.run(radius_sq, bound_d);
  auto res = search.take_results();
  sort_results(res);
  return res;
}

EnumResult shortest_gram(const RatMat &g, std::uint64_t node_budget) {
  const std::size_t n = g.rows();
  if (n == 0)
    throw ParameterError("shortest_gram: empty Gram matrix");
  // A basis row is always available as an upper bound, so the schedule
  // below cannot fail to find a vector; the Gaussian-heuristic rungs just
  // keep the tree small when the basis is reasonable.
  Rat min_row = g(0, 0);
  for (std::size_t i = 1; i < n; ++i)
    min_row = std::min(min_row, Rat(g(i, i)));
  if (sgn(min_row) <= 0)
    throw ParameterError("shortest_gram: Gram matrix is not positive definite");
  const double min_row_d = min_row.get_d();
  const double gh = gaussian_heuristic_gram(g);

  bool found = false;
  std::vector<long> best_x;
  Rat best_norm;
  for (double factor : {1.05, 2.1, 4.2, -1.0}) {
    double cap = factor > 0 ? (factor * gh) * (factor * gh)
                            : std::numeric_limits<double>::infinity();
    const bool final_rung = !(cap < min_row_d);
    const double bound0 = std::min(cap, min_row_d) * (1.0 + kRadiusSlack);
    TreeSearch search(g, std::nullopt, node_budget, /*minimize=*/true);
    search.run(Rat(bound0), bound0);
    if (search.best_found()) {
      found = true;
      best_x = search.best_x();
      best_norm = search.best_norm();
      break;
    }
    if (final_rung)
      break;
  }
  if (!found)
    throw NumericalError("shortest_gram: schedule failed to certify a vector");

  // Canonical representative: list every vector of exactly this norm and
  // take the sign-normalised lexicographic minimum, so the result does not
  // depend on traversal order.
  auto ties = enumerate_gram_ball(g, best_norm, std::nullopt, node_budget);
  EnumResult best;
  bool have = false;
  for (auto &t : ties) {
    if (t.norm_sq != best_norm)
      continue;
    sign_normalize(t.x);
    if (!have || coeff_less(t.x, best.x)) {
      best = t;
      have = true;
    }
  }
  if (!have) // cannot happen: best_x itself is in the ball
    throw NumericalError("shortest_gram: tie listing lost the witness");
  return best;
}

std::optional<EnumResult> shortest_in_box(const RatMat &g, const Rat &radius_sq,
                                          const std::vector<long> &box,
                                          std::uint64_t node_budget) {
  if (sgn(radius_sq) < 0)
    throw ParameterError("shortest_in_box: negative squared radius");
  TreeSearch search(g, box, node_budget, /*minimize=*/true);
  const double bound_d = radius_sq.get_d() * (1.0 + kRadiusSlack) +
                         std::numeric_limits<double>::min();
  search.run(radius_sq, bound_d);
  if (!search.best_found())
    return std::nullopt;
  const Rat best = search.best_norm();
  auto ties = enumerate_gram_ball(g, best, box, node_budget);
  EnumResult out;
  bool have = false;
  for (auto &t : ties) {
    if (t.norm_sq != best)
      continue;
    sign_normalize(t.x);
    if (!have || coeff_less(t.x, out.x)) {
      out = t;
      have = true;
    }
  }
  if (!have)
    throw NumericalError("shortest_in_box: tie listing lost the witness");
  return out;
}

std::vector<EnumResult>
enumerate_ball(const Basis &b, double radius,
               const std::optional<std::vector<long>> &box,
               std::uint64_t node_budget) {
  if (!(radius >= 0.0))
    throw ParameterError("enumerate_ball: radius must be non-negative");
  const Rat r(radius);
  return enumerate_gram_ball(to_rat(gram(b)), Rat(r * r), box, node_budget);
}

EnumResult shortest_vector(const Basis &b, std::uint64_t node_budget) {
  return shortest_gram(to_rat(gram(b)), node_budget);
}

std::vector<EnumResult> shortest_vectors(const Basis &b,
                                         std::uint64_t node_budget) {
  const RatMat g = to_rat(gram(b));
  const EnumResult s = shortest_gram(g, node_budget);
  auto all = enumerate_gram_ball(g, s.norm_sq, std::nullopt, node_budget);
  std::vector<EnumResult> out;
  for (auto &r : all)
    if (r.norm_sq == s.norm_sq)
      out.push_back(std::move(r));
  return out;
}

std::optional<EnumResult> box_search(const Basis &b, const std::vector<long> &m,
                                     std::uint64_t point_budget) {
  const std::size_t n = b.rank();
  if (m.size() != n)
    throw ParameterError("box_search: bounds length does not match rank");
  for (long v : m)
    if (v < 0)
      throw ParameterError("box_search: negative bound");
  // Budget check on the full product before touching anything.
  double log_points = 0.0;
  for (long v : m)
    log_points += std::log2(2.0 * static_cast<double>(v) + 1.0);
  if (log_points > std::log2(static_cast<double>(point_budget)))
    throw BudgetError("box_search: box holds ~2^" +
                      std::to_string(log_points).substr(0, 6) +
                      " points, budget is " + std::to_string(point_budget));

  const IntMat g = gram(b);
  // Odometer sweep with an incrementally maintained gradient:
  // stepping x_k by +1 changes the form by 2*(Gx)_k + G(k,k).
  std::vector<long> x(n);
  std::vector<Int> grad(n, Int(0)); // (Gx)_j
  Rat value = 0;

  auto add_to_coord = [&](std::size_t k, long delta) {
    // x_k += delta, keeping value = x G x^T and grad = G x current.
    Rat dv;
    dv = grad[k] * (2 * delta);
    value += dv;
    dv = g(k, k) * (delta * delta);
    value += dv;
    for (std::size_t j = 0; j < n; ++j)
      grad[j] += g(k, j) * delta;
    x[k] += delta;
  };

  for (std::size_t k = 0; k < n; ++k)
    if (m[k] > 0)
      add_to_coord(k, -m[k]);

  bool have = false;
  EnumResult best;
  auto consider = [&] {
    bool all_zero = true;
    for (long v : x)
      if (v != 0) {
        all_zero = false;
        break;
      }
    if (all_zero)
      return;
    const int c = have ? cmp(value, best.norm_sq) : -1;
    if (c > 0)
      return;
    std::vector<Int> cand = to_int_vec(x);
    sign_normalize(cand);
    if (c == 0 && !coeff_less(cand, best.x))
      return;
    best.x = std::move(cand);
    best.norm_sq = value;
    have = true;
  };

  consider();
  for (;;) {
    // Increment the mixed-radix odometer over [-m_k, m_k] digits.
    std::size_t k = 0;
    while (k < n && (m[k] == 0 || x[k] == m[k])) {
      if (m[k] != 0)
        add_to_coord(k, -2 * m[k]); // wrap to -m_k
      ++k;
    }
    if (k == n)
      break;
    add_to_coord(k, 1);
    consider();
  }
  if (!have)
    return std::nullopt;
  return best;
}

SvpOracle make_enum_oracle(std::uint64_t node_budget) {
  return [node_budget](const RatMat &g) {
    EnumResult r = shortest_gram(g, node_budget);
    OracleResult out;
    out.found = true;
    out.x = std::move(r.x);
    out.norm_sq = std::move(r.norm_sq);
    return out;
  };
}

} // namespace svp
