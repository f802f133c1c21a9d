#include "svp/encoding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <utility>

#include "svp/common.hpp"
#include "svp/enumerate.hpp"
#include "svp/lattice.hpp"
#include "svp/reduction.hpp"
#include "svp/rng.hpp"

namespace svp {

namespace {

constexpr double kFloorSlack = 1e-12;

/// Natural width of the bound a: 0 for a pinned coordinate, otherwise
/// floor(log2(2a)) + 1 bits (= 1 bit exactly when a = 1).
int natural_width(long a) {
  if (a < 0)
    throw ParameterError("negative coefficient bound");
  if (a == 0)
    return 0;
  return static_cast<int>(std::bit_width(2 * static_cast<unsigned long>(a)));
}

std::vector<int> natural_widths(const std::vector<long> &m) {
  std::vector<int> bits(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    bits[i] = natural_width(m[i]);
  return bits;
}

double dual_row_norm(const RatMat &dual, std::size_t i) {
  Rat s = 0;
  for (std::size_t j = 0; j < dual.cols(); ++j)
    s += dual(i, j) * dual(i, j);
  return std::sqrt(s.get_d());
}

} // namespace

long bound_floor(double v) {
  if (!(v > 0.0))
    return 0;
  double f = std::floor(v * (1.0 + kFloorSlack));
  if (f >= 9.0e18)
    throw ParameterError("coefficient bound does not fit a long");
  return static_cast<long>(f);
}

// ---------------------------------------------------------------------------
// Bounds and budgets
// ---------------------------------------------------------------------------

const char *to_string(BoundKind k) {
  switch (k) {
  case BoundKind::dual_lemma:
    return "dual-lemma";
  case BoundKind::uniform:
    return "uniform";
  case BoundKind::uniform_random:
    return "uniform-random";
  case BoundKind::dual_scaled:
    return "dual-scaled";
  }
  return "?";
}

int BoundsVector::total_bits() const {
  int t = 0;
  for (int b : bits)
    t += b;
  return t;
}

BoundsVector dual_bounds(const Basis &b, double A) {
  if (!(A >= 0.0))
    throw ParameterError("dual_bounds: radius must be non-negative");
  RatMat dual = dual_basis(b);
  BoundsVector out;
  out.kind = BoundKind::dual_lemma;
  out.m.resize(b.rank());
  for (std::size_t i = 0; i < b.rank(); ++i)
    out.m[i] = bound_floor(A * dual_row_norm(dual, i));
  out.bits = natural_widths(out.m);
  return out;
}

int qubit_count(const std::vector<long> &m) {
  int n = 0;
  for (long a : m)
    n += natural_width(a);
  return n;
}

int qubit_count(const BoundsVector &bounds) { return qubit_count(bounds.m); }

double qubit_budget_bound_log2(std::size_t n, double log2_dual_defect,
                               double C) {
  if (n == 0)
    throw ParameterError("qubit_budget_bound: empty lattice");
  double ratio = C * C * static_cast<double>(n) / (2.0 * std::numbers::pi *
                                                   std::numbers::e);
  return 2.0 * static_cast<double>(n) +
         0.5 * static_cast<double>(n) * std::log2(ratio) + log2_dual_defect;
}

double qubit_budget_bound(std::size_t n, double dual_defect, double C) {
  return qubit_budget_bound_log2(n, std::log2(dual_defect), C);
}

// ---------------------------------------------------------------------------
// Qubit distribution strategies
// ---------------------------------------------------------------------------

namespace {

long bound_for_width(int b) {
  if (b <= 0)
    return 0;
  if (b == 1)
    return 1;
  if (b > 62)
    throw ParameterError("per-coordinate width exceeds 62 bits");
  return (1L << (b - 1)) - 1;
}

BoundsVector scaled_dual_mapping(std::size_t n, long m_qubits, const Basis &b) {
  RatMat dual = dual_basis(b);
  std::vector<double> radii(n);
  double A = gaussian_heuristic(b, 1.0);
  for (std::size_t i = 0; i < n; ++i)
    radii[i] = A * dual_row_norm(dual, i);
  auto bounds_at = [&](double t) {
    std::vector<long> m(n);
    for (std::size_t i = 0; i < n; ++i)
      m[i] = bound_floor(t * radii[i]);
    return m;
  };
  std::vector<long> m = bounds_at(1.0);
  if (qubit_count(m) > m_qubits) {
    double lo = 0.0, hi = 1.0; // count(lo) = 0 <= budget
    for (int it = 0; it < 64; ++it) {
      double mid = 0.5 * (lo + hi);
      if (qubit_count(bounds_at(mid)) <= m_qubits)
        lo = mid;
      else
        hi = mid;
    }
    m = bounds_at(lo);
  }
  BoundsVector out;
  out.kind = BoundKind::dual_scaled;
  out.m = std::move(m);
  out.bits = natural_widths(out.m);
  return out;
}

} // namespace

BoundsVector naive_mapping(std::size_t n, long m_qubits,
                           const std::string &strategy, const Basis &b,
                           std::uint64_t seed) {
  if (n == 0)
    throw ParameterError("naive_mapping: empty lattice");
  if (b.rank() != n)
    throw ParameterError("naive_mapping: basis rank does not match n");
  if (m_qubits < static_cast<long>(n))
    throw ParameterError("naive_mapping: fewer qubits than coordinates");
  if (strategy == "dual-scaled")
    return scaled_dual_mapping(n, m_qubits, b);
  if (strategy != "uniform" && strategy != "uniform-random")
    throw ParameterError("naive_mapping: unknown strategy '" + strategy + "'");

  int base = static_cast<int>(m_qubits / static_cast<long>(n));
  std::vector<int> bits(n, base);
  if (strategy == "uniform-random") {
    std::size_t leftover =
        static_cast<std::size_t>(m_qubits % static_cast<long>(n));
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
      order[i] = i;
    Rng rng(seed);
    shuffle(order, rng);
    for (std::size_t i = 0; i < leftover; ++i)
      bits[order[i]] += 1;
  }
  BoundsVector out;
  out.kind = strategy == "uniform" ? BoundKind::uniform
                                   : BoundKind::uniform_random;
  out.bits = std::move(bits);
  out.m.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.m[i] = bound_for_width(out.bits[i]);
  return out;
}

InclusionResult inclusion_probability(std::size_t rank, long m_qubits,
                                      const std::string &strategy,
                                      std::size_t count, std::uint64_t seed,
                                      int jobs) {
  if (rank == 0 || count == 0)
    throw ParameterError("inclusion_probability: empty experiment");
  // validate the row shape here: inside the parallel loop a ParameterError
  // would be a per-instance surprise instead of a config error
  if (strategy != "uniform" && strategy != "uniform-random" &&
      strategy != "dual-scaled")
    throw ParameterError("inclusion_probability: unknown strategy '" +
                         strategy + "'");
  if (m_qubits < static_cast<long>(rank))
    throw ParameterError("inclusion_probability: fewer qubits than "
                         "coordinates");
  if (jobs < 1)
    jobs = 1;
  const std::size_t d = rank + 12;
  const std::size_t k = d / 2;
  const Int q = 65537;
  // per-instance flags, folded after the loop (job-count independent)
  std::vector<signed char> status(count, 0); // 1 inside, 0 outside, -1 error
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(count); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    std::uint64_t instance_seed = derive_seed(seed, 2 * i);
    std::uint64_t mapping_seed = derive_seed(seed, 2 * i + 1);
    try {
      Basis inst = prepare_instance(d, k, q, rank, instance_seed);
      BoundsVector bounds =
          naive_mapping(rank, m_qubits, strategy, inst, mapping_seed);
      std::vector<EnumResult> shortest = shortest_vectors(inst);
      // "included" means representable in the decode set of the encoding,
      // which is what the prepared Hamiltonian can actually express: a
      // width-1 coordinate decodes {-1, 0}, wider ones the symmetric
      // range [-m_c, m_c], and the global sign of the vector is free.
      bool inside = false;
      for (const EnumResult &s : shortest) {
        bool plus = true, minus = true; // s and -s against the decode set
        for (std::size_t c = 0; c < rank && (plus || minus); ++c) {
          const Int &x = s.x[c];
          if (bounds.bits[c] >= 2) {
            const bool ok = abs(x) <= bounds.m[c];
            plus = plus && ok;
            minus = minus && ok;
          } else if (bounds.bits[c] == 1) {
            plus = plus && (x == 0 || x == -1);
            minus = minus && (x == 0 || x == 1);
          } else {
            const bool ok = x == 0;
            plus = plus && ok;
            minus = minus && ok;
          }
        }
        inside = inside || plus || minus;
      }
      status[i] = inside ? 1 : 0;
    } catch (const BudgetError &) {
      status[i] = -1;
    } catch (const NumericalError &) {
      status[i] = -1;
    }
  }
  InclusionResult res;
  for (signed char s : status) {
    if (s < 0)
      res.errors += 1;
    else {
      res.evaluated += 1;
      res.included += s;
    }
  }
  res.probability = res.evaluated == 0
                        ? 0.0
                        : static_cast<double>(res.included) /
                              static_cast<double>(res.evaluated);
  return res;
}

// ---------------------------------------------------------------------------
// Integer encodings
// ---------------------------------------------------------------------------

const char *to_string(Scheme s) {
  return s == Scheme::plain ? "plain" : "penalty";
}

namespace {

CoordEncoding plain_coord(long a, int bits, int first_bit) {
  CoordEncoding c;
  c.a = a;
  c.first_bit = first_bit;
  c.bits = bits;
  c.offset = -a;
  if (bits == 0) {
    if (a != 0)
      throw ParameterError("encode_integers: zero width for nonzero bound");
    c.offset = 0;
    return c;
  }
  if (bits != natural_width(a) && !(bits == 1 && a == 1))
    throw ParameterError("encode_integers: width does not match bound");
  // Binary ramp 1, 2, ..., 2^{bits-2} with closing weight 2a + 1 - 2^{bits-1}
  // so that the decoded range is exactly [-a, a]; with one bit the ramp is
  // empty and the truncated weight is 1 (range {-1, 0}).
  for (int j = 0; j + 1 < bits; ++j)
    c.weights.push_back(1L << j);
  if (bits == 1)
    c.weights.push_back(1);
  else
    c.weights.push_back(2 * a + 1 - (1L << (bits - 1)));
  return c;
}

CoordEncoding penalty_coord(long a, int first_bit) {
  if (a < 2)
    throw ParameterError("encode_integers: penalty scheme needs all a_i >= 2");
  CoordEncoding c;
  c.a = a;
  c.first_bit = first_bit;
  c.offset = -a;
  c.zeta_bit = first_bit;
  c.omega_bit = first_bit + 1;
  // x = -a + a*zeta + (a+1)*omega + magnitude, with s = floor(log2 a)
  // magnitude bits weighted 1, 2, ..., 2^{s-1}, a - 2^s.
  int s = natural_width(a) - 2; // natural_width(a) = floor(log2 a) + 2
  c.weights.push_back(a);
  c.weights.push_back(a + 1);
  for (int j = 0; j < s; ++j)
    c.weights.push_back(1L << j);
  c.weights.push_back(a - (1L << s));
  c.bits = static_cast<int>(c.weights.size()); // s + 3
  return c;
}

} // namespace

IntegerEncoding encode_integers(const BoundsVector &bounds, Scheme scheme) {
  if (bounds.size() == 0)
    throw ParameterError("encode_integers: empty bounds");
  if (bounds.bits.size() != bounds.m.size())
    throw ParameterError("encode_integers: inconsistent bounds vector");
  IntegerEncoding enc;
  enc.scheme = scheme;
  int bit = 0;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    CoordEncoding c = scheme == Scheme::plain
                          ? plain_coord(bounds.m[i], bounds.bits[i], bit)
                          : penalty_coord(bounds.m[i], bit);
    bit += c.bits;
    enc.coords.push_back(std::move(c));
  }
  enc.aux_start = bit;
  if (scheme == Scheme::penalty && bounds.size() > 2)
    enc.n_aux = static_cast<int>(bounds.size()) - 2;
  enc.n_vars = bit + enc.n_aux;
  if (enc.n_vars > 63)
    throw ParameterError("encode_integers: more than 63 binary variables");
  return enc;
}

std::vector<long> decode_bitstring(const IntegerEncoding &enc,
                                   std::uint64_t bits) {
  if (enc.n_vars < 64 && (bits >> enc.n_vars) != 0)
    throw ParameterError("decode_bitstring: bits beyond n_vars are set");
  std::vector<long> x(enc.coords.size());
  for (std::size_t i = 0; i < enc.coords.size(); ++i) {
    const CoordEncoding &c = enc.coords[i];
    long v = c.offset;
    for (int j = 0; j < c.bits; ++j)
      if ((bits >> (c.first_bit + j)) & 1u)
        v += c.weights[j];
    x[i] = v;
  }
  return x;
}

bool decodes_to_zero(const IntegerEncoding &enc, std::uint64_t bits) {
  for (std::size_t i = 0; i < enc.coords.size(); ++i) {
    const CoordEncoding &c = enc.coords[i];
    long v = c.offset;
    for (int j = 0; j < c.bits; ++j)
      if ((bits >> (c.first_bit + j)) & 1u)
        v += c.weights[j];
    if (v != 0)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// QUBO construction
// ---------------------------------------------------------------------------

namespace {

/// Affine form  c + sum_k coeff_k * bit_{var_k}  over binary variables.
struct LinForm {
  Rat c;
  std::vector<std::pair<int, Rat>> terms;
};

LinForm coord_form(const CoordEncoding &c) {
  LinForm f;
  f.c = c.offset;
  for (int j = 0; j < c.bits; ++j)
    f.terms.emplace_back(c.first_bit + j, Rat(c.weights[j]));
  return f;
}

struct QuboBuilder {
  QuboProblem q;

  explicit QuboBuilder(int n_vars) {
    q.n_vars = n_vars;
    q.linear.assign(n_vars, Rat(0));
  }

  void add_const(const Rat &c) { q.constant += c; }
  void add_linear(int i, const Rat &c) { q.linear[i] += c; }
  void add_quad(int i, int j, const Rat &c) {
    if (i == j) { // idempotence: s^2 = s
      q.linear[i] += c;
      return;
    }
    if (i > j)
      std::swap(i, j);
    q.quadratic[{i, j}] += c;
  }

  /// Accumulate scale * f * g.
  void add_product(const Rat &scale, const LinForm &f, const LinForm &g) {
    if (scale == 0)
      return;
    add_const(scale * f.c * g.c);
    for (const auto &[i, a] : f.terms)
      add_linear(i, scale * a * g.c);
    for (const auto &[j, b] : g.terms)
      add_linear(j, scale * f.c * b);
    for (const auto &[i, a] : f.terms)
      for (const auto &[j, b] : g.terms)
        add_quad(i, j, scale * a * b);
  }

  QuboProblem take() {
    for (auto it = q.quadratic.begin(); it != q.quadratic.end();)
      it = it->second == 0 ? q.quadratic.erase(it) : std::next(it);
    return std::move(q);
  }
};

void add_norm_objective(QuboBuilder &builder, const IntMat &gram,
                        const IntegerEncoding &enc) {
  const std::size_t n = enc.n();
  if (gram.rows() != n || gram.cols() != n)
    throw ParameterError("build_qubo: Gram matrix does not match encoding");
  std::vector<LinForm> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = coord_form(enc.coords[i]);
  for (std::size_t i = 0; i < n; ++i) {
    builder.add_product(Rat(gram(i, i)), x[i], x[i]);
    for (std::size_t j = i + 1; j < n; ++j)
      builder.add_product(Rat(2) * Rat(gram(i, j)), x[i], x[j]);
  }
}

} // namespace

QuboProblem build_qubo(const IntMat &gram, const IntegerEncoding &enc) {
  if (enc.scheme != Scheme::plain)
    throw ParameterError("build_qubo: expected the plain encoding");
  QuboBuilder builder(enc.n_vars);
  add_norm_objective(builder, gram, enc);
  return builder.take();
}

QuboProblem build_penalty_qubo(const IntMat &gram, const IntegerEncoding &enc,
                               const Rat &penalty) {
  if (enc.scheme != Scheme::penalty)
    throw ParameterError("build_penalty_qubo: expected the penalty encoding");
  if (penalty <= 0)
    throw ParameterError("build_penalty_qubo: penalty weight must be positive");
  QuboBuilder builder(enc.n_vars);
  add_norm_objective(builder, gram, enc);

  const int n = static_cast<int>(enc.n());
  // z_i for i = 1..n (1-based): z_n = 1, z_{n-1} = zeta_n, the rest are
  // free auxiliaries appended after the coordinate bits.
  auto z_form = [&](int i) { // 0-based coordinate index
    LinForm f;
    if (i == n - 1)
      f.c = 1;
    else if (i == n - 2)
      f.terms.emplace_back(enc.coords[static_cast<std::size_t>(n) - 1].zeta_bit,
                           Rat(1));
    else
      f.terms.emplace_back(enc.aux_start + i, Rat(1));
    return f;
  };
  // L_i = -(1 - zeta_i) + sum_{k>i} (1 - zeta_k)
  auto l_form = [&](int i) {
    LinForm f;
    f.c = Rat(n - 1 - i) - 1;
    f.terms.emplace_back(enc.coords[i].zeta_bit, Rat(1));
    for (int k = i + 1; k < n; ++k)
      f.terms.emplace_back(enc.coords[k].zeta_bit, Rat(-1));
    return f;
  };
  builder.add_const(penalty);
  for (int i = 0; i < n; ++i)
    builder.add_product(penalty, z_form(i), l_form(i));
  return builder.take();
}

Rat default_penalty_weight(const Basis &b) {
  Basis reduced = b;
  lll(reduced);
  return Rat(2 * row_dot(reduced.rows, 0, reduced.rows, 0));
}

// ---------------------------------------------------------------------------
// Ising mapping and evaluation
// ---------------------------------------------------------------------------

IsingHamiltonian qubo_to_ising(const QuboProblem &q) {
  // s_i = (1 - z_i) / 2, so s_i s_j = (1 - z_i - z_j + z_i z_j) / 4.
  IsingHamiltonian h;
  h.n_vars = q.n_vars;
  h.constant = q.constant;
  h.h.assign(q.n_vars, Rat(0));
  for (int i = 0; i < q.n_vars; ++i) {
    h.constant += q.linear[i] / 2;
    h.h[i] -= q.linear[i] / 2;
  }
  for (const auto &[ij, c] : q.quadratic) {
    Rat quarter = c / 4;
    h.constant += quarter;
    h.h[ij.first] -= quarter;
    h.h[ij.second] -= quarter;
    h.j[ij] += quarter;
  }
  for (auto it = h.j.begin(); it != h.j.end();)
    it = it->second == 0 ? h.j.erase(it) : std::next(it);
  return h;
}

Rat qubo_value(const QuboProblem &q, std::uint64_t bits) {
  Rat v = q.constant;
  for (int i = 0; i < q.n_vars; ++i)
    if ((bits >> i) & 1u)
      v += q.linear[i];
  for (const auto &[ij, c] : q.quadratic)
    if (((bits >> ij.first) & 1u) && ((bits >> ij.second) & 1u))
      v += c;
  return v;
}

Rat ising_eigenvalue_exact(const IsingHamiltonian &h, std::uint64_t bits) {
  auto spin = [&](int i) { return ((bits >> i) & 1u) ? -1 : 1; };
  Rat v = h.constant;
  for (int i = 0; i < h.n_vars; ++i)
    v += Rat(spin(i)) * h.h[i];
  for (const auto &[ij, c] : h.j)
    v += Rat(spin(ij.first) * spin(ij.second)) * c;
  return v;
}

// ---------------------------------------------------------------------------
// JSON interchange
// ---------------------------------------------------------------------------

namespace {

nlohmann::json problem_to_json(int n_vars, const Rat &constant,
                               const std::vector<Rat> &linear,
                               const std::map<std::pair<int, int>, Rat> &quad,
                               const char *kind, const IntegerEncoding *enc) {
  nlohmann::json j;
  j["n_vars"] = n_vars;
  j["constant"] = rat_to_string(constant);
  j["linear"] = nlohmann::json::array();
  for (int i = 0; i < n_vars; ++i)
    if (linear[static_cast<std::size_t>(i)] != 0)
      j["linear"].push_back(
          {{"i", i}, {"c", rat_to_string(linear[static_cast<std::size_t>(i)])}});
  j["quadratic"] = nlohmann::json::array();
  for (const auto &[ij, c] : quad)
    j["quadratic"].push_back(
        {{"i", ij.first}, {"j", ij.second}, {"c", rat_to_string(c)}});
  j["kind"] = kind;
  if (enc)
    j["encoding"] = encoding_to_json(*enc);
  return j;
}

void problem_from_json(const nlohmann::json &j, const char *kind, int &n_vars,
                       Rat &constant, std::vector<Rat> &linear,
                       std::map<std::pair<int, int>, Rat> &quad) {
  if (j.at("kind").get<std::string>() != kind)
    throw ParameterError("hamiltonian file has kind '" +
                         j.at("kind").get<std::string>() + "', expected '" +
                         kind + "'");
  n_vars = j.at("n_vars").get<int>();
  if (n_vars < 0 || n_vars > 63)
    throw ParameterError("hamiltonian file: n_vars out of range");
  constant = rat_from_string(j.at("constant").get<std::string>());
  linear.assign(static_cast<std::size_t>(n_vars), Rat(0));
  for (const auto &t : j.at("linear")) {
    int i = t.at("i").get<int>();
    if (i < 0 || i >= n_vars)
      throw ParameterError("hamiltonian file: linear index out of range");
    linear[static_cast<std::size_t>(i)] =
        rat_from_string(t.at("c").get<std::string>());
  }
  quad.clear();
  for (const auto &t : j.at("quadratic")) {
    int a = t.at("i").get<int>();
    int b = t.at("j").get<int>();
    if (a < 0 || b < 0 || a >= n_vars || b >= n_vars || a == b)
      throw ParameterError("hamiltonian file: quadratic index out of range");
    if (a > b)
      std::swap(a, b);
    quad[{a, b}] = rat_from_string(t.at("c").get<std::string>());
  }
}

} // namespace

nlohmann::json qubo_to_json(const QuboProblem &q, const IntegerEncoding *enc) {
  return problem_to_json(q.n_vars, q.constant, q.linear, q.quadratic, "qubo",
                         enc);
}

nlohmann::json ising_to_json(const IsingHamiltonian &h,
                             const IntegerEncoding *enc) {
  return problem_to_json(h.n_vars, h.constant, h.h, h.j, "ising", enc);
}

QuboProblem qubo_from_json(const nlohmann::json &j) {
  QuboProblem q;
  problem_from_json(j, "qubo", q.n_vars, q.constant, q.linear, q.quadratic);
  return q;
}

IsingHamiltonian ising_from_json(const nlohmann::json &j) {
  IsingHamiltonian h;
  problem_from_json(j, "ising", h.n_vars, h.constant, h.h, h.j);
  return h;
}

nlohmann::json encoding_to_json(const IntegerEncoding &enc) {
  nlohmann::json j;
  j["scheme"] = to_string(enc.scheme);
  j["n_vars"] = enc.n_vars;
  j["aux_start"] = enc.aux_start;
  j["n_aux"] = enc.n_aux;
  j["coords"] = nlohmann::json::array();
  for (const CoordEncoding &c : enc.coords)
    j["coords"].push_back({{"a", c.a},
                           {"first_bit", c.first_bit},
                           {"bits", c.bits},
                           {"offset", c.offset},
                           {"weights", c.weights},
                           {"zeta_bit", c.zeta_bit},
                           {"omega_bit", c.omega_bit}});
  return j;
}

IntegerEncoding encoding_from_json(const nlohmann::json &j) {
  IntegerEncoding enc;
  std::string scheme = j.at("scheme").get<std::string>();
  if (scheme == "plain")
    enc.scheme = Scheme::plain;
  else if (scheme == "penalty")
    enc.scheme = Scheme::penalty;
  else
    throw ParameterError("encoding file: unknown scheme '" + scheme + "'");
  enc.n_vars = j.at("n_vars").get<int>();
  enc.aux_start = j.at("aux_start").get<int>();
  enc.n_aux = j.at("n_aux").get<int>();
  for (const auto &t : j.at("coords")) {
    CoordEncoding c;
    c.a = t.at("a").get<long>();
    c.first_bit = t.at("first_bit").get<int>();
    c.bits = t.at("bits").get<int>();
    c.offset = t.at("offset").get<long>();
    c.weights = t.at("weights").get<std::vector<long>>();
    c.zeta_bit = t.at("zeta_bit").get<int>();
    c.omega_bit = t.at("omega_bit").get<int>();
    enc.coords.push_back(std::move(c));
  }
  return enc;
}

} // namespace svp
