// Exact linear algebra and the deterministic RNG layer.  The matrix
// routines certify every lattice result in the toolkit, so they are
// cross-checked against each other (Bareiss vs. rational elimination)
// and against hand-computed values.

#include "doctest.h"

#include <set>
#include <string>
#include <vector>

#include "svp/matrix.hpp"
#include "svp/rng.hpp"

using namespace svp;

namespace {

IntMat make_int(std::size_t r, std::size_t c, std::vector<long> v) {
  IntMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = v[i * c + j];
  return m;
}

IntMat random_int_mat(std::size_t n, Rng &rng, long half_range = 9) {
  IntMat m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = rng.next_in_range(-half_range, half_range);
  return m;
}

} // namespace

TEST_SUITE("matrix-rng") {

TEST_CASE("rng is deterministic and seed-sensitive") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 16; ++i)
    CHECK(a.next_u64() == b.next_u64());
  bool differs = false;
  Rng a2(42);
  for (int i = 0; i < 16; ++i)
    differs |= (a2.next_u64() != c.next_u64());
  CHECK(differs);
}

TEST_CASE("rng ranges") {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    double d = rng.next_double();
    CHECK(d >= 0.0);
    CHECK(d < 1.0);
  }
  for (int i = 0; i < 1000; ++i) {
    auto v = rng.next_below(13);
    CHECK(v < 13);
  }
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i)
    seen.insert(rng.next_below(13));
  CHECK(seen.size() == 13); // all residues hit
  for (int i = 0; i < 200; ++i) {
    auto v = rng.next_in_range(-3, 5);
    CHECK(v >= -3);
    CHECK(v <= 5);
  }
}

TEST_CASE("derive_seed separates streams and is stable") {
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  // children of consecutive masters must not collide with shifted indices
  CHECK(derive_seed(5, 1) != derive_seed(6, 0));
}

TEST_CASE("shuffle is a seeded permutation") {
  std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7};
  std::vector<int> w = v;
  Rng r1(9), r2(9);
  shuffle(v, r1);
  shuffle(w, r2);
  CHECK(v == w);
  std::set<int> s(v.begin(), v.end());
  CHECK(s.size() == 8);
}

TEST_CASE("transpose and multiply") {
  IntMat a = make_int(2, 3, {1, 2, 3, 4, 5, 6});
  IntMat at = transpose(a);
  CHECK(at.rows() == 3);
  CHECK(at.cols() == 2);
  CHECK(at(2, 1) == 6);

  IntMat g = mul(a, at); // 2x2
  CHECK(g(0, 0) == 14);
  CHECK(g(0, 1) == 32);
  CHECK(g(1, 0) == 32);
  CHECK(g(1, 1) == 77);

  IntMat id = IntMat::identity(2);
  CHECK(mul(id, g) == g);
  CHECK(mul(g, id) == g);

  CHECK_THROWS_AS(mul(a, a), ParameterError);
}

TEST_CASE("determinants: hand values and route agreement") {
  CHECK(det_bareiss(make_int(1, 1, {7})) == 7);
  CHECK(det_bareiss(make_int(2, 2, {1, 2, 3, 4})) == -2);
  CHECK(det_bareiss(make_int(2, 2, {2, 0, 0, 3})) == 6);
  CHECK(det_bareiss(make_int(3, 3, {1, 2, 3, 0, 1, 4, 5, 6, 0})) == 1);
  CHECK(det_bareiss(make_int(3, 3, {2, 0, 1, 1, 3, 2, 1, 1, 1})) == 0);
  CHECK(det_bareiss(make_int(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9})) == 0);

  // Bareiss and rational Gauss elimination agree on random matrices.
  Rng rng(1234);
  for (int t = 0; t < 20; ++t) {
    IntMat m = random_int_mat(4, rng);
    Int d1 = det_bareiss(m);
    Rat d2 = rat_det(to_rat(m));
    CHECK(Rat(d1) == d2);
  }
}

TEST_CASE("rat_inverse") {
  Rng rng(99);
  int inverted = 0;
  while (inverted < 10) {
    IntMat m = random_int_mat(3, rng);
    if (det_bareiss(m) == 0)
      continue;
    RatMat inv = rat_inverse(to_rat(m));
    RatMat prod = mul(to_rat(m), inv);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        CHECK(prod(i, j) == Rat(i == j ? 1 : 0));
    ++inverted;
  }
  RatMat sing = to_rat(make_int(2, 2, {1, 2, 2, 4}));
  CHECK_THROWS_AS(rat_inverse(sing), ParameterError);
}

TEST_CASE("integrality helpers") {
  RatMat m(2, 2);
  m(0, 0) = Rat(1, 2);
  m(0, 1) = Rat(3, 4);
  m(1, 0) = 2;
  m(1, 1) = Rat(-5, 6);
  CHECK(!is_integral(m));
  CHECK(common_denominator(m) == 12);
  RatMat scaled = scale(m, Rat(12));
  CHECK(is_integral(scaled));
  IntMat z = to_int_exact(scaled);
  CHECK(z(0, 0) == 6);
  CHECK(z(1, 1) == -10);
  CHECK_THROWS_AS(to_int_exact(m), ParameterError);
}

TEST_CASE("row_dot") {
  IntMat a = make_int(2, 3, {1, -2, 3, 0, 4, 5});
  CHECK(row_dot(a, 0, a, 0) == 14);
  CHECK(row_dot(a, 0, a, 1) == 7);
  CHECK(row_dot(a, 1, a, 1) == 41);
}

TEST_CASE("log2_rat") {
  CHECK(log2_rat(Rat(8)) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(log2_rat(Rat(1, 4)) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(log2_rat(Rat(3, 2)) == doctest::Approx(0.5849625007).epsilon(1e-9));
}

TEST_CASE("rational string round trip") {
  CHECK(rat_to_string(Rat(5)) == "5");
  CHECK(rat_to_string(Rat(-3, 7)) == "-3/7");
  CHECK(rat_from_string("5") == Rat(5));
  CHECK(rat_from_string("-3/7") == Rat(-3, 7));
  CHECK(rat_from_string("6/4") == Rat(3, 2)); // canonicalised
  for (const Rat &r : {Rat(0), Rat(22, 7), Rat(-100, 3)})
    CHECK(rat_from_string(rat_to_string(r)) == r);
  CHECK_THROWS_AS(rat_from_string("abc"), ParameterError);
  CHECK_THROWS_AS(rat_from_string("1/0"), ParameterError);
  CHECK_THROWS_AS(rat_from_string(""), ParameterError);
}

} // TEST_SUITE
