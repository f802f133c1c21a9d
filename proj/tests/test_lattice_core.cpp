// Gram matrices, duals, Gram-Schmidt, volumes, the Gaussian heuristic,
// orthogonality defects, q-ary sampling and basis text I/O.

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "svp/lattice.hpp"
#include "svp/rng.hpp"

using namespace svp;

namespace {

Basis make_basis(std::size_t r, std::size_t c, std::vector<long> v) {
  Basis b(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      b.rows(i, j) = v[i * c + j];
  return b;
}

Basis random_full_rank(std::size_t n, std::uint64_t seed, long half_range = 6) {
  Rng rng(seed);
  for (;;) {
    Basis b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        b.rows(i, j) = rng.next_in_range(-half_range, half_range);
    if (volume_sq(b) != 0)
      return b;
  }
}

} // namespace

TEST_SUITE("lattice-core") {

TEST_CASE("gram matrix") {
  Basis b = make_basis(2, 2, {1, 2, 3, 4});
  IntMat g = gram(b);
  CHECK(g(0, 0) == 5);
  CHECK(g(0, 1) == 11);
  CHECK(g(1, 0) == 11);
  CHECK(g(1, 1) == 25);

  RatMat gr = gram_rat(to_rat(b.rows));
  CHECK(gr(0, 1) == Rat(11));
}

TEST_CASE("dual basis: worked example") {
  Basis b = make_basis(2, 2, {2, 0, 1, 1});
  RatMat d = dual_basis(b);
  CHECK(d(0, 0) == Rat(1, 2));
  CHECK(d(0, 1) == Rat(-1, 2));
  CHECK(d(1, 0) == Rat(0));
  CHECK(d(1, 1) == Rat(1));
}

TEST_CASE("dual basis: biorthogonality, square and rectangular") {
  SUBCASE("square") {
    Basis b = random_full_rank(4, 77);
    RatMat d = dual_basis(b);
    RatMat prod = mul(to_rat(b.rows), transpose(d));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        CHECK(prod(i, j) == Rat(i == j ? 1 : 0));
  }
  SUBCASE("rectangular rank 2 in dimension 4") {
    Basis b = make_basis(2, 4, {1, 2, 0, -1, 0, 3, 1, 1});
    RatMat d = dual_basis(b);
    RatMat prod = mul(to_rat(b.rows), transpose(d));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        CHECK(prod(i, j) == Rat(i == j ? 1 : 0));
    // dual rows stay inside the row span: d = G^{-1} B by construction,
    // so span membership is equivalent to d * B^T * (B B^T)^{-1} * B == d
    RatMat g_inv = rat_inverse(gram_rat(to_rat(b.rows)));
    RatMat proj = mul(mul(d, transpose(to_rat(b.rows))),
                      mul(g_inv, to_rat(b.rows)));
    CHECK(proj == d);
  }
  SUBCASE("dependent rows rejected") {
    Basis dep = make_basis(2, 2, {1, 2, 2, 4});
    CHECK_THROWS_AS(dual_basis(dep), ParameterError);
  }
}

TEST_CASE("gram-schmidt: worked example") {
  Basis b = make_basis(2, 2, {1, 1, 0, 2});
  GsoResult r = gso(b);
  CHECK(r.bstar(0, 0) == Rat(1));
  CHECK(r.bstar(0, 1) == Rat(1));
  CHECK(r.bstar(1, 0) == Rat(-1));
  CHECK(r.bstar(1, 1) == Rat(1));
  CHECK(r.mu(1, 0) == Rat(1));
  CHECK(r.mu(0, 0) == Rat(1));
  CHECK(r.mu(1, 1) == Rat(1));
  CHECK(r.bstar_sq[0] == Rat(2));
  CHECK(r.bstar_sq[1] == Rat(2));
}

TEST_CASE("gram-schmidt reconstructs the basis and is orthogonal") {
  Basis b = random_full_rank(5, 31);
  GsoResult r = gso(b);
  // b_i = sum_j mu(i,j) bstar_j
  RatMat rebuilt = mul(r.mu, r.bstar);
  CHECK(rebuilt == to_rat(b.rows));
  // bstar rows pairwise orthogonal
  RatMat g = gram_rat(r.bstar);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      if (i != j)
        CHECK(g(i, j) == Rat(0));
  // prod ||bstar_i||^2 == det(G) == vol^2
  Rat prod = 1;
  for (const Rat &v : r.bstar_sq)
    prod *= v;
  CHECK(prod == Rat(volume_sq(b)));
}

TEST_CASE("volume") {
  CHECK(volume_sq(Basis(IntMat::identity(3))) == 1);
  Basis b = make_basis(2, 2, {2, 0, 1, 1});
  CHECK(volume_sq(b) == 4);
  CHECK(volume(b) == doctest::Approx(2.0).epsilon(1e-12));
  // rectangular: vol^2 = det(B B^T)
  Basis r = make_basis(1, 3, {3, 4, 0});
  CHECK(volume_sq(r) == 25);
}

TEST_CASE("gaussian heuristic") {
  Basis id2(IntMat::identity(2));
  double expect = std::sqrt(1.0 / (std::numbers::pi * std::numbers::e));
  CHECK(gaussian_heuristic(id2) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(gaussian_heuristic(id2) == doctest::Approx(0.342).epsilon(2e-3));
  CHECK(gaussian_heuristic(id2, 2.0) ==
        doctest::Approx(2 * expect).epsilon(1e-12));

  // scaling law: gh(c * L) = c * gh(L)
  Basis b = random_full_rank(4, 5);
  Basis b3 = b;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      b3.rows(i, j) *= 3;
  CHECK(gaussian_heuristic(b3) ==
        doctest::Approx(3 * gaussian_heuristic(b)).epsilon(1e-9));

  // all three routes agree
  CHECK(gaussian_heuristic_gram(to_rat(gram(b))) ==
        doctest::Approx(gaussian_heuristic(b)).epsilon(1e-12));
  double log2_volsq = log2_rat(Rat(volume_sq(b)));
  CHECK(gh_from_log2_volsq(4, log2_volsq, 1.0) ==
        doctest::Approx(gaussian_heuristic(b)).epsilon(1e-12));
}

TEST_CASE("orthogonality defect") {
  Basis id(IntMat::identity(4));
  CHECK(orthogonality_defect(id) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(orthogonality_defect_log2(id) == doctest::Approx(0.0).epsilon(1e-12));

  Basis b = make_basis(2, 2, {1, 1, 0, 2}); // ||b1|| ||b2|| / vol = 2 sqrt(2)/2
  CHECK(orthogonality_defect(b) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  // Hadamard: defect >= 1 always
  for (std::uint64_t s = 0; s < 10; ++s)
    CHECK(orthogonality_defect_log2(random_full_rank(4, 100 + s)) >= -1e-12);
}

TEST_CASE("q-ary sampler") {
  const Int q = 65537;
  Basis b = sample_qary(8, 3, q, 424242);
  REQUIRE(b.rank() == 8);
  REQUIRE(b.dim() == 8);
  // [I_{d-k}  A; 0  q I_k] with A in [0, q)^{(d-k) x k}
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      CHECK(b.rows(i, j) == (i == j ? 1 : 0));
  for (std::size_t i = 5; i < 8; ++i) {
    for (std::size_t j = 0; j < 5; ++j)
      CHECK(b.rows(i, j) == 0);
    for (std::size_t j = 5; j < 8; ++j)
      CHECK(b.rows(i, j) == (i == j ? q : 0));
  }
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 5; j < 8; ++j) {
      CHECK(b.rows(i, j) >= 0);
      CHECK(b.rows(i, j) < q);
    }
  // det = q^k
  Int det = det_bareiss(b.rows);
  CHECK(det == q * q * q);
  // deterministic in the seed
  CHECK(sample_qary(8, 3, q, 424242) == b);
  CHECK(!(sample_qary(8, 3, q, 424243) == b));

  CHECK_THROWS_AS(sample_qary(4, 5, q, 1), ParameterError);
  CHECK_THROWS_AS(sample_qary(4, 2, Int(0), 1), ParameterError);
}

TEST_CASE("prepare_instance") {
  Basis b = prepare_instance(14, 7, 65537, 4, 99);
  CHECK(b.rank() == 4);
  CHECK(b.dim() == 14);
  CHECK(prepare_instance(14, 7, 65537, 4, 99) == b);
  CHECK(volume_sq(b) != 0);
  CHECK_THROWS_AS(prepare_instance(14, 7, 65537, 15, 99), ParameterError);
}

TEST_CASE("basis text round trip") {
  Basis b = make_basis(2, 3, {1, -2, 3, 40, 5, -6});
  std::string s = basis_to_string(b);
  Basis back = basis_from_string(s);
  CHECK(back == b);
  CHECK(basis_from_string("[[1 2][3 4]]") == make_basis(2, 2, {1, 2, 3, 4}));
  CHECK(basis_from_string("[[1, 2]\n [3, 4]]") ==
        make_basis(2, 2, {1, 2, 3, 4}));
  CHECK_THROWS_AS(basis_from_string("[[1 2][3]]"), ParameterError);
  CHECK_THROWS_AS(basis_from_string("nonsense"), ParameterError);
}

TEST_CASE("scaled_from_rat") {
  RatMat m(2, 2);
  m(0, 0) = Rat(1, 2);
  m(0, 1) = Rat(-1, 2);
  m(1, 0) = Rat(0);
  m(1, 1) = Rat(1);
  ScaledBasis sb = scaled_from_rat(m);
  CHECK(sb.denom == 2);
  CHECK(sb.b.rows(0, 0) == 1);
  CHECK(sb.b.rows(0, 1) == -1);
  CHECK(sb.b.rows(1, 1) == 2);
  CHECK(sb.to_rat_rows() == m);
}

} // TEST_SUITE
