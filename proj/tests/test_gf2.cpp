#include "doctest.h"

#include <sstream>

#include "cgf2/gf2.hpp"
#include "cgf2/tableau.hpp"

using namespace cgf2;

namespace {

const BinMat kCnotC = BinMat::from_rows({{1, 1, 0, 0},
                                         {0, 1, 0, 0},
                                         {0, 0, 1, 0},
                                         {0, 0, 1, 1}});

}  // namespace

TEST_CASE("struct matrices: P = U + U^T, P symmetric, P^2 = I") {
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto sm = StructMatrices::make(n);
    CHECK(mat_add(sm.u, transpose(sm.u)) == sm.p);
    CHECK(transpose(sm.p) == sm.p);
    CHECK(mat_mul(sm.p, sm.p) == BinMat::identity(2 * n));
  }
}

TEST_CASE("mat_mul basics") {
  const BinMat m = BinMat::from_rows({{1, 0, 1, 1},
                                      {0, 1, 1, 0},
                                      {1, 1, 0, 0},
                                      {0, 0, 0, 1}});
  CHECK(mat_mul(BinMat::identity(4), m) == m);

  const BinMat p1 = symplectic_form(1);
  CHECK(p1 == BinMat::from_rows({{0, 1}, {1, 0}}));
  CHECK(mat_mul(p1, p1) == BinMat::identity(2));

  CHECK(mat_mul(kCnotC, kCnotC) == BinMat::identity(4));

  CHECK_THROWS_AS(mat_mul(BinMat(2, 3), BinMat(2, 3)), DimMismatchError);
}

TEST_CASE("mat_mul agrees with schoolbook on random shapes") {
  std::uint64_t rng = 7;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t r = 1 + splitmix64(rng) % 70;
    const std::size_t k = 1 + splitmix64(rng) % 70;
    const std::size_t c = 1 + splitmix64(rng) % 70;
    const BinMat a = random_matrix(r, k, rng);
    const BinMat b = random_matrix(k, c, rng);
    const BinMat fast = mat_mul(a, b);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        bool acc = false;
        for (std::size_t t = 0; t < k; ++t) acc ^= a.get(i, t) & b.get(t, j);
        REQUIRE(fast.get(i, j) == acc);
      }
  }
}

TEST_CASE("four-russians path matches naive on large sizes") {
  std::uint64_t rng = 99;
  const BinMat a = random_matrix(400, 520, rng);
  const BinMat b = random_matrix(520, 300, rng);
  const BinMat fast = mat_mul(a, b);
  // Re-run through the schoolbook on a sample of entries.
  for (int probe = 0; probe < 400; ++probe) {
    const std::size_t i = splitmix64(rng) % 400;
    const std::size_t j = splitmix64(rng) % 300;
    bool acc = false;
    for (std::size_t t = 0; t < 520; ++t) acc ^= a.get(i, t) & b.get(t, j);
    REQUIRE(fast.get(i, j) == acc);
  }
}

TEST_CASE("four-russians path across the output-strip boundary") {
  // more than 64 words of output columns forces multiple strips
  std::uint64_t rng = 101;
  const std::size_t k = 300, cols = 64 * 64 + 37;
  const BinMat a = random_matrix(350, k, rng);
  const BinMat b = random_matrix(k, cols, rng);
  const BinMat fast = mat_mul(a, b);
  for (int probe = 0; probe < 400; ++probe) {
    const std::size_t i = splitmix64(rng) % 350;
    const std::size_t j = splitmix64(rng) % cols;
    bool acc = false;
    for (std::size_t t = 0; t < k; ++t) acc ^= a.get(i, t) & b.get(t, j);
    REQUIRE(fast.get(i, j) == acc);
  }
}

TEST_CASE("transpose") {
  std::uint64_t rng = 3;
  for (std::size_t rows : {1u, 5u, 64u, 65u, 130u}) {
    for (std::size_t cols : {1u, 3u, 64u, 127u}) {
      const BinMat a = random_matrix(rows, cols, rng);
      const BinMat t = transpose(a);
      REQUIRE(t.rows() == cols);
      REQUIRE(t.cols() == rows);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) REQUIRE(a.get(i, j) == t.get(j, i));
      REQUIRE(transpose(t) == a);
    }
  }
}

TEST_CASE("mat_inverse basics") {
  CHECK(mat_inverse(BinMat::identity(3)) == BinMat::identity(3));

  const BinMat u = BinMat::from_rows({{1, 1}, {0, 1}});
  CHECK(mat_inverse(u) == u);

  try {
    mat_inverse(BinMat::from_rows({{1, 1}, {1, 1}}));
    FAIL("expected SingularMatrixError");
  } catch (const SingularMatrixError& e) {
    CHECK(e.rank_found == 1);
  }
}

TEST_CASE("symplectic inverse equals P C^T P") {
  std::uint64_t rng = 21;
  const StructMatrices sm = StructMatrices::make(4);
  for (int trial = 0; trial < 50; ++trial) {
    const BinMat c = random_tableau(4, rng).c();
    const BinMat inv = mat_inverse(c);
    CHECK(mat_mul(c, inv) == BinMat::identity(8));
    CHECK(inv == mat_mul(sm.p, mat_mul(transpose(c), sm.p)));
    CHECK(is_symplectic(inv, sm.p));
    CHECK(mat_inverse(inv) == c);
  }
}

TEST_CASE("symplectic inverse property across sizes") {
  std::uint64_t rng = 2024;
  for (std::size_t n = 1; n <= 8; ++n) {
    const BinMat p = symplectic_form(n);
    for (int trial = 0; trial < 130; ++trial) {
      const BinMat c = random_tableau(n, rng).c();
      REQUIRE(is_symplectic(c, p));
      const BinMat inv = mat_inverse(c);
      REQUIRE(inv == mat_mul(p, mat_mul(transpose(c), p)));
      REQUIRE(is_symplectic(inv, p));
    }
  }
}

TEST_CASE("lows") {
  CHECK(lows(BinMat::identity(3)).is_zero());
  CHECK(lows(BinMat::from_rows({{1, 1}, {1, 1}})) == BinMat::from_rows({{0, 0}, {1, 0}}));

  std::uint64_t rng = 5;
  for (std::size_t n : {1u, 2u, 7u, 65u}) {
    const BinMat a = random_matrix(n, n, rng);
    BinMat rebuilt = mat_add(lows(a), transpose(lows(transpose(a))));
    for (std::size_t k = 0; k < n; ++k)
      if (a.get(k, k)) rebuilt.set(k, k, true);
    REQUIRE(rebuilt == a);
  }
}

TEST_CASE("diag_vec") {
  CHECK(diag_vec(BinMat::identity(4)).popcount() == 4);
  CHECK(diag_vec(BinMat(3, 3)).is_zero());

  // x^T S x = x^T diag(S) for symmetric S
  std::uint64_t rng = 11;
  for (std::size_t n = 1; n <= 4; ++n) {
    const BinMat s = random_symmetric(n, rng);
    const BinVec d = diag_vec(s);
    for (std::size_t bits = 0; bits < (std::size_t(1) << n); ++bits) {
      BinVec x(n);
      for (std::size_t k = 0; k < n; ++k)
        if ((bits >> k) & 1) x.set(k, true);
      const bool full = mat_vec(s, x).dot(x);
      REQUIRE(full == d.dot(x));
    }
  }
}

TEST_CASE("is_symplectic") {
  const BinMat p2 = symplectic_form(2);
  CHECK(is_symplectic(BinMat::identity(4), p2));
  CHECK(is_symplectic(kCnotC, p2));
  CHECK_FALSE(is_symplectic(BinMat::from_rows({{1, 1}, {0, 0}}), symplectic_form(1)));
}

TEST_CASE("kernel_range_bases") {
  SUBCASE("zero matrix") {
    const auto kr = kernel_range_bases(BinMat(2, 2));
    CHECK(kr.rank == 0);
    CHECK(kr.kernel == BinMat::identity(2));
    CHECK(kr.range.cols() == 0);
  }
  SUBCASE("identity") {
    const auto kr = kernel_range_bases(BinMat::identity(5));
    CHECK(kr.rank == 5);
    CHECK(kr.kernel.cols() == 0);
    CHECK(kr.range == BinMat::identity(5));
  }
  SUBCASE("rank one") {
    const BinMat a = BinMat::from_rows({{1, 1}, {1, 1}});
    const auto kr = kernel_range_bases(a);
    CHECK(kr.rank == 1);
    REQUIRE(kr.kernel.cols() == 1);
    CHECK(kr.kernel.column(0) == BinVec::from_bits({1, 1}));
    // exhaustive: A x = 0 exactly for x in {0, [1,1]}
    for (std::size_t bits = 0; bits < 4; ++bits) {
      BinVec x(2);
      if (bits & 1) x.set(0, true);
      if (bits & 2) x.set(1, true);
      const bool in_kernel = mat_vec(a, x).is_zero();
      CHECK(in_kernel == (bits == 0 || bits == 3));
    }
  }
  SUBCASE("random: kernel annihilated, rank consistent") {
    std::uint64_t rng = 13;
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t r = 1 + splitmix64(rng) % 30;
      const std::size_t c = 1 + splitmix64(rng) % 30;
      const BinMat a = random_matrix(r, c, rng);
      const auto kr = kernel_range_bases(a);
      REQUIRE(kr.rank + kr.kernel.cols() == c);
      if (kr.kernel.cols() > 0)
        REQUIRE(mat_mul(a, kr.kernel).is_zero());
      REQUIRE(mat_rank(kr.kernel) == kr.kernel.cols());
      REQUIRE(mat_rank(kr.range) == kr.rank);
      REQUIRE(mat_rank(a) == kr.rank);
    }
  }
}

TEST_CASE("complete_to_invertible") {
  CHECK(complete_to_invertible(BinMat(2, 0)) == BinMat::identity(2));

  BinMat one_col(2, 1);
  one_col.set(0, 0, true);
  one_col.set(1, 0, true);
  CHECK(complete_to_invertible(one_col) == BinMat::from_rows({{1, 0}, {1, 1}}));

  const BinMat inv = BinMat::from_rows({{0, 1}, {1, 1}});
  CHECK(complete_to_invertible(inv) == inv);

  CHECK_THROWS_AS(complete_to_invertible(BinMat::from_rows({{1, 1}, {1, 1}})),
                  SingularMatrixError);

  std::uint64_t rng = 17;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + splitmix64(rng) % 20;
    const BinMat base = random_invertible(n, rng);
    const std::size_t keep = splitmix64(rng) % (n + 1);
    const BinMat cols = base.submatrix(0, n, 0, keep);
    const BinMat full = complete_to_invertible(cols);
    REQUIRE(mat_rank(full) == n);
    for (std::size_t j = 0; j < keep; ++j) REQUIRE(full.column(j) == cols.column(j));
    // inverse is an involution on invertible inputs
    REQUIRE(mat_inverse(mat_inverse(full)) == full);
  }
}

TEST_CASE("quad_form_lows matches materialized lows") {
  std::uint64_t rng = 23;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + splitmix64(rng) % 70;
    const BinMat m = random_matrix(n, n, rng);
    const BinVec x = random_vector(n, rng);
    const bool fast = quad_form_lows(m, x);
    const bool slow = mat_vec(lows(m), x).dot(x);
    REQUIRE(fast == slow);
  }
}

TEST_CASE("vector helpers") {
  std::uint64_t rng = 31;
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t r = 1 + splitmix64(rng) % 40;
    const std::size_t c = 1 + splitmix64(rng) % 40;
    const BinMat a = random_matrix(r, c, rng);
    const BinVec s = random_vector(r, rng);
    REQUIRE(tmat_vec(a, s) == mat_vec(transpose(a), s));
    const BinMat b = random_matrix(r, c, rng);
    REQUIRE(diag_of_at_product(a, b) == diag_vec(mat_mul(transpose(a), b)));
  }
}

TEST_CASE("matrix text format round-trip") {
  std::uint64_t rng = 37;
  const BinMat m = random_matrix(5, 9, rng);
  std::ostringstream out;
  write_matrix(out, m);
  std::istringstream in(out.str());
  std::size_t line = 0;
  CHECK(read_matrix(in, line) == m);

  std::istringstream bad("2 2\n01\n0\n");
  line = 0;
  CHECK_THROWS_AS(read_matrix(bad, line), ParseError);
}
