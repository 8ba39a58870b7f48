#include "doctest.h"

#include <array>

#include "cgf2/oracle.hpp"
#include "cgf2/pauli.hpp"
#include "cgf2/tableau.hpp"

using namespace cgf2;

namespace {

bool dense_equal(const DenseOperator& a, const DenseOperator& b) {
  if (a.n != b.n) return false;
  for (std::size_t k = 0; k < a.m.size(); ++k)
    if (a.m[k] != b.m[k]) return false;  // entries are exact small integers
  return true;
}

PauliElement make(std::size_t n, std::uint64_t bits, bool delta, bool epsilon) {
  BinVec a(2 * n);
  for (std::size_t k = 0; k < 2 * n; ++k)
    if ((bits >> k) & 1) a.set(k, true);
  return PauliElement{n, delta, epsilon, std::move(a)};
}

}  // namespace

TEST_CASE("pauli_mul worked examples") {
  // sigma_z sigma_x = tau_z tau_x = tau_y with no phase (tau_11 = i sigma_y)
  const PauliElement z = make(1, 0b01, false, false);
  const PauliElement x = make(1, 0b10, false, false);
  const PauliElement zx = pauli_mul(z, x);
  CHECK(zx.a == BinVec::from_bits({1, 1}));
  CHECK_FALSE(zx.delta);
  CHECK_FALSE(zx.epsilon);

  const PauliElement xz = pauli_mul(x, z);
  CHECK(xz.a == BinVec::from_bits({1, 1}));
  CHECK_FALSE(xz.delta);
  CHECK(xz.epsilon);  // the a2^T U a1 sign

  std::uint64_t rng = 5;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + splitmix64(rng) % 4;
    PauliElement p{n, false, bool(splitmix64(rng) & 1), random_vector(2 * n, rng)};
    if (!is_hermitian(p)) p.delta = !p.delta;
    const PauliElement sq = pauli_mul(p, p);
    REQUIRE(sq.a.is_zero());
    REQUIRE_FALSE(sq.delta);
    REQUIRE_FALSE(sq.epsilon);
  }

  CHECK_THROWS_AS(pauli_mul(make(1, 0, false, false), make(2, 0, false, false)),
                  DimMismatchError);
}

TEST_CASE("pauli_mul matches the dense 2x2 product exhaustively") {
  // all 4 vectors x 2 delta x 2 epsilon on both factors: 64 ordered pairs
  for (std::uint64_t bits1 = 0; bits1 < 4; ++bits1)
    for (int d1 = 0; d1 < 2; ++d1)
      for (int e1 = 0; e1 < 2; ++e1)
        for (std::uint64_t bits2 = 0; bits2 < 4; ++bits2)
          for (int d2 = 0; d2 < 2; ++d2)
            for (int e2 = 0; e2 < 2; ++e2) {
              const PauliElement p1 = make(1, bits1, d1, e1);
              const PauliElement p2 = make(1, bits2, d2, e2);
              const DenseOperator want = dense_pauli(p1) * dense_pauli(p2);
              const DenseOperator got = dense_pauli(pauli_mul(p1, p2));
              REQUIRE(dense_equal(got, want));
            }
}

TEST_CASE("pauli_mul matches the dense product on random pairs, n = 2, 3") {
  std::uint64_t rng = 11;
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const PauliElement p1{n, bool(splitmix64(rng) & 1), bool(splitmix64(rng) & 1),
                          random_vector(2 * n, rng)};
    const PauliElement p2{n, bool(splitmix64(rng) & 1), bool(splitmix64(rng) & 1),
                          random_vector(2 * n, rng)};
    REQUIRE(dense_equal(dense_pauli(pauli_mul(p1, p2)),
                        dense_pauli(p1) * dense_pauli(p2)));
  }
}

TEST_CASE("pauli_mul is associative") {
  std::uint64_t rng = 17;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + splitmix64(rng) % 4;
    auto rand_pauli = [&] {
      return PauliElement{n, bool(splitmix64(rng) & 1), bool(splitmix64(rng) & 1),
                          random_vector(2 * n, rng)};
    };
    const PauliElement p1 = rand_pauli(), p2 = rand_pauli(), p3 = rand_pauli();
    REQUIRE(pauli_mul(pauli_mul(p1, p2), p3) == pauli_mul(p1, pauli_mul(p2, p3)));
  }
}

TEST_CASE("commutes") {
  const BinVec z = BinVec::from_bits({1, 0});
  const BinVec x = BinVec::from_bits({0, 1});
  CHECK(commutes(z, z));
  CHECK_FALSE(commutes(z, x));
  CHECK(commutes(BinVec::from_bits({0, 0, 1, 1}), BinVec::from_bits({1, 1, 0, 0})));

  // consistency with the product rule: swapping factors flips epsilon by b^T P a
  std::uint64_t rng = 23;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + splitmix64(rng) % 4;
    const PauliElement p1{n, false, false, random_vector(2 * n, rng)};
    const PauliElement p2{n, false, false, random_vector(2 * n, rng)};
    const PauliElement ab = pauli_mul(p1, p2);
    const PauliElement ba = pauli_mul(p2, p1);
    REQUIRE(ab.a == ba.a);
    REQUIRE(ab.delta == ba.delta);
    REQUIRE((ab.epsilon == ba.epsilon) == commutes(p1.a, p2.a));
  }
}

TEST_CASE("is_hermitian") {
  CHECK(is_hermitian(PauliElement::identity(3)));
  CHECK_FALSE(is_hermitian(make(1, 0b11, false, false)));  // tau_11 is skew
  CHECK(is_hermitian(make(1, 0b11, true, false)));         // i tau_11

  // against the dense adjoint
  std::uint64_t rng = 29;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + splitmix64(rng) % 3;
    const PauliElement p{n, bool(splitmix64(rng) & 1), bool(splitmix64(rng) & 1),
                         random_vector(2 * n, rng)};
    const DenseOperator dense = dense_pauli(p);
    REQUIRE(is_hermitian(p) == dense_equal(dense, dense.dagger()));
  }
}

TEST_CASE("hermiticity is preserved by conjugation") {
  std::uint64_t rng = 31;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + splitmix64(rng) % 4;
    const CliffordTableau q = random_tableau(n, rng);
    PauliElement p{n, false, false, random_vector(2 * n, rng)};
    if (!is_hermitian(p)) p.delta = !p.delta;
    REQUIRE(is_hermitian(conjugate_pauli(q, p)));
  }
}

TEST_CASE("pauli string round-trip and sign convention") {
  CHECK(format_pauli_string(PauliElement::identity(2)) == "+II");

  const PauliElement y = parse_pauli_string("+Y");
  CHECK(y.a == BinVec::from_bits({1, 1}));
  CHECK(y.delta);
  CHECK(y.epsilon);  // +Y = i^1 (-1)^1 tau_11

  // XX . ZZ = -YY in sigma letters
  const PauliElement xx = parse_pauli_string("+XX");
  const PauliElement zz = parse_pauli_string("+ZZ");
  CHECK(format_pauli_string(pauli_mul(xx, zz)) == "-YY");

  // parse/format round-trip over random hermitian elements
  std::uint64_t rng = 37;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + splitmix64(rng) % 6;
    PauliElement p{n, false, bool(splitmix64(rng) & 1), random_vector(2 * n, rng)};
    p.delta = (y_weight(p.a) % 2) != 0;
    const std::string text = format_pauli_string(p);
    REQUIRE(parse_pauli_string(text) == p);
  }

  CHECK_THROWS_AS(parse_pauli_string("XX"), ParseError);
  CHECK_THROWS_AS(parse_pauli_string("+XQ"), ParseError);
  CHECK_THROWS_AS(format_pauli_string(make(1, 0b11, false, false)),
                  std::invalid_argument);
}

TEST_CASE("printed sign matches the sigma tensor built from the letters") {
  std::uint64_t rng = 41;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + splitmix64(rng) % 3;
    PauliElement p{n, false, bool(splitmix64(rng) & 1), random_vector(2 * n, rng)};
    p.delta = (y_weight(p.a) % 2) != 0;
    const std::string text = format_pauli_string(p);

    const Complex i{0.0, 1.0};
    const std::array<std::array<Complex, 4>, 4> tables = {{
        {1, 0, 0, 1},   // I
        {0, 1, 1, 0},   // X
        {0, -i, i, 0},  // Y
        {1, 0, 0, -1},  // Z
    }};
    auto letter_index = [](char ch) {
      return ch == 'I' ? 0 : ch == 'X' ? 1 : ch == 'Y' ? 2 : 3;
    };
    DenseOperator want(n);
    const std::size_t dim = want.dim();
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) {
        Complex v = text[0] == '-' ? -1.0 : 1.0;
        for (std::size_t q = 0; q < n && v != Complex{0.0, 0.0}; ++q) {
          const std::size_t rb = (r >> (n - 1 - q)) & 1;
          const std::size_t cb = (c >> (n - 1 - q)) & 1;
          v *= tables[letter_index(text[q + 1])][2 * rb + cb];
        }
        want.at(r, c) = v;
      }
    REQUIRE(dense_equal(dense_pauli(p), want));
  }
}

TEST_CASE("y_weight counts Y letters") {
  CHECK(y_weight(parse_pauli_string("+XYZY").a) == 2);
  CHECK(y_weight(BinVec(6)) == 0);
}
