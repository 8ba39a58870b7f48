#include "doctest.h"

#include <sstream>

#include "cgf2/decompose.hpp"
#include "cgf2/oracle.hpp"
#include "cgf2/tableau.hpp"

using namespace cgf2;

namespace {

bool dense_equal(const DenseOperator& a, const DenseOperator& b) {
  if (a.n != b.n) return false;
  for (std::size_t k = 0; k < a.m.size(); ++k)
    if (std::abs(a.m[k] - b.m[k]) > 1e-12) return false;
  return true;
}

// Dense conjugation ground truth for the image of tau_{e_k}.
bool conjugation_matches(const CliffordTableau& t, const DenseOperator& unitary) {
  const std::size_t n = t.n();
  for (std::size_t k = 0; k < 2 * n; ++k) {
    PauliElement gen;
    gen.n = n;
    gen.a = BinVec::unit(2 * n, k);
    const DenseOperator lhs = unitary * dense_pauli(gen) * unitary.dagger();
    const DenseOperator rhs = dense_pauli(conjugate_pauli(t, gen));
    if (!dense_equal(lhs, rhs)) return false;
  }
  return true;
}

GateSeq random_gate_seq(std::size_t n, std::size_t len, std::uint64_t& rng) {
  GateSeq seq{n, {}};
  for (std::size_t k = 0; k < len; ++k) {
    switch (splitmix64(rng) % 4) {
      case 0: {
        std::vector<std::size_t> qs = {splitmix64(rng) % n};
        seq.gates.push_back(HadamardGate{qs});
        break;
      }
      case 1: {
        if (n == 1) {
          seq.gates.push_back(HadamardGate{{0}});
          break;
        }
        std::size_t c = splitmix64(rng) % n, t = splitmix64(rng) % n;
        if (c == t) t = (t + 1) % n;
        seq.gates.push_back(CnotGate{c, t});
        break;
      }
      case 2: {
        BinVec a(2 * n);
        const std::size_t q1 = splitmix64(rng) % n;
        std::size_t q2 = splitmix64(rng) % n;
        while (true) {
          a.set(q1, splitmix64(rng) & 1);
          a.set(n + q1, splitmix64(rng) & 1);
          a.set(q2, splitmix64(rng) & 1);
          a.set(n + q2, splitmix64(rng) & 1);
          if (!a.is_zero()) break;
        }
        seq.gates.push_back(ExpPi4Gate{a});
        break;
      }
      default:
        seq.gates.push_back(PauliGateOp{random_vector(2 * n, rng)});
        break;
    }
  }
  return seq;
}

}  // namespace

TEST_CASE("tableau validation") {
  CHECK(CliffordTableau::identity(2) ==
        CliffordTableau::checked(BinMat::identity(4), BinVec(4), BinVec(4)));

  const BinMat cnot_c = cnot_gate(2, 0, 1).c();
  CHECK_NOTHROW(CliffordTableau::checked(cnot_c, BinVec(4), BinVec(4)));

  CHECK_THROWS_AS(
      CliffordTableau::checked(BinMat::from_rows({{1, 1}, {0, 0}}), BinVec(2), BinVec(2)),
      NotSymplecticError);

  // the z-type exp gate has nonzero d; zero d must be rejected
  const CliffordTableau s = exp_pi4_gate(BinVec::from_bits({1, 0}));
  CHECK_FALSE(s.d().is_zero());
  CHECK_THROWS_AS(CliffordTableau::checked(s.c(), BinVec(2), s.h()),
                  PhaseVectorMismatchError);
  CHECK_NOTHROW(CliffordTableau::checked(s.c(), s.d(), s.h()));
}

TEST_CASE("conjugate_pauli worked examples") {
  const CliffordTableau id = CliffordTableau::identity(2);
  std::uint64_t rng = 3;
  for (int trial = 0; trial < 20; ++trial) {
    const PauliElement p{2, bool(splitmix64(rng) & 1), bool(splitmix64(rng) & 1),
                         random_vector(4, rng)};
    REQUIRE(conjugate_pauli(id, p) == p);
  }

  // Hadamard maps sigma_z to sigma_x with no sign
  const CliffordTableau h = hadamard_gate(1, {0});
  PauliElement z;
  z.n = 1;
  z.a = BinVec::from_bits({1, 0});
  const PauliElement hx = conjugate_pauli(h, z);
  CHECK(hx.a == BinVec::from_bits({0, 1}));
  CHECK_FALSE(hx.delta);
  CHECK_FALSE(hx.epsilon);

  // phase-type gate on sigma_x lands in the Y family, hermitian, per the oracle
  const CliffordTableau sgate = exp_pi4_gate(BinVec::from_bits({1, 0}));
  CHECK(sgate.c() == BinMat::from_rows({{1, 1}, {0, 1}}));
  CHECK(sgate.d() == BinVec::from_bits({0, 1}));
  CHECK(sgate.h().is_zero());
  PauliElement x;
  x.n = 1;
  x.a = BinVec::from_bits({0, 1});
  const PauliElement image = conjugate_pauli(sgate, x);
  CHECK(image.a == BinVec::from_bits({1, 1}));
  CHECK(is_hermitian(image));
  const DenseOperator u = dense_gate(ExpPi4Gate{BinVec::from_bits({1, 0})}, 1);
  CHECK(dense_equal(u * dense_pauli(x) * u.dagger(), dense_pauli(image)));

  CHECK_THROWS_AS(conjugate_pauli(h, PauliElement::identity(2)), DimMismatchError);
}

TEST_CASE("compose basics and oracle agreement") {
  std::uint64_t rng = 7;
  const CliffordTableau q = random_tableau(3, rng);
  const CliffordTableau id = CliffordTableau::identity(3);
  CHECK(compose(id, q) == q);
  CHECK(compose(q, id) == q);

  const CliffordTableau h = hadamard_gate(1, {0});
  CHECK(compose(h, h) == CliffordTableau::identity(1));

  for (int trial = 0; trial < 20; ++trial) {
    const GateSeq s1 = random_gate_seq(3, 4, rng);
    const GateSeq s2 = random_gate_seq(3, 4, rng);
    const CliffordTableau t1 = fold_tableau(s1);
    const CliffordTableau t2 = fold_tableau(s2);
    const DenseOperator u = dense_from_gates(s2) * dense_from_gates(s1);
    REQUIRE(conjugation_matches(compose(t2, t1), u));
  }
}

TEST_CASE("inverse") {
  CHECK(inverse(CliffordTableau::identity(3)) == CliffordTableau::identity(3));
  const CliffordTableau h = hadamard_gate(1, {0});
  CHECK(inverse(h) == h);

  std::uint64_t rng = 13;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + splitmix64(rng) % 6;
    const CliffordTableau q = random_tableau(n, rng);
    const CliffordTableau qi = inverse(q);
    REQUIRE(compose(qi, q) == CliffordTableau::identity(n));
    REQUIRE(compose(q, qi) == CliffordTableau::identity(n));
  }
}

TEST_CASE("compose and inverse outputs pass validation") {
  std::uint64_t rng = 17;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + splitmix64(rng) % 5;
    const CliffordTableau a = random_tableau(n, rng);
    const CliffordTableau b = random_tableau(n, rng);
    const CliffordTableau ab = compose(a, b);
    REQUIRE_NOTHROW(CliffordTableau::checked(ab.c(), ab.d(), ab.h()));
    const CliffordTableau ai = inverse(a);
    REQUIRE_NOTHROW(CliffordTableau::checked(ai.c(), ai.d(), ai.h()));
  }
}

TEST_CASE("compose is associative and acts as a group action") {
  std::uint64_t rng = 19;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + splitmix64(rng) % 4;
    const CliffordTableau a = random_tableau(n, rng);
    const CliffordTableau b = random_tableau(n, rng);
    const CliffordTableau c = random_tableau(n, rng);
    REQUIRE(compose(compose(a, b), c) == compose(a, compose(b, c)));

    PauliElement p{n, false, bool(splitmix64(rng) & 1), random_vector(2 * n, rng)};
    if (!is_hermitian(p)) p.delta = !p.delta;
    REQUIRE(conjugate_pauli(compose(a, b), p) ==
            conjugate_pauli(a, conjugate_pauli(b, p)));
  }
}

TEST_CASE("pauli_gate") {
  CHECK(pauli_gate(BinVec(4)) == CliffordTableau::identity(2));

  const CliffordTableau zgate = pauli_gate(BinVec::from_bits({1, 0}));
  CHECK(zgate.c() == BinMat::identity(2));
  CHECK(zgate.h() == BinVec::from_bits({0, 1}));

  // conjugating sigma_x by the z gate flips its sign
  PauliElement x;
  x.n = 1;
  x.a = BinVec::from_bits({0, 1});
  const PauliElement image = conjugate_pauli(zgate, x);
  CHECK(image.a == x.a);
  CHECK(image.epsilon);
  CHECK_FALSE(image.delta);
}

TEST_CASE("permutation_gate") {
  CHECK(permutation_gate({0, 1, 2}) == CliffordTableau::identity(3));

  const CliffordTableau swap01 = permutation_gate({1, 0});
  const BinMat pi = BinMat::from_rows({{0, 1}, {1, 0}});
  BinMat want(4, 4);
  want.paste(0, 0, pi);
  want.paste(2, 2, pi);
  CHECK(swap01.c() == want);
  CHECK(swap01.h().is_zero());

  CHECK_THROWS_AS(permutation_gate({0, 0}), std::invalid_argument);

  // conjugation permutes the letters of a Pauli string
  const CliffordTableau rot = permutation_gate({1, 2, 0});
  const PauliElement p = parse_pauli_string("+XYZ");
  const PauliElement image = conjugate_pauli(rot, p);
  CHECK(format_pauli_string(image) == "+ZXY");
}

TEST_CASE("cnot_gate") {
  const CliffordTableau cnot = cnot_gate(2, 0, 1);
  CHECK(cnot.c() == BinMat::from_rows({{1, 1, 0, 0},
                                       {0, 1, 0, 0},
                                       {0, 0, 1, 0},
                                       {0, 0, 1, 1}}));
  CHECK(cnot.h().is_zero());
  CHECK(compose(cnot, cnot) == CliffordTableau::identity(2));
  CHECK_THROWS_AS(cnot_gate(2, 1, 1), std::invalid_argument);

  CHECK(format_pauli_string(conjugate_pauli(cnot, parse_pauli_string("+XI"))) == "+XX");
  CHECK(format_pauli_string(conjugate_pauli(cnot, parse_pauli_string("+IZ"))) == "+ZZ");
  const DenseOperator u = dense_gate(CnotGate{0, 1}, 2);
  CHECK(conjugation_matches(cnot, u));
}

TEST_CASE("linear_gate") {
  CHECK(linear_gate(BinMat::identity(3)) == CliffordTableau::identity(3));
  CHECK(linear_gate(BinMat::from_rows({{1, 0}, {1, 1}})) == cnot_gate(2, 0, 1));

  const BinMat pi = BinMat::from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  CHECK(linear_gate(pi) == permutation_gate({1, 2, 0}));

  CHECK_THROWS_AS(linear_gate(BinMat::from_rows({{1, 1}, {1, 1}})), SingularMatrixError);
}

TEST_CASE("hadamard_gate") {
  CHECK(hadamard_gate(3, {}) == CliffordTableau::identity(3));

  const CliffordTableau all = hadamard_gate(3, {0, 1, 2});
  CHECK(all.c() == symplectic_form(3));
  CHECK(all.h().is_zero());

  CHECK(hadamard_gate(1, {0}).c() == BinMat::from_rows({{0, 1}, {1, 0}}));
}

TEST_CASE("exp_pi4_gate") {
  const CliffordTableau zq = exp_pi4_gate(BinVec::from_bits({1, 0}));
  CHECK(zq.c() == BinMat::from_rows({{1, 1}, {0, 1}}));
  CHECK(zq.h().is_zero());
  CHECK(zq.d() == BinVec::from_bits({0, 1}));

  const CliffordTableau xq = exp_pi4_gate(BinVec::from_bits({0, 1}));
  CHECK(xq.c() == BinMat::from_rows({{1, 0}, {1, 1}}));

  CHECK_THROWS_AS(exp_pi4_gate(BinVec(4)), std::invalid_argument);

  // C = I + a a^T P is symplectic for every nonzero a (n <= 2 exhaustively)
  for (std::size_t n = 1; n <= 2; ++n) {
    const BinMat p = symplectic_form(n);
    for (std::size_t bits = 1; bits < (std::size_t(1) << (2 * n)); ++bits) {
      BinVec a(2 * n);
      for (std::size_t k = 0; k < 2 * n; ++k)
        if ((bits >> k) & 1) a.set(k, true);
      const CliffordTableau g = exp_pi4_gate(a);
      REQUIRE(is_symplectic(g.c(), p));
      REQUIRE_NOTHROW(CliffordTableau::checked(g.c(), g.d(), g.h()));
    }
  }
}

TEST_CASE("exp_pi4_gate matches dense conjugation exhaustively at n <= 2") {
  for (std::size_t n = 1; n <= 2; ++n) {
    for (std::size_t bits = 1; bits < (std::size_t(1) << (2 * n)); ++bits) {
      BinVec a(2 * n);
      for (std::size_t k = 0; k < 2 * n; ++k)
        if ((bits >> k) & 1) a.set(k, true);
      const CliffordTableau g = exp_pi4_gate(a);
      PauliElement tau_bar;
      tau_bar.n = n;
      tau_bar.a = a;
      tau_bar.delta = (y_weight(a) % 2) != 0;
      DenseOperator u(n);
      const DenseOperator dense_tau = dense_pauli(tau_bar);
      const double s = 1.0 / std::sqrt(2.0);
      for (std::size_t k = 0; k < u.m.size(); ++k)
        u.m[k] = Complex{0.0, s} * dense_tau.m[k];
      for (std::size_t k = 0; k < u.dim(); ++k) u.at(k, k) += s;
      REQUIRE(conjugation_matches(g, u));
    }
  }
}

TEST_CASE("gate tableaux match dense conjugation for random circuits") {
  std::uint64_t rng = 23;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + splitmix64(rng) % 3;
    const GateSeq seq = random_gate_seq(n, 1 + splitmix64(rng) % 8, rng);
    REQUIRE(conjugation_matches(fold_tableau(seq), dense_from_gates(seq)));
  }
}

TEST_CASE("conjugation preserves commutation") {
  std::uint64_t rng = 29;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + splitmix64(rng) % 5;
    const CliffordTableau q = random_tableau(n, rng);
    const BinVec a = random_vector(2 * n, rng);
    const BinVec b = random_vector(2 * n, rng);
    REQUIRE(commutes(a, b) == commutes(mat_vec(q.c(), a), mat_vec(q.c(), b)));
  }
}

TEST_CASE("random_tableau produces valid tableaux across ranks") {
  std::uint64_t rng = 31;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const CliffordTableau q = random_tableau(n, rng);
      REQUIRE_NOTHROW(CliffordTableau::checked(q.c(), q.d(), q.h()));
    }
  }
}

TEST_CASE("tableau file format") {
  std::uint64_t rng = 37;
  const CliffordTableau q = random_tableau(3, rng);
  std::ostringstream out;
  write_tableau(out, q);
  std::istringstream in(out.str());
  std::size_t line = 0;
  CHECK(read_tableau(in, line) == q);

  // readers verify d
  std::string text = out.str();
  // the d line is the second-to-last line; flip its first character
  const std::size_t last_nl = text.rfind('\n', text.size() - 2);
  const std::size_t d_line_start = text.rfind('\n', last_nl - 1) + 1;
  text[d_line_start] = text[d_line_start] == '0' ? '1' : '0';
  std::istringstream corrupted(text);
  line = 0;
  CHECK_THROWS_AS(read_tableau(corrupted, line), PhaseVectorMismatchError);
}
