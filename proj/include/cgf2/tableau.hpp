#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cgf2/gf2.hpp"
#include "cgf2/pauli.hpp"

namespace cgf2 {

struct NotSymplecticError : std::runtime_error {
  std::size_t row, col;
  NotSymplecticError(std::size_t i, std::size_t j)
      : std::runtime_error("matrix is not symplectic (first bad entry " +
                           std::to_string(i) + "," + std::to_string(j) + ")"),
        row(i), col(j) {}
};

struct PhaseVectorMismatchError : std::runtime_error {
  std::size_t index;
  explicit PhaseVectorMismatchError(std::size_t k)
      : std::runtime_error("phase vector d differs from diag(C^T U C) at index " +
                           std::to_string(k)),
        index(k) {}
};

/// Binary tableau of a Clifford operation: the images of the 2n generator
/// Paulis tau_{e_k} are i^{d_k} (-1)^{h_k} tau_{c_k}, with the c_k as the
/// columns of the symplectic matrix C. Represents the operation up to a
/// global phase. Immutable after construction.
class CliffordTableau {
 public:
  CliffordTableau() = default;

  /// Validating constructor; rejects non-symplectic C and inconsistent d.
  static CliffordTableau checked(BinMat c, BinVec d, BinVec h);

  /// Trusts the caller to provide a valid (C, d, h) triple. Module internals
  /// only; everything public goes through checked() or a gate constructor.
  static CliffordTableau unchecked(BinMat c, BinVec d, BinVec h);

  static CliffordTableau identity(std::size_t n);

  std::size_t n() const { return n_; }
  const BinMat& c() const { return c_; }
  const BinVec& d() const { return d_; }
  const BinVec& h() const { return h_; }

  /// The padded (2n+1)-dimensional matrix [[C,0],[d^T,1]].
  BinMat cbar() const;

  bool operator==(const CliffordTableau&) const = default;

 private:
  std::size_t n_ = 0;
  BinMat c_;
  BinVec d_;
  BinVec h_;
};

/// Image of p under X -> Q X Q^dagger, with exact phase tracking.
PauliElement conjugate_pauli(const CliffordTableau& q, const PauliElement& p);

/// Tableau of the product Q2 Q1 (Q1 acts first).
CliffordTableau compose(const CliffordTableau& q2, const CliffordTableau& q1);

CliffordTableau inverse(const CliffordTableau& q);

// --- special gate constructors ---

/// Q = tau_a as a Clifford operation: C = I, h = P a.
CliffordTableau pauli_gate(const BinVec& a);

/// Qubit permutation; perm[q] is where qubit q moves. C = blockdiag(Pi, Pi).
CliffordTableau permutation_gate(const std::vector<std::size_t>& perm);

CliffordTableau cnot_gate(std::size_t n, std::size_t control, std::size_t target);

/// Index-space map |x> -> |R x| for invertible R: C = blockdiag(R^-T, R).
CliffordTableau linear_gate(const BinMat& r);

CliffordTableau hadamard_gate(std::size_t n, const std::vector<std::size_t>& qubits);

/// exp(i pi/4 tau_abar) for nonzero a: C = I + a a^T P, h = C^T U a.
CliffordTableau exp_pi4_gate(const BinVec& a);

/// Diagonal-type Clifford with C = [[I, Z],[0, I]] and h = 0, Z symmetric.
CliffordTableau quadratic_phase_gate(const BinMat& z);

/// Random tableau from the block parametrization (two linear factors, two
/// quadratic-phase factors, one partial Hadamard) plus a random h. Covers
/// the whole group but is not claimed uniform over it.
CliffordTableau random_tableau(std::size_t n, std::uint64_t& rng_state);

/// Text format: "n <n>", 2n rows of 2n bits for C, one line of 2n bits for
/// d, one line for h. Readers re-derive and verify d.
CliffordTableau read_tableau(std::istream& in, std::size_t& line_no);
void write_tableau(std::ostream& out, const CliffordTableau& t);

}  // namespace cgf2
