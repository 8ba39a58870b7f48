#pragma once

#include <complex>
#include <vector>

#include "cgf2/decompose.hpp"
#include "cgf2/stabilizer.hpp"

namespace cgf2 {

/// Dense ground truth is desk scale only; these caps bound the largest
/// operators and Pauli matrices the oracle will materialize.
inline constexpr std::size_t kMaxDenseOperatorQubits = 10;
inline constexpr std::size_t kMaxDensePauliQubits = 12;

struct CapExceededError : std::runtime_error {
  CapExceededError(std::size_t n, std::size_t cap)
      : std::runtime_error("dense oracle refuses " + std::to_string(n) +
                           " qubits (cap " + std::to_string(cap) + ")") {}
};

using Complex = std::complex<double>;
using StateVec = std::vector<Complex>;

struct DenseOperator {
  std::size_t n = 0;
  std::vector<Complex> m;  // 2^n x 2^n, row-major

  DenseOperator() = default;
  explicit DenseOperator(std::size_t qubits)
      : n(qubits), m((std::size_t(1) << qubits) * (std::size_t(1) << qubits), 0.0) {}

  std::size_t dim() const { return std::size_t(1) << n; }
  Complex& at(std::size_t r, std::size_t c) { return m[r * dim() + c]; }
  const Complex& at(std::size_t r, std::size_t c) const { return m[r * dim() + c]; }

  static DenseOperator identity(std::size_t qubits);
  DenseOperator dagger() const;
  StateVec apply(const StateVec& psi) const;
  double unitarity_deviation() const;  // max |(A A^dag - I)_ij|
};

DenseOperator operator*(const DenseOperator& a, const DenseOperator& b);

DenseOperator dense_pauli(const PauliElement& p);
DenseOperator dense_gate(const PrimitiveGate& gate, std::size_t n);
DenseOperator dense_from_gates(const GateSeq& seq);

/// Block data behind the closed-form matrix of a tableau: two linear
/// factors, two symmetric phase matrices with their diagonals, the Hadamard
/// rank, and the residual phase correction split as [t; T2^T h_bc].
struct ClosedFormFactors {
  BinMat t1, t2;
  BinMat z_br, z_bc;
  BinVec d_br, d_bc;
  BinVec h_bc, t;
  std::size_t r = 0;
};

ClosedFormFactors closed_form_factors(const CliffordTableau& q);

/// The closed-form dense matrix of a Clifford tableau: a triple sum of
/// basis outer products with binary quadratic-form phases, normalized by
/// 1/sqrt(2^r). Agrees with dense_from_gates of either decomposition up to
/// one global phase.
DenseOperator dense_from_tableau(const CliffordTableau& q);

/// Diagonal Clifford with entries (-i)^{d.x} (-1)^{x^T lows(Z + d d^T) x};
/// requires symmetric Z and d = diag(Z).
DenseOperator diagonal_clifford_matrix(const BinMat& z, const BinVec& d);

/// State vector from the stabilizer projector product, seeded over standard
/// basis vectors until the projection survives.
StateVec projector_state(const StabilizerRep& state);

struct PhaseComparison {
  bool equal = false;
  double max_deviation = 0.0;
};

/// Rescales u by the ratio at v's first largest-magnitude coordinate and
/// compares entrywise.
PhaseComparison equal_up_to_phase(const StateVec& u, const StateVec& v,
                                  double tol = 1e-10);
PhaseComparison equal_up_to_phase(const DenseOperator& u, const DenseOperator& v,
                                  double tol = 1e-10);

}  // namespace cgf2
