#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <variant>
#include <vector>

#include "cgf2/tableau.hpp"

namespace cgf2 {

/// exp(i pi/4 tau_abar) restricted to a support of at most two qubits;
/// the workhorse two-qubit primitive.
struct ExpPi4Gate {
  BinVec a;
  bool operator==(const ExpPi4Gate&) const = default;
};

struct CnotGate {
  std::size_t control, target;
  bool operator==(const CnotGate&) const = default;
};

struct SwapGate {
  std::size_t q1, q2;
  bool operator==(const SwapGate&) const = default;
};

struct HadamardGate {
  std::vector<std::size_t> qubits;
  bool operator==(const HadamardGate&) const = default;
};

struct PauliGateOp {
  BinVec a;
  bool operator==(const PauliGateOp&) const = default;
};

/// Arbitrary one-qubit Clifford: 2x2 symplectic block (bit k is entry
/// (k/2, k%2)), derived d bits and h bits, each over the (z, x) pair.
struct SingleQubitGate {
  std::size_t q;
  std::uint8_t c_bits, d_bits, h_bits;
  bool operator==(const SingleQubitGate&) const = default;
};

using PrimitiveGate =
    std::variant<ExpPi4Gate, CnotGate, SwapGate, HadamardGate, PauliGateOp,
                 SingleQubitGate>;

/// Ordered gate list; the leftmost element is applied first.
struct GateSeq {
  std::size_t n = 0;
  std::vector<PrimitiveGate> gates;
};

CliffordTableau tableau_of(const PrimitiveGate& gate, std::size_t n);

/// Tableau of the whole sequence (product of the gates' tableaux).
CliffordTableau fold_tableau(const GateSeq& seq);

/// Qubits a gate acts on, ascending.
std::vector<std::size_t> gate_support(const PrimitiveGate& gate, std::size_t n);

std::size_t two_qubit_count(const GateSeq& seq);

/// Expands a one-qubit Clifford into at most three one-qubit ExpPi4 gates
/// with the same tableau, from a table built once by exhaustive search.
std::vector<ExpPi4Gate> expand_single_qubit(const SingleQubitGate& gate, std::size_t n);

struct SymplecticBlocks {
  BinMat t1, t2;      // invertible n x n
  BinMat z1, z2, z3;  // symmetric r x r, r x r, (n-r) x (n-r)
  BinMat v1, v2;      // (n-r) x r
  std::size_t r = 0;

  /// The two symmetric n x n matrices of the quadratic-phase factors:
  /// z_br = [[Z3, V1],[V1^T, Z1]], z_bc = [[0, V2],[V2^T, Z2]].
  BinMat z_br() const;
  BinMat z_bc() const;
};

/// Factors a symplectic C into two linear factors, two quadratic-phase
/// factors and a partial Hadamard (rank r of the lower-left block).
SymplecticBlocks symplectic_block_decompose(const BinMat& c);

/// Product of the five factors; equals the decomposed input.
BinMat reassemble_blocks(const SymplecticBlocks& blocks);

/// Gauss elimination of an invertible R into CNOT and swap gates realizing
/// |x> -> |R x>.
GateSeq linear_to_cnots(const BinMat& r);

/// Realizes C = [[I, Z],[0, I]] for symmetric Z: one two-qubit ExpPi4 per
/// off-diagonal one, then one-qubit ExpPi4 corrections for the diagonal
/// (including the by-product diagonal of the two-qubit gates).
GateSeq zmatrix_to_gates(const BinMat& z);

enum class FixSide { Left, Right };

/// Pauli gate correcting the phase vector of a realized tableau to
/// target_h. Right: a = P(h + h'), applied before the sequence. Left:
/// a = C P(h + h'), applied after it.
PrimitiveGate fix_h(const CliffordTableau& current, const BinVec& target_h,
                    FixSide side = FixSide::Right);

using Scheme1Observer = std::function<void(std::size_t pair, const BinMat& working)>;

/// Column-reduction synthesis: reduces C pair by pair with two-qubit ExpPi4
/// gates, a swap and a one-qubit fix per pair, then corrects h. Recomposing
/// the result reproduces the tableau exactly.
GateSeq decompose_scheme1(const CliffordTableau& q, const Scheme1Observer& observer = {});

/// Partial variant: only the designated column pairs are realized; the
/// recomposed tableau matches columns m and n+m of C for each designated m.
/// h is not constrained.
GateSeq decompose_scheme1_columns(const CliffordTableau& q,
                                  const std::vector<std::size_t>& pairs);

/// Block-decomposition synthesis: CNOT circuits for the linear factors,
/// ExpPi4 circuits for the quadratic-phase factors, one Hadamard layer,
/// then the h correction.
GateSeq decompose_scheme2(const CliffordTableau& q);

/// Circuit text format: "n <n>" header, one gate per line ("H q...",
/// "CNOT c t", "SWAP a b", "PAULI <2n bits>", "EXP <2n bits>",
/// "SQ q <4 bits C> <2 bits d> <2 bits h>"), '#' comments. The leftmost
/// line is applied first.
GateSeq read_circuit(std::istream& in);
void write_circuit(std::ostream& out, const GateSeq& seq, bool with_summary = false);
std::string format_gate(const PrimitiveGate& gate);

}  // namespace cgf2
