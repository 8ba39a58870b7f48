#pragma once

#include <string>

#include "cgf2/gf2.hpp"

namespace cgf2 {

/// A Pauli group element i^delta (-1)^epsilon tau_a with a in Z_2^{2n}.
/// The tau basis uses tau_11 = i sigma_y, so products stay binary; the
/// exponent of i is a single bit, never 0..3.
struct PauliElement {
  std::size_t n = 0;
  bool delta = false;
  bool epsilon = false;
  BinVec a;

  static PauliElement identity(std::size_t n) {
    return PauliElement{n, false, false, BinVec(2 * n)};
  }
  static PauliElement from_vec(BinVec a2n, bool delta = false, bool epsilon = false) {
    if (a2n.len() % 2 != 0) throw DimMismatchError("pauli vector must have even length");
    std::size_t n = a2n.len() / 2;
    return PauliElement{n, delta, epsilon, std::move(a2n)};
  }

  bool operator==(const PauliElement&) const = default;
};

PauliElement pauli_mul(const PauliElement& p1, const PauliElement& p2);

/// True iff the underlying Pauli operators commute: b^T P a = 0.
bool commutes(const BinVec& a, const BinVec& b);

bool is_hermitian(const PauliElement& p);

/// Number of qubits carrying a Y letter, i.e. positions with both the z and
/// x bit set.
std::size_t y_weight(const BinVec& a);

/// Signed sigma-letter string, e.g. "+XYZ" or "-IZ". Only Hermitian
/// elements have such a form; format_pauli_string rejects the rest.
std::string format_pauli_string(const PauliElement& p);
PauliElement parse_pauli_string(const std::string& text, std::size_t line_no = 0);

}  // namespace cgf2
