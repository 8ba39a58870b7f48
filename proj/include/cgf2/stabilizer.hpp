#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "cgf2/tableau.hpp"

namespace cgf2 {

struct NonCommutingError : std::runtime_error {
  std::size_t g1, g2;
  NonCommutingError(std::size_t a, std::size_t b)
      : std::runtime_error("generators " + std::to_string(a) + " and " +
                           std::to_string(b) + " do not commute"),
        g1(a), g2(b) {}
};

struct DependentGeneratorsError : std::runtime_error {
  std::size_t column;
  explicit DependentGeneratorsError(std::size_t k)
      : std::runtime_error("generator " + std::to_string(k) +
                           " depends on the previous ones"),
        column(k) {}
};

struct NonHermitianGeneratorError : std::runtime_error {
  std::size_t column;
  explicit NonHermitianGeneratorError(std::size_t k)
      : std::runtime_error("generator " + std::to_string(k) +
                           " has an inconsistent f bit"),
        column(k) {}
};

/// Stabilizer state given by n commuting Hermitian generators
/// i^{f_k} (-1)^{b_k} tau_{s_k}; the s_k are the columns of S.
struct StabilizerRep {
  std::size_t n = 0;
  BinMat s;  // 2n x n
  BinVec f;
  BinVec b;

  static StabilizerRep checked(BinMat s, BinVec f, BinVec b);
  static StabilizerRep unchecked(BinMat s, BinVec f, BinVec b);
  static StabilizerRep zero_state(std::size_t n);

  PauliElement generator(std::size_t k) const;
  /// The padded (2n+1) x n matrix [S; f^T].
  BinMat sbar() const;

  bool operator==(const StabilizerRep&) const = default;
};

StabilizerRep apply_clifford(const StabilizerRep& state, const CliffordTableau& q);

/// Replaces the generating set: S' = S R for invertible R, with the matching
/// sign update. The generated group (and the state) is unchanged.
StabilizerRep basis_change(const StabilizerRep& state, const BinMat& r);

/// Normal form reached by two basis changes, one index-space transform and a
/// final clearing step. The state amplitude at T [y; b_c] reads off a binary
/// quadratic form in y.
struct CanonicalStabilizer {
  BinMat t;         // invertible n x n index transform
  BinMat z;         // symmetric, full rank, ra x ra
  std::size_t ra = 0, rb = 0, rc = 0;
  BinVec fa;        // diag(z)
  BinVec b_ab;      // length ra + rb
  BinVec b_c;       // length rc
};

CanonicalStabilizer canonical_form(const StabilizerRep& state);

/// The canonical-form stabilizer description itself (the state after the
/// index transform), reconstructed from the block data.
StabilizerRep canonical_state(const CanonicalStabilizer& canon);

/// Standard-basis expansion data: every amplitude on the support plane
/// x = T [y; b_c] is (+-1 or +-i) / sqrt(2^(ra+rb)), zero elsewhere.
struct AmplitudeMap {
  BinMat t;
  BinVec b_c;
  std::size_t ra = 0, rb = 0;
  BinVec fa;
  BinMat cross;  // lows(Z + fa fa^T)
  BinVec b_ab;
  double norm = 1.0;

  std::size_t support_size() const { return std::size_t(1) << (ra + rb); }
  BinVec support_point(const BinVec& y) const;
  std::complex<double> value(const BinVec& y) const;
};

AmplitudeMap amplitudes(const CanonicalStabilizer& canon);

struct AmplitudeEntry {
  BinVec x;
  std::complex<double> value;
};

/// All support points with their amplitudes, sorted by bitstring.
std::vector<AmplitudeEntry> enumerate_amplitudes(const CanonicalStabilizer& canon);

/// Dense 2^n state vector of the canonical expansion.
std::vector<std::complex<double>> state_vector(const CanonicalStabilizer& canon);

/// tau_a acting on a dense state: psi'_x = (-1)^{v.x} psi_{x+w}, a = [v; w].
std::vector<std::complex<double>> pauli_on_statevector(
    const BinVec& a, const std::vector<std::complex<double>>& psi);

/// Basis index of x (qubit 0 is the most significant bit) and back.
std::size_t basis_index(const BinVec& x);
BinVec index_bits(std::size_t index, std::size_t n);

/// Stabilizer file: "n <n>" then n signed Pauli strings, '#' comments.
StabilizerRep read_stabilizer(std::istream& in);
void write_stabilizer(std::ostream& out, const StabilizerRep& state);

/// Amplitude dump: "bitstring re im" per support point, 17 significant
/// digits, lexicographic bitstring order.
void write_amplitudes(std::ostream& out, const CanonicalStabilizer& canon);

std::string format_amplitude_value(double v);

}  // namespace cgf2
