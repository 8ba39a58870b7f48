#include "cgf2/decompose.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace cgf2 {

namespace {

std::size_t support_size(const BinVec& a) {
  const std::size_t n = a.len() / 2;
  std::size_t count = 0;
  for (std::size_t q = 0; q < n; ++q)
    if (a.get(q) || a.get(n + q)) ++count;
  return count;
}

}  // namespace

CliffordTableau tableau_of(const PrimitiveGate& gate, std::size_t n) {
  struct Visitor {
    std::size_t n;
    CliffordTableau operator()(const ExpPi4Gate& g) const {
      if (g.a.len() != 2 * n) throw DimMismatchError("EXP gate: bad vector length");
      if (support_size(g.a) > 2)
        throw std::invalid_argument("EXP gate: support exceeds two qubits");
      return exp_pi4_gate(g.a);
    }
    CliffordTableau operator()(const CnotGate& g) const {
      return cnot_gate(n, g.control, g.target);
    }
    CliffordTableau operator()(const SwapGate& g) const {
      if (g.q1 >= n || g.q2 >= n)
        throw std::invalid_argument("SWAP gate: qubit index out of range");
      std::vector<std::size_t> perm(n);
      for (std::size_t q = 0; q < n; ++q) perm[q] = q;
      std::swap(perm[g.q1], perm[g.q2]);
      return permutation_gate(perm);
    }
    CliffordTableau operator()(const HadamardGate& g) const {
      return hadamard_gate(n, g.qubits);
    }
    CliffordTableau operator()(const PauliGateOp& g) const {
      if (g.a.len() != 2 * n) throw DimMismatchError("PAULI gate: bad vector length");
      return pauli_gate(g.a);
    }
    CliffordTableau operator()(const SingleQubitGate& g) const {
      if (g.q >= n) throw std::invalid_argument("SQ gate: qubit index out of range");
      const bool c00 = g.c_bits & 1, c01 = (g.c_bits >> 1) & 1;
      const bool c10 = (g.c_bits >> 2) & 1, c11 = (g.c_bits >> 3) & 1;
      if (!((c00 & c11) ^ (c01 & c10)))
        throw std::invalid_argument("SQ gate: 2x2 block is singular");
      if (((g.d_bits & 1) != (c00 & c10)) || (((g.d_bits >> 1) & 1) != (c01 & c11)))
        throw std::invalid_argument("SQ gate: d bits inconsistent with C block");
      BinMat c = BinMat::identity(2 * n);
      c.set(g.q, g.q, c00);
      c.set(g.q, n + g.q, c01);
      c.set(n + g.q, g.q, c10);
      c.set(n + g.q, n + g.q, c11);
      BinVec d(2 * n), h(2 * n);
      d.set(g.q, g.d_bits & 1);
      d.set(n + g.q, (g.d_bits >> 1) & 1);
      h.set(g.q, g.h_bits & 1);
      h.set(n + g.q, (g.h_bits >> 1) & 1);
      return CliffordTableau::unchecked(std::move(c), std::move(d), std::move(h));
    }
  };
  return std::visit(Visitor{n}, gate);
}

CliffordTableau fold_tableau(const GateSeq& seq) {
  CliffordTableau acc = CliffordTableau::identity(seq.n);
  for (const PrimitiveGate& g : seq.gates) acc = compose(tableau_of(g, seq.n), acc);
  return acc;
}

std::vector<std::size_t> gate_support(const PrimitiveGate& gate, std::size_t n) {
  struct Visitor {
    std::size_t n;
    std::vector<std::size_t> operator()(const ExpPi4Gate& g) const {
      std::vector<std::size_t> qs;
      for (std::size_t q = 0; q < n; ++q)
        if (g.a.get(q) || g.a.get(n + q)) qs.push_back(q);
      return qs;
    }
    std::vector<std::size_t> operator()(const CnotGate& g) const {
      return {std::min(g.control, g.target), std::max(g.control, g.target)};
    }
    std::vector<std::size_t> operator()(const SwapGate& g) const {
      return {std::min(g.q1, g.q2), std::max(g.q1, g.q2)};
    }
    std::vector<std::size_t> operator()(const HadamardGate& g) const {
      auto qs = g.qubits;
      std::sort(qs.begin(), qs.end());
      return qs;
    }
    std::vector<std::size_t> operator()(const PauliGateOp& g) const {
      std::vector<std::size_t> qs;
      for (std::size_t q = 0; q < n; ++q)
        if (g.a.get(q) || g.a.get(n + q)) qs.push_back(q);
      return qs;
    }
    std::vector<std::size_t> operator()(const SingleQubitGate& g) const {
      return {g.q};
    }
  };
  return std::visit(Visitor{n}, gate);
}

std::size_t two_qubit_count(const GateSeq& seq) {
  std::size_t count = 0;
  for (const PrimitiveGate& g : seq.gates) {
    if (std::holds_alternative<CnotGate>(g) || std::holds_alternative<SwapGate>(g)) {
      ++count;
    } else if (const auto* e = std::get_if<ExpPi4Gate>(&g)) {
      if (support_size(e->a) == 2) ++count;
    }
  }
  return count;
}

namespace {

// One-qubit synthesis table: shortest word over the three one-qubit ExpPi4
// generators for every (C, h) pair, found by breadth-first search. All 24
// one-qubit tableaux are reachable within four gates (four of them need
// the full four).
std::uint8_t one_qubit_key(const CliffordTableau& t) {
  std::uint8_t key = 0;
  key |= t.c().get(0, 0) << 0;
  key |= t.c().get(0, 1) << 1;
  key |= t.c().get(1, 0) << 2;
  key |= t.c().get(1, 1) << 3;
  key |= t.h().get(0) << 4;
  key |= t.h().get(1) << 5;
  return key;
}

const std::map<std::uint8_t, std::vector<std::uint8_t>>& one_qubit_words() {
  static const auto table = [] {
    const std::array<BinVec, 3> gen_vecs = {
        BinVec::from_bits({1, 0}), BinVec::from_bits({0, 1}), BinVec::from_bits({1, 1})};
    std::array<CliffordTableau, 3> gens;
    for (int g = 0; g < 3; ++g) gens[g] = exp_pi4_gate(gen_vecs[g]);

    std::map<std::uint8_t, std::vector<std::uint8_t>> words;
    std::vector<std::pair<CliffordTableau, std::vector<std::uint8_t>>> frontier;
    frontier.emplace_back(CliffordTableau::identity(1), std::vector<std::uint8_t>{});
    words.emplace(one_qubit_key(frontier[0].first), std::vector<std::uint8_t>{});
    for (int depth = 0; depth < 4; ++depth) {
      std::vector<std::pair<CliffordTableau, std::vector<std::uint8_t>>> next;
      for (const auto& [tab, word] : frontier) {
        for (std::uint8_t g = 0; g < 3; ++g) {
          CliffordTableau cand = compose(gens[g], tab);
          std::uint8_t key = one_qubit_key(cand);
          if (words.count(key)) continue;
          std::vector<std::uint8_t> w = word;
          w.push_back(g);
          words.emplace(key, w);
          next.emplace_back(std::move(cand), std::move(w));
        }
      }
      frontier = std::move(next);
    }
    if (words.size() != 24)
      throw std::logic_error("one-qubit synthesis table incomplete");
    return words;
  }();
  return table;
}

}  // namespace

std::vector<ExpPi4Gate> expand_single_qubit(const SingleQubitGate& gate, std::size_t n) {
  if (gate.q >= n) throw std::invalid_argument("SQ gate: qubit index out of range");
  // Look up the word for the local 1-qubit tableau, then embed at gate.q.
  SingleQubitGate at0 = gate;
  at0.q = 0;
  const CliffordTableau t = tableau_of(PrimitiveGate{at0}, 1);
  const auto& words = one_qubit_words();
  auto it = words.find(one_qubit_key(t));
  if (it == words.end()) throw std::logic_error("one-qubit tableau missing from table");
  static const std::array<std::array<int, 2>, 3> patterns = {{{1, 0}, {0, 1}, {1, 1}}};
  std::vector<ExpPi4Gate> out;
  for (std::uint8_t g : it->second) {
    BinVec a(2 * n);
    if (patterns[g][0]) a.set(gate.q, true);
    if (patterns[g][1]) a.set(n + gate.q, true);
    out.push_back(ExpPi4Gate{std::move(a)});
  }
  return out;
}

SymplecticBlocks symplectic_block_decompose(const BinMat& c) {
  if (c.rows() != c.cols() || c.rows() % 2 != 0)
    throw DimMismatchError("symplectic_block_decompose: C must be 2n x 2n");
  const std::size_t n = c.rows() / 2;
  const BinMat p = symplectic_form(n);
  {
    const BinMat gram = mat_mul(transpose(c), mat_mul(p, c));
    if (gram != p)
      for (std::size_t i = 0; i < 2 * n; ++i)
        for (std::size_t j = 0; j < 2 * n; ++j)
          if (gram.get(i, j) != p.get(i, j)) throw NotSymplecticError(i, j);
  }

  const BinMat g_block = c.submatrix(n, 2 * n, 0, n);
  const KernelRange kr = kernel_range_bases(g_block);
  const std::size_t r = kr.rank;
  const std::size_t b = n - r;

  BinMat r2 = complete_to_invertible(kr.kernel);
  // Range basis aligned with the completion columns, placed last in R1.
  const BinMat range_cols = mat_mul(g_block, r2.submatrix(0, n, b, n));
  BinMat r1(n, n);
  {
    const BinMat completed = complete_to_invertible(range_cols);
    for (std::size_t j = 0; j < b; ++j) r1.set_column(j, completed.column(r + j));
    for (std::size_t j = 0; j < r; ++j) r1.set_column(b + j, completed.column(j));
  }

  auto transform = [&](const BinMat& right_r2) {
    BinMat left(2 * n, 2 * n), right(2 * n, 2 * n);
    left.paste(0, 0, transpose(r1));
    left.paste(n, n, mat_inverse(r1));
    right.paste(0, 0, right_r2);
    right.paste(n, n, transpose(mat_inverse(right_r2)));
    return mat_mul(left, mat_mul(c, right));
  };

  BinMat work = transform(r2);
  // Normalize so the upper-left blocks of E and H are identities.
  const BinMat e11 = work.submatrix(0, b, 0, b);
  BinMat scale = BinMat::identity(n);
  scale.paste(0, 0, mat_inverse(e11));
  r2 = mat_mul(r2, scale);
  work = transform(r2);

  const BinMat e = work.submatrix(0, n, 0, n);
  const BinMat f = work.submatrix(0, n, n, 2 * n);
  const BinMat g = work.submatrix(n, 2 * n, 0, n);
  const BinMat h = work.submatrix(n, 2 * n, n, 2 * n);

  auto expect = [](bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("symplectic_block_decompose: ") + what);
  };
  expect(e.submatrix(0, b, 0, b) == BinMat::identity(b), "E11 != I");
  expect(h.submatrix(0, b, 0, b) == BinMat::identity(b), "H11 != I");
  expect(e.submatrix(b, n, 0, b).is_zero(), "E21 != 0");
  expect(h.submatrix(0, b, b, n).is_zero(), "H12 != 0");
  {
    BinMat want(n, n);
    want.paste(b, b, BinMat::identity(r));
    expect(g == want, "G not reduced to [[0,0],[0,I]]");
  }

  SymplecticBlocks out;
  out.r = r;
  out.t1 = r1;
  out.t2 = transpose(r2);
  out.v1 = e.submatrix(0, b, b, n);
  out.v2 = transpose(h.submatrix(b, n, 0, b));
  out.z1 = e.submatrix(b, n, b, n);
  out.z2 = h.submatrix(b, n, b, n);
  out.z3 = mat_add(f.submatrix(0, b, 0, b), mat_mul(out.v1, transpose(out.v2)));
  expect(is_symmetric(out.z1), "Z1 not symmetric");
  expect(is_symmetric(out.z2), "Z2 not symmetric");
  expect(is_symmetric(out.z3), "Z3 not symmetric");
  return out;
}

BinMat SymplecticBlocks::z_br() const {
  const std::size_t b = z3.rows();
  const std::size_t n = b + r;
  BinMat z(n, n);
  z.paste(0, 0, z3);
  z.paste(0, b, v1);
  z.paste(b, 0, transpose(v1));
  z.paste(b, b, z1);
  return z;
}

BinMat SymplecticBlocks::z_bc() const {
  const std::size_t b = z3.rows();
  const std::size_t n = b + r;
  BinMat z(n, n);
  z.paste(0, b, v2);
  z.paste(b, 0, transpose(v2));
  z.paste(b, b, z2);
  return z;
}

namespace {

std::vector<std::size_t> tail_qubits(std::size_t n, std::size_t r) {
  std::vector<std::size_t> qs(r);
  for (std::size_t k = 0; k < r; ++k) qs[k] = n - r + k;
  return qs;
}

}  // namespace

BinMat reassemble_blocks(const SymplecticBlocks& blocks) {
  const std::size_t n = blocks.t1.rows();
  CliffordTableau t = linear_gate(blocks.t1);
  t = compose(t, quadratic_phase_gate(blocks.z_br()));
  t = compose(t, hadamard_gate(n, tail_qubits(n, blocks.r)));
  t = compose(t, quadratic_phase_gate(blocks.z_bc()));
  t = compose(t, linear_gate(blocks.t2));
  return t.c();
}

GateSeq linear_to_cnots(const BinMat& r) {
  if (r.rows() != r.cols()) throw DimMismatchError("linear_to_cnots: R must be square");
  const std::size_t n = r.rows();
  BinMat work = r;
  std::vector<PrimitiveGate> ops;  // reduction ops, applied order
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t i = col; i < n; ++i) {
      if (work.get(i, col)) {
        pivot = i;
        break;
      }
    }
    if (pivot == n) throw SingularMatrixError(col, n);
    if (pivot != col) {
      work.swap_rows(col, pivot);
      ops.push_back(SwapGate{col, pivot});
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i != col && work.get(i, col)) {
        work.xor_row_into(col, i);
        ops.push_back(CnotGate{col, i});
      }
    }
  }
  // All reduction ops are involutions; the inverse product is the reversed list.
  GateSeq seq{n, {}};
  seq.gates.assign(ops.rbegin(), ops.rend());
  return seq;
}

GateSeq zmatrix_to_gates(const BinMat& z) {
  if (!is_symmetric(z)) throw std::invalid_argument("zmatrix_to_gates: Z must be symmetric");
  const std::size_t n = z.rows();
  GateSeq seq{n, {}};
  BinVec byproduct(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k + 1; l < n; ++l) {
      if (!z.get(k, l)) continue;
      BinVec a(2 * n);
      a.set(k, true);
      a.set(l, true);
      seq.gates.push_back(ExpPi4Gate{std::move(a)});
      byproduct.flip(k);
      byproduct.flip(l);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (byproduct.get(k) == z.get(k, k)) continue;
    BinVec a(2 * n);
    a.set(k, true);
    seq.gates.push_back(ExpPi4Gate{std::move(a)});
  }
  return seq;
}

PrimitiveGate fix_h(const CliffordTableau& current, const BinVec& target_h,
                    FixSide side) {
  if (target_h.len() != 2 * current.n())
    throw DimMismatchError("fix_h: target length mismatch");
  const BinVec diff = swap_halves(current.h() ^ target_h);  // P (h + h')
  if (side == FixSide::Right) return PauliGateOp{diff};
  return PauliGateOp{mat_vec(current.c(), diff)};
}

namespace {

struct Scheme1Core {
  const std::size_t n;
  BinMat m;                         // working copy, reduced towards I
  std::vector<PrimitiveGate> ops;   // reduction ops, applied order
  std::vector<bool> done;

  explicit Scheme1Core(const CliffordTableau& q)
      : n(q.n()), m(q.c()), done(q.n(), false) {}

  // 2x2 block of qubit q's rows in columns (pm, n+pm).
  std::array<bool, 4> block(std::size_t q, std::size_t pm) const {
    return {m.get(q, pm), m.get(q, n + pm), m.get(n + q, pm), m.get(n + q, n + pm)};
  }

  static bool block_det(const std::array<bool, 4>& b) {
    return (b[0] & b[3]) ^ (b[1] & b[2]);
  }

  bool alpha_block_invertible(std::size_t k, std::size_t col_m) const {
    return block_det(block(k, col_m));
  }

  // Left-multiplies the working matrix by I + a a^T P and records the gate.
  void apply_exp(const BinVec& a) {
    const BinVec row = tmat_vec(m, swap_halves(a));  // (Pa)^T M = a^T P M
    for (std::size_t i = 0; i < 2 * n; ++i) {
      if (!a.get(i)) continue;
      for (std::size_t w = 0; w < m.row_words(); ++w)
        m.row_ptr(i)[w] ^= row.words()[w];
    }
    ops.push_back(ExpPi4Gate{a});
  }

  bool inner(const BinVec& a, std::size_t col) const {
    bool acc = false;
    for (std::size_t q = 0; q < n; ++q) {
      acc ^= a.get(q) & m.get(n + q, col);
      acc ^= a.get(n + q) & m.get(q, col);
    }
    return acc;
  }

  // One op on qubits (l1, l2) turning both unit-determinant blocks into
  // singular ones: with B1, B2 the blocks and M = B2 B1^-1, any nonzero
  // w1, w2 with w2^T P2 M w1 = 1 does it (the second determinant condition
  // coincides with the first).
  void clear_unit_pair(std::size_t l1, std::size_t l2, std::size_t pm) {
    const std::array<bool, 4> b1 = block(l1, pm);
    const std::array<bool, 4> b2 = block(l2, pm);
    // M = B2 adj(B1); adj over GF(2) swaps the diagonal.
    const std::array<bool, 4> b1_adj = {b1[3], b1[1], b1[2], b1[0]};
    const std::array<bool, 4> mm = {
        static_cast<bool>((b2[0] & b1_adj[0]) ^ (b2[1] & b1_adj[2])),
        static_cast<bool>((b2[0] & b1_adj[1]) ^ (b2[1] & b1_adj[3])),
        static_cast<bool>((b2[2] & b1_adj[0]) ^ (b2[3] & b1_adj[2])),
        static_cast<bool>((b2[2] & b1_adj[1]) ^ (b2[3] & b1_adj[3]))};
    for (std::uint8_t w1 = 1; w1 < 4; ++w1) {
      const bool w10 = w1 & 1, w11 = w1 >> 1;
      // P2 M w1
      const bool pm0 = (mm[2] & w10) ^ (mm[3] & w11);
      const bool pm1 = (mm[0] & w10) ^ (mm[1] & w11);
      for (std::uint8_t w2 = 1; w2 < 4; ++w2) {
        const bool w20 = w2 & 1, w21 = w2 >> 1;
        if (!((w20 & pm0) ^ (w21 & pm1))) continue;
        BinVec a(2 * n);
        a.set(l1, w10);
        a.set(n + l1, w11);
        a.set(l2, w20);
        a.set(n + l2, w21);
        apply_exp(a);
        if (block_det(block(l1, pm)) || block_det(block(l2, pm)))
          throw std::logic_error("scheme1: unit-block pair not cleared");
        return;
      }
    }
    throw std::logic_error("scheme1: no clearing op for unit-block pair");
  }

  void reduce_pair(std::size_t pm) {
    // Qubit swap making the 2x2 block at (pm, pm) invertible.
    if (!alpha_block_invertible(pm, pm)) {
      std::size_t k = n;
      for (std::size_t cand = 0; cand < n; ++cand) {
        if (cand == pm || done[cand]) continue;
        if (alpha_block_invertible(cand, pm)) {
          k = cand;
          break;
        }
      }
      if (k == n)
        throw std::logic_error(
            "scheme1: no invertible 2x2 block; input is not symplectic");
      m.swap_rows(pm, k);
      m.swap_rows(n + pm, n + k);
      ops.push_back(SwapGate{pm, k});
    }

    // The restricted symplectic form over columns (pm, n+pm) fixes the sum
    // of the per-qubit block determinants at 1, so after the pivot block is
    // made invertible the remaining unit-determinant blocks come in pairs.
    // A sweep op on such a qubit would be forced to flip the pivot
    // determinant; one op per pair clears both determinants first.
    {
      std::vector<std::size_t> unit_blocks;
      for (std::size_t l = 0; l < n; ++l) {
        if (l == pm || done[l]) continue;
        if (block_det(block(l, pm))) unit_blocks.push_back(l);
      }
      if (unit_blocks.size() % 2 != 0)
        throw std::logic_error("scheme1: odd unit-block count; input is not symplectic");
      for (std::size_t t = 0; t + 1 < unit_blocks.size(); t += 2)
        clear_unit_pair(unit_blocks[t], unit_blocks[t + 1], pm);
    }

    // Zero column pm outside the alpha rows.
    for (std::size_t l = 0; l < n; ++l) {
      if (l == pm || done[l]) continue;
      const bool bz = m.get(l, pm), bx = m.get(n + l, pm);
      if (!bz && !bx) continue;
      BinVec a(2 * n);
      a.set(pm, m.get(pm, n + pm));
      a.set(n + pm, m.get(n + pm, n + pm));
      a.set(l, bz);
      a.set(n + l, bx);
      if (!inner(a, pm))
        throw std::logic_error("scheme1: a^T P c_m != 1 during first column");
      if (inner(a, n + pm))
        throw std::logic_error("scheme1: sweep op would disturb column n+m");
      apply_exp(a);
    }

    // Zero column n+pm outside the alpha rows; column pm is untouched.
    for (std::size_t l = 0; l < n; ++l) {
      if (l == pm || done[l]) continue;
      const bool bz = m.get(l, n + pm), bx = m.get(n + l, n + pm);
      if (!bz && !bx) continue;
      BinVec a(2 * n);
      a.set(pm, m.get(pm, pm));
      a.set(n + pm, m.get(n + pm, pm));
      a.set(l, bz);
      a.set(n + l, bx);
      if (inner(a, pm))
        throw std::logic_error("scheme1: a^T P c_m != 0 during second column");
      if (!inner(a, n + pm))
        throw std::logic_error("scheme1: a^T P c_{n+m} != 1 during second column");
      apply_exp(a);
    }

    // One-qubit fix turning the remaining 2x2 block into the identity.
    const bool b00 = m.get(pm, pm), b01 = m.get(pm, n + pm);
    const bool b10 = m.get(n + pm, pm), b11 = m.get(n + pm, n + pm);
    if (!(b00 && b11 && !b01 && !b10)) {
      // g = B^-1 = [[b11, b01],[b10, b00]] over GF(2) (unit determinant).
      const bool g00 = b11, g01 = b01, g10 = b10, g11 = b00;
      BinVec row_z(2 * n), row_x(2 * n);
      if (g00) row_z ^= m.row(pm);
      if (g01) row_z ^= m.row(n + pm);
      if (g10) row_x ^= m.row(pm);
      if (g11) row_x ^= m.row(n + pm);
      m.set_row(pm, row_z);
      m.set_row(n + pm, row_x);
      SingleQubitGate fix;
      fix.q = pm;
      fix.c_bits = static_cast<std::uint8_t>(g00 | (g01 << 1) | (g10 << 2) | (g11 << 3));
      fix.d_bits = static_cast<std::uint8_t>((g00 & g10) | ((g01 & g11) << 1));
      fix.h_bits = 0;
      ops.push_back(fix);
    }
    done[pm] = true;
  }

  GateSeq emit() const {
    GateSeq seq{n, {}};
    seq.gates.reserve(ops.size());
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
      if (const auto* sq = std::get_if<SingleQubitGate>(&*it)) {
        // Invert the one-qubit reduction op; the 2x2 C block is its own
        // adjugate-based inverse, h stays absorbed in the final Pauli fix.
        const bool g00 = sq->c_bits & 1, g01 = (sq->c_bits >> 1) & 1;
        const bool g10 = (sq->c_bits >> 2) & 1, g11 = (sq->c_bits >> 3) & 1;
        SingleQubitGate inv;
        inv.q = sq->q;
        inv.c_bits = static_cast<std::uint8_t>(g11 | (g01 << 1) | (g10 << 2) | (g00 << 3));
        inv.d_bits = static_cast<std::uint8_t>((g11 & g10) | ((g01 & g00) << 1));
        inv.h_bits = 0;
        seq.gates.push_back(inv);
      } else {
        seq.gates.push_back(*it);  // ExpPi4 and Swap blocks are involutions
      }
    }
    return seq;
  }
};

}  // namespace

GateSeq decompose_scheme1(const CliffordTableau& q, const Scheme1Observer& observer) {
  Scheme1Core core(q);
  for (std::size_t pm = 0; pm < q.n(); ++pm) {
    core.reduce_pair(pm);
    if (observer) observer(pm, core.m);
  }
  if (core.m != BinMat::identity(2 * q.n()))
    throw std::logic_error("scheme1: reduction did not reach the identity");
  GateSeq seq = core.emit();
  const CliffordTableau realized = fold_tableau(seq);
  if (realized.c() != q.c())
    throw std::logic_error("scheme1: realized C mismatch");
  if (realized.h() != q.h())
    seq.gates.insert(seq.gates.begin(), fix_h(realized, q.h(), FixSide::Right));
  return seq;
}

GateSeq decompose_scheme1_columns(const CliffordTableau& q,
                                  const std::vector<std::size_t>& pairs) {
  std::vector<std::size_t> sorted = pairs;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= q.n()) throw std::invalid_argument("column pair out of range");
    if (i && sorted[i] == sorted[i - 1])
      throw std::invalid_argument("duplicate column pair");
  }
  Scheme1Core core(q);
  for (std::size_t pm : sorted) core.reduce_pair(pm);
  return core.emit();
}

GateSeq decompose_scheme2(const CliffordTableau& q) {
  const SymplecticBlocks blocks = symplectic_block_decompose(q.c());
  const std::size_t n = q.n();

  GateSeq seq{n, {}};
  auto append = [&seq](GateSeq part) {
    for (auto& g : part.gates) seq.gates.push_back(std::move(g));
  };
  append(linear_to_cnots(blocks.t2));
  append(zmatrix_to_gates(blocks.z_bc()));
  if (blocks.r > 0) seq.gates.push_back(HadamardGate{tail_qubits(n, blocks.r)});
  append(zmatrix_to_gates(blocks.z_br()));
  append(linear_to_cnots(blocks.t1));

  const CliffordTableau realized = fold_tableau(seq);
  if (realized.c() != q.c())
    throw std::logic_error("scheme2: realized C mismatch");
  if (realized.h() != q.h())
    seq.gates.insert(seq.gates.begin(), fix_h(realized, q.h(), FixSide::Right));
  return seq;
}

// --- circuit text format ---

std::string format_gate(const PrimitiveGate& gate) {
  struct Visitor {
    std::string operator()(const ExpPi4Gate& g) const { return "EXP " + g.a.str(); }
    std::string operator()(const CnotGate& g) const {
      return "CNOT " + std::to_string(g.control) + " " + std::to_string(g.target);
    }
    std::string operator()(const SwapGate& g) const {
      return "SWAP " + std::to_string(g.q1) + " " + std::to_string(g.q2);
    }
    std::string operator()(const HadamardGate& g) const {
      std::string s = "H";
      for (std::size_t q : g.qubits) s += " " + std::to_string(q);
      return s;
    }
    std::string operator()(const PauliGateOp& g) const { return "PAULI " + g.a.str(); }
    std::string operator()(const SingleQubitGate& g) const {
      auto bits = [](std::uint8_t v, int count) {
        std::string s;
        for (int k = 0; k < count; ++k) s.push_back((v >> k) & 1 ? '1' : '0');
        return s;
      };
      return "SQ " + std::to_string(g.q) + " " + bits(g.c_bits, 4) + " " +
             bits(g.d_bits, 2) + " " + bits(g.h_bits, 2);
    }
  };
  return std::visit(Visitor{}, gate);
}

namespace {

BinVec parse_bits(const std::string& token, std::size_t len, std::size_t line_no) {
  if (token.size() != len)
    throw ParseError(line_no, "expected " + std::to_string(len) + " bits");
  BinVec v(len);
  for (std::size_t k = 0; k < len; ++k) {
    if (token[k] == '1')
      v.set(k, true);
    else if (token[k] != '0')
      throw ParseError(line_no, "bad bit character");
  }
  return v;
}

std::uint8_t parse_bitfield(const std::string& token, std::size_t len,
                            std::size_t line_no) {
  const BinVec v = parse_bits(token, len, line_no);
  std::uint8_t out = 0;
  for (std::size_t k = 0; k < len; ++k) out |= v.get(k) << k;
  return out;
}

}  // namespace

GateSeq read_circuit(std::istream& in) {
  std::size_t line_no = 0;
  std::string line;
  GateSeq seq;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op)) continue;
    if (!have_header) {
      if (op != "n") throw ParseError(line_no, "expected 'n <count>' header");
      if (!(ls >> seq.n) || seq.n == 0) throw ParseError(line_no, "bad qubit count");
      have_header = true;
      continue;
    }
    auto want_index = [&](const char* what) {
      std::size_t q;
      if (!(ls >> q)) throw ParseError(line_no, std::string("missing ") + what);
      if (q >= seq.n)
        throw ParseError(line_no, std::string(what) + " out of range: " + std::to_string(q));
      return q;
    };
    if (op == "H") {
      HadamardGate g;
      std::size_t q;
      while (ls >> q) {
        if (q >= seq.n)
          throw ParseError(line_no, "qubit out of range: " + std::to_string(q));
        g.qubits.push_back(q);
      }
      seq.gates.push_back(std::move(g));
    } else if (op == "CNOT") {
      std::size_t c = want_index("control");
      std::size_t t = want_index("target");
      if (c == t) throw ParseError(line_no, "control equals target");
      seq.gates.push_back(CnotGate{c, t});
    } else if (op == "SWAP") {
      std::size_t a = want_index("qubit");
      std::size_t b = want_index("qubit");
      seq.gates.push_back(SwapGate{a, b});
    } else if (op == "PAULI" || op == "EXP") {
      std::string token;
      if (!(ls >> token)) throw ParseError(line_no, "missing bit vector");
      BinVec a = parse_bits(token, 2 * seq.n, line_no);
      if (op == "PAULI") {
        seq.gates.push_back(PauliGateOp{std::move(a)});
      } else {
        if (a.is_zero()) throw ParseError(line_no, "EXP gate requires nonzero vector");
        if (support_size(a) > 2)
          throw ParseError(line_no, "EXP gate support exceeds two qubits");
        seq.gates.push_back(ExpPi4Gate{std::move(a)});
      }
    } else if (op == "SQ") {
      SingleQubitGate g;
      g.q = want_index("qubit");
      std::string cb, db, hb;
      if (!(ls >> cb >> db >> hb)) throw ParseError(line_no, "missing SQ fields");
      g.c_bits = parse_bitfield(cb, 4, line_no);
      g.d_bits = parse_bitfield(db, 2, line_no);
      g.h_bits = parse_bitfield(hb, 2, line_no);
      try {
        tableau_of(PrimitiveGate{g}, seq.n);  // validates the block
      } catch (const std::exception& e) {
        throw ParseError(line_no, e.what());
      }
      seq.gates.push_back(g);
    } else {
      throw ParseError(line_no, "unknown gate '" + op + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing 'n <count>' header");
  return seq;
}

void write_circuit(std::ostream& out, const GateSeq& seq, bool with_summary) {
  out << "n " << seq.n << '\n';
  for (const PrimitiveGate& g : seq.gates) out << format_gate(g) << '\n';
  if (with_summary)
    out << "# gates: " << seq.gates.size() << " two-qubit: " << two_qubit_count(seq)
        << '\n';
}

}  // namespace cgf2
