#include "cgf2/oracle.hpp"

#include <bit>
#include <cmath>

namespace cgf2 {

namespace {

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap) throw CapExceededError(n, cap);
}

constexpr Complex kOne{1.0, 0.0};
constexpr Complex kImag{0.0, 1.0};

}  // namespace

DenseOperator DenseOperator::identity(std::size_t qubits) {
  DenseOperator op(qubits);
  for (std::size_t k = 0; k < op.dim(); ++k) op.at(k, k) = kOne;
  return op;
}

DenseOperator DenseOperator::dagger() const {
  DenseOperator out(n);
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = 0; c < dim(); ++c) out.at(c, r) = std::conj(at(r, c));
  return out;
}

StateVec DenseOperator::apply(const StateVec& psi) const {
  if (psi.size() != dim()) throw DimMismatchError("apply: state dimension mismatch");
  StateVec out(dim(), 0.0);
  for (std::size_t r = 0; r < dim(); ++r) {
    Complex acc = 0.0;
    for (std::size_t c = 0; c < dim(); ++c) acc += at(r, c) * psi[c];
    out[r] = acc;
  }
  return out;
}

double DenseOperator::unitarity_deviation() const {
  const DenseOperator prod = *this * dagger();
  double worst = 0.0;
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = 0; c < dim(); ++c) {
      const Complex want = r == c ? kOne : Complex{0.0, 0.0};
      worst = std::max(worst, std::abs(prod.at(r, c) - want));
    }
  return worst;
}

DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
  if (a.n != b.n) throw DimMismatchError("dense product: size mismatch");
  DenseOperator out(a.n);
  const std::size_t d = a.dim();
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k < d; ++k) {
      const Complex v = a.at(r, k);
      if (v == Complex{0.0, 0.0}) continue;
      for (std::size_t c = 0; c < d; ++c) out.at(r, c) += v * b.at(k, c);
    }
  return out;
}

DenseOperator dense_pauli(const PauliElement& p) {
  check_cap(p.n, kMaxDensePauliQubits);
  DenseOperator op(p.n);
  std::size_t v_mask = 0, w_mask = 0;
  for (std::size_t k = 0; k < p.n; ++k) {
    if (p.a.get(k)) v_mask |= std::size_t(1) << (p.n - 1 - k);
    if (p.a.get(p.n + k)) w_mask |= std::size_t(1) << (p.n - 1 - k);
  }
  Complex phase = kOne;
  if (p.delta) phase *= kImag;
  if (p.epsilon) phase = -phase;
  // <x| tau_a |x + w> = (-1)^{v.x}
  for (std::size_t x = 0; x < op.dim(); ++x) {
    const bool sign = std::popcount(x & v_mask) & 1;
    op.at(x, x ^ w_mask) = sign ? -phase : phase;
  }
  return op;
}

DenseOperator dense_gate(const PrimitiveGate& gate, std::size_t n) {
  check_cap(n, kMaxDenseOperatorQubits);
  struct Visitor {
    std::size_t n;
    DenseOperator operator()(const ExpPi4Gate& g) const {
      PauliElement tau_bar;
      tau_bar.n = n;
      tau_bar.a = g.a;
      tau_bar.delta = (y_weight(g.a) % 2) != 0;  // a^T U a
      tau_bar.epsilon = false;
      const DenseOperator hermitian = dense_pauli(tau_bar);
      DenseOperator out(n);
      const double s = 1.0 / std::sqrt(2.0);
      for (std::size_t k = 0; k < out.m.size(); ++k) out.m[k] = kImag * s * hermitian.m[k];
      for (std::size_t k = 0; k < out.dim(); ++k) out.at(k, k) += s;
      return out;
    }
    DenseOperator operator()(const CnotGate& g) const {
      DenseOperator out(n);
      const std::size_t cbit = std::size_t(1) << (n - 1 - g.control);
      const std::size_t tbit = std::size_t(1) << (n - 1 - g.target);
      for (std::size_t x = 0; x < out.dim(); ++x)
        out.at((x & cbit) ? x ^ tbit : x, x) = kOne;
      return out;
    }
    DenseOperator operator()(const SwapGate& g) const {
      DenseOperator out(n);
      const std::size_t b1 = std::size_t(1) << (n - 1 - g.q1);
      const std::size_t b2 = std::size_t(1) << (n - 1 - g.q2);
      for (std::size_t x = 0; x < out.dim(); ++x) {
        std::size_t y = x & ~(b1 | b2);
        if (x & b1) y |= b2;
        if (x & b2) y |= b1;
        out.at(y, x) = kOne;
      }
      return out;
    }
    DenseOperator operator()(const HadamardGate& g) const {
      std::size_t set_mask = 0;
      std::size_t count = 0;
      for (std::size_t q : g.qubits) {
        const std::size_t bit = std::size_t(1) << (n - 1 - q);
        if (!(set_mask & bit)) ++count;
        set_mask |= bit;
      }
      DenseOperator out(n);
      const double scale = 1.0 / std::sqrt(std::ldexp(1.0, int(count)));
      for (std::size_t r = 0; r < out.dim(); ++r)
        for (std::size_t c = 0; c < out.dim(); ++c) {
          if ((r & ~set_mask) != (c & ~set_mask)) continue;
          const bool sign = std::popcount(r & c & set_mask) & 1;
          out.at(r, c) = sign ? -scale : scale;
        }
      return out;
    }
    DenseOperator operator()(const PauliGateOp& g) const {
      PauliElement p;
      p.n = n;
      p.a = g.a;
      return dense_pauli(p);
    }
    DenseOperator operator()(const SingleQubitGate& g) const {
      DenseOperator acc = DenseOperator::identity(n);
      for (const ExpPi4Gate& e : expand_single_qubit(g, n))
        acc = (*this)(e) * acc;
      return acc;
    }
  };
  return std::visit(Visitor{n}, gate);
}

DenseOperator dense_from_gates(const GateSeq& seq) {
  check_cap(seq.n, kMaxDenseOperatorQubits);
  DenseOperator acc = DenseOperator::identity(seq.n);
  for (const PrimitiveGate& g : seq.gates) acc = dense_gate(g, seq.n) * acc;
  return acc;
}

ClosedFormFactors closed_form_factors(const CliffordTableau& q) {
  const SymplecticBlocks blocks = symplectic_block_decompose(q.c());
  const std::size_t n = q.n();

  CliffordTableau prod = linear_gate(blocks.t1);
  prod = compose(prod, quadratic_phase_gate(blocks.z_br()));
  {
    std::vector<std::size_t> tail(blocks.r);
    for (std::size_t k = 0; k < blocks.r; ++k) tail[k] = n - blocks.r + k;
    prod = compose(prod, hadamard_gate(n, tail));
  }
  prod = compose(prod, quadratic_phase_gate(blocks.z_bc()));
  prod = compose(prod, linear_gate(blocks.t2));
  if (prod.c() != q.c())
    throw std::logic_error("closed_form_factors: factor product mismatch");

  ClosedFormFactors out;
  out.t1 = blocks.t1;
  out.t2 = blocks.t2;
  out.z_br = blocks.z_br();
  out.z_bc = blocks.z_bc();
  out.d_br = diag_vec(out.z_br);
  out.d_bc = diag_vec(out.z_bc);
  out.r = blocks.r;

  const BinVec h6 = q.h() ^ prod.h();
  out.t = h6.slice(0, n);
  out.h_bc = mat_vec(transpose(mat_inverse(blocks.t2)), h6.slice(n, 2 * n));
  return out;
}

DenseOperator dense_from_tableau(const CliffordTableau& q) {
  check_cap(q.n(), kMaxDenseOperatorQubits);
  const ClosedFormFactors fac = closed_form_factors(q);
  const std::size_t n = q.n();
  const std::size_t r = fac.r;
  const std::size_t b = n - r;

  auto cross_of = [](const BinMat& z, const BinVec& d) {
    BinMat m = z;
    for (std::size_t i = 0; i < z.rows(); ++i) {
      if (!d.get(i)) continue;
      for (std::size_t w = 0; w < m.row_words(); ++w) m.row_ptr(i)[w] ^= d.words()[w];
    }
    return lows(m);
  };
  const BinMat cross_br = cross_of(fac.z_br, fac.d_br);
  const BinMat cross_bc = cross_of(fac.z_bc, fac.d_bc);
  const BinMat t2_inv = mat_inverse(fac.t2);

  DenseOperator out(n);
  const double norm = 1.0 / std::sqrt(std::ldexp(1.0, int(r)));
  for (std::size_t xb = 0; xb < (std::size_t(1) << b); ++xb) {
    for (std::size_t xr = 0; xr < (std::size_t(1) << r); ++xr) {
      BinVec x_br(n);
      for (std::size_t k = 0; k < b; ++k)
        if ((xb >> k) & 1) x_br.set(k, true);
      for (std::size_t k = 0; k < r; ++k)
        if ((xr >> k) & 1) x_br.set(b + k, true);
      const std::size_t row = basis_index(mat_vec(fac.t1, x_br));
      const bool e_br = fac.d_br.dot(x_br);
      const bool q_br = quad_form_lows(cross_br, x_br);

      for (std::size_t xc = 0; xc < (std::size_t(1) << r); ++xc) {
        BinVec x_bc(n);
        for (std::size_t k = 0; k < b; ++k)
          if ((xb >> k) & 1) x_bc.set(k, true);
        for (std::size_t k = 0; k < r; ++k)
          if ((xc >> k) & 1) x_bc.set(b + k, true);
        const std::size_t col = basis_index(mat_vec(t2_inv, x_bc) ^ fac.t);

        Complex value = norm;
        if (e_br) value *= -kImag;
        if (fac.d_bc.dot(x_bc)) value *= -kImag;
        bool sign = q_br;
        sign ^= quad_form_lows(cross_bc, x_bc);
        sign ^= fac.h_bc.dot(x_bc);
        sign ^= (std::popcount(xr & xc) & 1) != 0;
        if (sign) value = -value;
        out.at(row, col) = value;
      }
    }
  }
  return out;
}

DenseOperator diagonal_clifford_matrix(const BinMat& z, const BinVec& d) {
  if (!is_symmetric(z))
    throw std::invalid_argument("diagonal_clifford_matrix: Z must be symmetric");
  if (d != diag_vec(z))
    throw std::invalid_argument("diagonal_clifford_matrix: d must equal diag(Z)");
  const std::size_t n = z.rows();
  check_cap(n, kMaxDenseOperatorQubits);

  BinMat cross = z;
  for (std::size_t i = 0; i < n; ++i) {
    if (!d.get(i)) continue;
    for (std::size_t w = 0; w < cross.row_words(); ++w)
      cross.row_ptr(i)[w] ^= d.words()[w];
  }
  cross = lows(cross);

  DenseOperator out(n);
  for (std::size_t idx = 0; idx < out.dim(); ++idx) {
    const BinVec x = index_bits(idx, n);
    Complex value = kOne;
    if (d.dot(x)) value *= -kImag;
    if (quad_form_lows(cross, x)) value = -value;
    out.at(idx, idx) = value;
  }
  return out;
}

StateVec projector_state(const StabilizerRep& state) {
  check_cap(state.n, kMaxDenseOperatorQubits);
  const std::size_t dim = std::size_t(1) << state.n;
  const double threshold = std::pow(0.5, 0.5 * double(state.n) + 1.0);
  for (std::size_t seed = 0; seed < dim; ++seed) {
    StateVec v(dim, 0.0);
    v[seed] = kOne;
    for (std::size_t k = 0; k < state.n; ++k) {
      Complex phase = kOne;
      if (state.f.get(k)) phase *= kImag;
      if (state.b.get(k)) phase = -phase;
      const StateVec tau_v = pauli_on_statevector(state.s.column(k), v);
      for (std::size_t x = 0; x < dim; ++x) v[x] = 0.5 * (v[x] + phase * tau_v[x]);
    }
    double norm2 = 0.0;
    for (const Complex& c : v) norm2 += std::norm(c);
    const double norm = std::sqrt(norm2);
    if (norm > threshold) {
      for (Complex& c : v) c /= norm;
      return v;
    }
  }
  throw std::runtime_error("projector_state: projection vanished on every seed");
}

PhaseComparison equal_up_to_phase(const StateVec& u, const StateVec& v, double tol) {
  if (u.size() != v.size()) throw DimMismatchError("equal_up_to_phase: size mismatch");
  std::size_t pivot = 0;
  double best = -1.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double mag = std::abs(v[k]);
    if (mag > best) {
      best = mag;
      pivot = k;
    }
  }
  if (best <= 0.0)
    throw std::invalid_argument("equal_up_to_phase: reference vector is zero");
  const Complex ratio = u[pivot] / v[pivot];
  PhaseComparison out;
  for (std::size_t k = 0; k < v.size(); ++k)
    out.max_deviation = std::max(out.max_deviation, std::abs(u[k] - ratio * v[k]));
  out.equal = out.max_deviation <= tol;
  return out;
}

PhaseComparison equal_up_to_phase(const DenseOperator& u, const DenseOperator& v,
                                  double tol) {
  if (u.n != v.n) throw DimMismatchError("equal_up_to_phase: size mismatch");
  return equal_up_to_phase(u.m, v.m, tol);
}

}  // namespace cgf2
