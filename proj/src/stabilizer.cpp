#include "cgf2/stabilizer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace cgf2 {

StabilizerRep StabilizerRep::unchecked(BinMat s, BinVec f, BinVec b) {
  StabilizerRep st;
  st.n = s.cols();
  st.s = std::move(s);
  st.f = std::move(f);
  st.b = std::move(b);
  return st;
}

StabilizerRep StabilizerRep::checked(BinMat s, BinVec f, BinVec b) {
  if (s.rows() != 2 * s.cols()) throw DimMismatchError("stabilizer: S must be 2n x n");
  const std::size_t n = s.cols();
  if (f.len() != n || b.len() != n)
    throw DimMismatchError("stabilizer: f and b must have length n");

  const BinVec want_f = diag_of_at_product(s, u_mul(s));
  for (std::size_t k = 0; k < n; ++k)
    if (f.get(k) != want_f.get(k)) throw NonHermitianGeneratorError(k);

  const BinMat gram = mat_mul(transpose(s), swap_half_rows(s));  // S^T P S
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k)
      if (gram.get(j, k)) throw NonCommutingError(j, k);

  // Independence, reporting the first offending generator.
  BinMat prefix(2 * n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    BinMat next(2 * n, k + 1);
    for (std::size_t j = 0; j < k; ++j) next.set_column(j, prefix.column(j));
    next.set_column(k, s.column(k));
    if (mat_rank(next) != k + 1) throw DependentGeneratorsError(k);
    prefix = std::move(next);
  }

  return unchecked(std::move(s), std::move(f), std::move(b));
}

StabilizerRep StabilizerRep::zero_state(std::size_t n) {
  BinMat s(2 * n, n);
  for (std::size_t k = 0; k < n; ++k) s.set(k, k, true);
  return unchecked(std::move(s), BinVec(n), BinVec(n));
}

PauliElement StabilizerRep::generator(std::size_t k) const {
  PauliElement p;
  p.n = n;
  p.a = s.column(k);
  p.delta = f.get(k);
  p.epsilon = b.get(k);
  return p;
}

BinMat StabilizerRep::sbar() const {
  BinMat out(2 * n + 1, n);
  out.paste(0, 0, s);
  for (std::size_t k = 0; k < n; ++k)
    if (f.get(k)) out.set(2 * n, k, true);
  return out;
}

StabilizerRep apply_clifford(const StabilizerRep& state, const CliffordTableau& q) {
  if (state.n != q.n()) throw DimMismatchError("apply_clifford: qubit count mismatch");
  const std::size_t n = state.n;
  const BinMat cbar = q.cbar();
  const BinMat sb = state.sbar();
  const BinMat sb2 = mat_mul(cbar, sb);

  const BinMat low = lows(mat_mul(transpose(cbar), u_mul(cbar, true)));
  BinVec b2 = state.b;
  b2 ^= tmat_vec(state.s, q.h());
  b2 ^= diag_of_at_product(sb, mat_mul(low, sb));

  BinMat s2 = sb2.submatrix(0, 2 * n, 0, n);
  BinVec f2 = sb2.row(2 * n);
  return StabilizerRep::unchecked(std::move(s2), std::move(f2), std::move(b2));
}

StabilizerRep basis_change(const StabilizerRep& state, const BinMat& r) {
  const std::size_t n = state.n;
  if (r.rows() != n || r.cols() != n)
    throw DimMismatchError("basis_change: R must be n x n");
  if (mat_rank(r) != n) throw SingularMatrixError(mat_rank(r), n);

  const BinMat sb = state.sbar();
  const BinMat sb2 = mat_mul(sb, r);

  // S^T Ubar S = S^T U S + f f^T
  BinMat m = mat_mul(transpose(state.s), u_mul(state.s));
  for (std::size_t i = 0; i < n; ++i) {
    if (!state.f.get(i)) continue;
    for (std::size_t w = 0; w < m.row_words(); ++w)
      m.row_ptr(i)[w] ^= state.f.words()[w];
  }
  BinVec b2 = tmat_vec(r, state.b);
  b2 ^= diag_of_at_product(r, mat_mul(lows(m), r));

  BinMat s2 = sb2.submatrix(0, 2 * n, 0, n);
  BinVec f2 = sb2.row(2 * n);
  return StabilizerRep::unchecked(std::move(s2), std::move(f2), std::move(b2));
}

namespace {

void expect(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("canonical_form: ") + what);
}

}  // namespace

CanonicalStabilizer canonical_form(const StabilizerRep& input) {
  const std::size_t n = input.n;
  StabilizerRep st = input;

  // First basis change: push the kernel of the x block into the last columns.
  const BinMat w_block = st.s.submatrix(n, 2 * n, 0, n);
  const KernelRange kr_w = kernel_range_bases(w_block);
  const std::size_t r_ab = kr_w.rank;
  const std::size_t r_c = n - r_ab;
  {
    const BinMat completed = complete_to_invertible(kr_w.kernel);
    BinMat r1(n, n);
    for (std::size_t j = 0; j < r_ab; ++j) r1.set_column(j, completed.column(r_c + j));
    for (std::size_t j = 0; j < r_c; ++j) r1.set_column(r_ab + j, completed.column(j));
    st = basis_change(st, r1);
  }

  // Second basis change: zero the middle columns of the z block, keeping the
  // identity tail so the x block stays [W_ab 0].
  const BinMat v1_block = st.s.submatrix(0, n, 0, n);
  const KernelRange kr_v = kernel_range_bases(v1_block);
  const std::size_t r_b = n - kr_v.rank;
  expect(r_b <= r_ab, "kernel of V wider than rank of W");
  const std::size_t r_a = r_ab - r_b;
  {
    BinMat fixed(n, r_b + r_c);
    fixed.paste(0, 0, kr_v.kernel);
    for (std::size_t k = 0; k < r_c; ++k) fixed.set(r_ab + k, r_b + k, true);
    const BinMat completed = complete_to_invertible(fixed);
    BinMat r2(n, n);
    for (std::size_t j = 0; j < r_a; ++j)
      r2.set_column(j, completed.column(r_b + r_c + j));
    for (std::size_t j = 0; j < r_b; ++j) r2.set_column(r_a + j, completed.column(j));
    for (std::size_t j = 0; j < r_c; ++j)
      r2.set_column(r_ab + j, completed.column(r_b + j));
    st = basis_change(st, r2);
  }

  // Index-space transform |x> -> |T^-1 x> with T completing the x block's
  // range basis; leaves f and b alone.
  const BinMat w2 = st.s.submatrix(n, 2 * n, 0, n);
  const BinMat t = complete_to_invertible(w2.submatrix(0, n, 0, r_ab));
  st = apply_clifford(st, linear_gate(mat_inverse(t)));

  {
    BinMat want(n, n);
    want.paste(0, 0, BinMat::identity(r_ab));
    expect(st.s.submatrix(n, 2 * n, 0, n) == want, "x block not reduced");
  }

  // Final basis change: clear V_ca against the invertible V_cc.
  const BinMat v3 = st.s.submatrix(0, n, 0, n);
  expect(v3.submatrix(0, r_ab, r_ab, n).is_zero(), "upper-right z block not zero");
  expect(v3.submatrix(r_a, r_ab, 0, n).is_zero(), "middle z rows not zero");
  expect(v3.submatrix(0, n, r_a, r_ab).is_zero(), "middle z columns not zero");
  {
    const BinMat v_ca = v3.submatrix(r_ab, n, 0, r_a);
    const BinMat v_cc = v3.submatrix(r_ab, n, r_ab, n);
    BinMat r3 = BinMat::identity(n);
    const BinMat v_cc_inv = mat_inverse(v_cc);
    r3.paste(r_ab, 0, mat_mul(v_cc_inv, v_ca));
    r3.paste(r_ab, r_ab, v_cc_inv);
    st = basis_change(st, r3);
  }

  CanonicalStabilizer canon;
  canon.t = t;
  canon.z = st.s.submatrix(0, r_a, 0, r_a);
  canon.ra = r_a;
  canon.rb = r_b;
  canon.rc = r_c;
  canon.fa = diag_vec(canon.z);
  canon.b_ab = st.b.slice(0, r_ab);
  canon.b_c = st.b.slice(r_ab, n);

  expect(is_symmetric(canon.z), "Z not symmetric");
  expect(mat_rank(canon.z) == r_a, "Z not full rank");
  expect(st == canonical_state(canon), "canonical shape mismatch");
  return canon;
}

StabilizerRep canonical_state(const CanonicalStabilizer& canon) {
  const std::size_t n = canon.ra + canon.rb + canon.rc;
  const std::size_t r_ab = canon.ra + canon.rb;
  BinMat s(2 * n, n);
  s.paste(0, 0, canon.z);
  s.paste(canon.ra + canon.rb, r_ab, BinMat::identity(canon.rc));
  s.paste(n, 0, BinMat::identity(r_ab));
  BinVec f(n);
  f.paste(0, canon.fa);
  BinVec b(n);
  b.paste(0, canon.b_ab);
  b.paste(r_ab, canon.b_c);
  return StabilizerRep::unchecked(std::move(s), std::move(f), std::move(b));
}

AmplitudeMap amplitudes(const CanonicalStabilizer& canon) {
  AmplitudeMap map;
  map.t = canon.t;
  map.b_c = canon.b_c;
  map.ra = canon.ra;
  map.rb = canon.rb;
  map.fa = canon.fa;
  BinMat cross = canon.z;
  for (std::size_t i = 0; i < canon.ra; ++i) {
    if (!canon.fa.get(i)) continue;
    for (std::size_t w = 0; w < cross.row_words(); ++w)
      cross.row_ptr(i)[w] ^= canon.fa.words()[w];
  }
  map.cross = lows(cross);
  map.b_ab = canon.b_ab;
  map.norm = 1.0 / std::sqrt(std::ldexp(1.0, int(canon.ra + canon.rb)));
  return map;
}

BinVec AmplitudeMap::support_point(const BinVec& y) const {
  BinVec arg(t.cols());
  arg.paste(0, y);
  arg.paste(ra + rb, b_c);
  return mat_vec(t, arg);
}

std::complex<double> AmplitudeMap::value(const BinVec& y) const {
  const BinVec ya = y.slice(0, ra);
  bool i_power = false;
  for (std::size_t k = 0; k < ra; ++k) i_power ^= fa.get(k) & y.get(k);
  bool sign = quad_form_lows(cross, ya) ^ b_ab.dot(y);
  std::complex<double> phase = i_power ? std::complex<double>(0.0, -1.0)
                                       : std::complex<double>(1.0, 0.0);
  if (sign) phase = -phase;
  return phase * norm;
}

std::vector<AmplitudeEntry> enumerate_amplitudes(const CanonicalStabilizer& canon) {
  const AmplitudeMap map = amplitudes(canon);
  const std::size_t dim = canon.ra + canon.rb;
  std::vector<AmplitudeEntry> out;
  out.reserve(std::size_t(1) << dim);
  for (std::size_t bits = 0; bits < (std::size_t(1) << dim); ++bits) {
    BinVec y(dim);
    for (std::size_t k = 0; k < dim; ++k)
      if ((bits >> k) & 1) y.set(k, true);
    out.push_back(AmplitudeEntry{map.support_point(y), map.value(y)});
  }
  std::sort(out.begin(), out.end(), [](const AmplitudeEntry& a, const AmplitudeEntry& b) {
    return a.x.str() < b.x.str();
  });
  return out;
}

std::size_t basis_index(const BinVec& x) {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < x.len(); ++k) idx = (idx << 1) | (x.get(k) ? 1 : 0);
  return idx;
}

BinVec index_bits(std::size_t index, std::size_t n) {
  BinVec x(n);
  for (std::size_t k = 0; k < n; ++k)
    if ((index >> (n - 1 - k)) & 1) x.set(k, true);
  return x;
}

std::vector<std::complex<double>> state_vector(const CanonicalStabilizer& canon) {
  const std::size_t n = canon.ra + canon.rb + canon.rc;
  if (n > 24) throw std::invalid_argument("state_vector: too many qubits");
  std::vector<std::complex<double>> psi(std::size_t(1) << n, 0.0);
  for (const AmplitudeEntry& e : enumerate_amplitudes(canon))
    psi[basis_index(e.x)] = e.value;
  return psi;
}

std::vector<std::complex<double>> pauli_on_statevector(
    const BinVec& a, const std::vector<std::complex<double>>& psi) {
  if (a.len() % 2 != 0) throw DimMismatchError("pauli_on_statevector: odd vector");
  const std::size_t n = a.len() / 2;
  if (psi.size() != (std::size_t(1) << n))
    throw DimMismatchError("pauli_on_statevector: state dimension mismatch");
  std::size_t v_mask = 0, w_mask = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (a.get(k)) v_mask |= std::size_t(1) << (n - 1 - k);
    if (a.get(n + k)) w_mask |= std::size_t(1) << (n - 1 - k);
  }
  std::vector<std::complex<double>> out(psi.size());
  for (std::size_t x = 0; x < psi.size(); ++x) {
    const bool sign = std::popcount(x & v_mask) & 1;
    out[x] = sign ? -psi[x ^ w_mask] : psi[x ^ w_mask];
  }
  return out;
}

StabilizerRep read_stabilizer(std::istream& in) {
  std::size_t line_no = 0;
  std::string line;
  std::size_t n = 0;
  bool have_header = false;
  std::vector<PauliElement> gens;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string token;
    if (!(ls >> token)) continue;
    if (!have_header) {
      if (token != "n") throw ParseError(line_no, "expected 'n <count>' header");
      if (!(ls >> n) || n == 0) throw ParseError(line_no, "bad qubit count");
      have_header = true;
      continue;
    }
    PauliElement p = parse_pauli_string(token, line_no);
    if (p.n != n) throw ParseError(line_no, "pauli string length mismatch");
    gens.push_back(std::move(p));
  }
  if (!have_header) throw ParseError(line_no, "missing 'n <count>' header");
  if (gens.size() != n)
    throw ParseError(line_no, "expected " + std::to_string(n) + " generators, got " +
                                  std::to_string(gens.size()));
  BinMat s(2 * n, n);
  BinVec f(n), b(n);
  for (std::size_t k = 0; k < n; ++k) {
    s.set_column(k, gens[k].a);
    f.set(k, gens[k].delta);
    b.set(k, gens[k].epsilon);
  }
  return StabilizerRep::checked(std::move(s), std::move(f), std::move(b));
}

void write_stabilizer(std::ostream& out, const StabilizerRep& state) {
  out << "n " << state.n << '\n';
  for (std::size_t k = 0; k < state.n; ++k)
    out << format_pauli_string(state.generator(k)) << '\n';
}

std::string format_amplitude_value(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_amplitudes(std::ostream& out, const CanonicalStabilizer& canon) {
  for (const AmplitudeEntry& e : enumerate_amplitudes(canon))
    out << e.x.str() << ' ' << format_amplitude_value(e.value.real()) << ' '
        << format_amplitude_value(e.value.imag()) << '\n';
}

}  // namespace cgf2
