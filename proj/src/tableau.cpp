#include "cgf2/tableau.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace cgf2 {

namespace {

BinVec derived_d(const BinMat& c) {
  return diag_of_at_product(c, u_mul(c));
}

BinMat half_swap_cols(const BinMat& m) {
  BinMat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) out.set_row(i, swap_halves(m.row(i)));
  return out;
}

}  // namespace

CliffordTableau CliffordTableau::unchecked(BinMat c, BinVec d, BinVec h) {
  CliffordTableau t;
  t.n_ = c.rows() / 2;
  t.c_ = std::move(c);
  t.d_ = std::move(d);
  t.h_ = std::move(h);
  return t;
}

CliffordTableau CliffordTableau::checked(BinMat c, BinVec d, BinVec h) {
  if (c.rows() != c.cols() || c.rows() % 2 != 0)
    throw DimMismatchError("tableau: C must be 2n x 2n");
  const std::size_t two_n = c.rows();
  if (d.len() != two_n || h.len() != two_n)
    throw DimMismatchError("tableau: d and h must have length 2n");
  const BinMat p = symplectic_form(two_n / 2);
  const BinMat gram = mat_mul(transpose(c), mat_mul(p, c));
  if (gram != p) {
    for (std::size_t i = 0; i < two_n; ++i)
      for (std::size_t j = 0; j < two_n; ++j)
        if (gram.get(i, j) != p.get(i, j)) throw NotSymplecticError(i, j);
  }
  const BinVec want = derived_d(c);
  if (d != want) {
    for (std::size_t k = 0; k < two_n; ++k)
      if (d.get(k) != want.get(k)) throw PhaseVectorMismatchError(k);
  }
  return unchecked(std::move(c), std::move(d), std::move(h));
}

CliffordTableau CliffordTableau::identity(std::size_t n) {
  return unchecked(BinMat::identity(2 * n), BinVec(2 * n), BinVec(2 * n));
}

BinMat CliffordTableau::cbar() const {
  BinMat out(2 * n_ + 1, 2 * n_ + 1);
  out.paste(0, 0, c_);
  for (std::size_t k = 0; k < 2 * n_; ++k)
    if (d_.get(k)) out.set(2 * n_, k, true);
  out.set(2 * n_, 2 * n_, true);
  return out;
}

PauliElement conjugate_pauli(const CliffordTableau& q, const PauliElement& p) {
  if (q.n() != p.n) throw DimMismatchError("conjugate_pauli: qubit count mismatch");
  const std::size_t two_n = 2 * q.n();
  BinVec bbar1(two_n + 1);
  bbar1.paste(0, p.a);
  bbar1.set(two_n, p.delta);

  const BinMat cbar = q.cbar();
  const BinVec bbar2 = mat_vec(cbar, bbar1);
  const BinMat m = mat_mul(transpose(cbar), u_mul(cbar, true));

  PauliElement out;
  out.n = p.n;
  out.a = bbar2.slice(0, two_n);
  out.delta = bbar2.get(two_n);
  out.epsilon = p.epsilon ^ q.h().dot(p.a) ^ quad_form_lows(m, bbar1);
  return out;
}

CliffordTableau compose(const CliffordTableau& q2, const CliffordTableau& q1) {
  if (q2.n() != q1.n()) throw DimMismatchError("compose: qubit count mismatch");
  const std::size_t two_n = 2 * q1.n();

  const BinMat cbar1 = q1.cbar();
  const BinMat cbar2 = q2.cbar();
  const BinMat prod = mat_mul(cbar2, cbar1);

  // hbar21 = hbar1 + Cbar1^T hbar2 + diag(Cbar1^T lows(Cbar2^T Ubar Cbar2) Cbar1)
  BinVec hbar1(two_n + 1);
  hbar1.paste(0, q1.h());
  BinVec hbar2(two_n + 1);
  hbar2.paste(0, q2.h());

  const BinMat low = lows(mat_mul(transpose(cbar2), u_mul(cbar2, true)));
  const BinMat right = mat_mul(low, cbar1);
  BinVec hbar = hbar1;
  hbar ^= tmat_vec(cbar1, hbar2);
  hbar ^= diag_of_at_product(cbar1, right);

  BinMat c = prod.submatrix(0, two_n, 0, two_n);
  BinVec d = prod.row(two_n).slice(0, two_n);
  BinVec h = hbar.slice(0, two_n);
  return CliffordTableau::unchecked(std::move(c), std::move(d), std::move(h));
}

CliffordTableau inverse(const CliffordTableau& q) {
  const std::size_t two_n = 2 * q.n();

  // C^-1 = P C^T P: transpose, then swap the z/x halves of rows and columns.
  const BinMat cinv = swap_half_rows(half_swap_cols(transpose(q.c())));
  BinVec dinv = tmat_vec(cinv, q.d());

  BinMat cbar_inv(two_n + 1, two_n + 1);
  cbar_inv.paste(0, 0, cinv);
  for (std::size_t k = 0; k < two_n; ++k)
    if (dinv.get(k)) cbar_inv.set(two_n, k, true);
  cbar_inv.set(two_n, two_n, true);

  const BinMat cbar = q.cbar();
  const BinMat low = lows(mat_mul(transpose(cbar), u_mul(cbar, true)));
  const BinMat right = mat_mul(low, cbar_inv);

  BinVec hbar(two_n + 1);
  hbar.paste(0, q.h());
  BinVec hbar2 = tmat_vec(cbar_inv, hbar);
  hbar2 ^= diag_of_at_product(cbar_inv, right);

  return CliffordTableau::unchecked(cinv, std::move(dinv), hbar2.slice(0, two_n));
}

CliffordTableau pauli_gate(const BinVec& a) {
  if (a.len() % 2 != 0) throw DimMismatchError("pauli_gate: vector length must be 2n");
  const std::size_t n = a.len() / 2;
  return CliffordTableau::unchecked(BinMat::identity(2 * n), BinVec(2 * n),
                                    swap_halves(a));
}

CliffordTableau permutation_gate(const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  std::vector<bool> seen(n, false);
  for (std::size_t q : perm) {
    if (q >= n || seen[q])
      throw std::invalid_argument("permutation_gate: not a bijection");
    seen[q] = true;
  }
  BinMat c(2 * n, 2 * n);
  for (std::size_t q = 0; q < n; ++q) {
    c.set(perm[q], q, true);
    c.set(n + perm[q], n + q, true);
  }
  return CliffordTableau::unchecked(std::move(c), BinVec(2 * n), BinVec(2 * n));
}

CliffordTableau cnot_gate(std::size_t n, std::size_t control, std::size_t target) {
  if (control == target)
    throw std::invalid_argument("cnot_gate: control equals target");
  if (control >= n || target >= n)
    throw std::invalid_argument("cnot_gate: qubit index out of range");
  BinMat c = BinMat::identity(2 * n);
  c.set(control, target, true);          // R^-T block
  c.set(n + target, n + control, true);  // R block
  return CliffordTableau::unchecked(std::move(c), BinVec(2 * n), BinVec(2 * n));
}

CliffordTableau linear_gate(const BinMat& r) {
  if (r.rows() != r.cols()) throw DimMismatchError("linear_gate: R must be square");
  const std::size_t n = r.rows();
  const BinMat rinv_t = transpose(mat_inverse(r));
  BinMat c(2 * n, 2 * n);
  c.paste(0, 0, rinv_t);
  c.paste(n, n, r);
  return CliffordTableau::unchecked(std::move(c), BinVec(2 * n), BinVec(2 * n));
}

CliffordTableau hadamard_gate(std::size_t n, const std::vector<std::size_t>& qubits) {
  BinMat c = BinMat::identity(2 * n);
  for (std::size_t q : qubits) {
    if (q >= n) throw std::invalid_argument("hadamard_gate: qubit index out of range");
    c.set(q, q, false);
    c.set(n + q, n + q, false);
    c.set(q, n + q, true);
    c.set(n + q, q, true);
  }
  return CliffordTableau::unchecked(std::move(c), BinVec(2 * n), BinVec(2 * n));
}

CliffordTableau exp_pi4_gate(const BinVec& a) {
  if (a.len() % 2 != 0) throw DimMismatchError("exp_pi4_gate: vector length must be 2n");
  if (a.is_zero())
    throw std::invalid_argument("exp_pi4_gate: a = 0 is only a global phase");
  const std::size_t n = a.len() / 2;
  const BinVec pa = swap_halves(a);
  BinMat c = BinMat::identity(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    if (!a.get(i)) continue;
    for (std::size_t w = 0; w < c.row_words(); ++w) c.row_ptr(i)[w] ^= pa.words()[w];
  }
  // h = C^T U a; U a is the x half of a moved into the z slots.
  BinVec ua(2 * n);
  ua.paste(0, a.slice(n, 2 * n));
  BinVec h = tmat_vec(c, ua);
  return CliffordTableau::unchecked(std::move(c), derived_d(c), std::move(h));
}

CliffordTableau quadratic_phase_gate(const BinMat& z) {
  if (!is_symmetric(z))
    throw std::invalid_argument("quadratic_phase_gate: Z must be symmetric");
  const std::size_t n = z.rows();
  BinMat c = BinMat::identity(2 * n);
  c.paste(0, n, z);
  return CliffordTableau::unchecked(std::move(c), derived_d(c), BinVec(2 * n));
}

CliffordTableau random_tableau(std::size_t n, std::uint64_t& rng_state) {
  const std::size_t r = splitmix64(rng_state) % (n + 1);
  const std::size_t b = n - r;

  BinMat z_br(n, n), z_bc(n, n);
  z_br.paste(0, 0, random_symmetric(b, rng_state));
  z_br.paste(n - r, n - r, random_symmetric(r, rng_state));
  z_bc.paste(n - r, n - r, random_symmetric(r, rng_state));
  BinMat v1 = random_matrix(b, r, rng_state);
  BinMat v2 = random_matrix(b, r, rng_state);
  z_br.paste(0, b, v1);
  z_br.paste(b, 0, transpose(v1));
  z_bc.paste(0, b, v2);
  z_bc.paste(b, 0, transpose(v2));

  std::vector<std::size_t> tail(r);
  for (std::size_t k = 0; k < r; ++k) tail[k] = b + k;

  CliffordTableau t = linear_gate(random_invertible(n, rng_state));
  t = compose(t, quadratic_phase_gate(z_br));
  t = compose(t, hadamard_gate(n, tail));
  t = compose(t, quadratic_phase_gate(z_bc));
  t = compose(t, linear_gate(random_invertible(n, rng_state)));

  return CliffordTableau::unchecked(t.c(), t.d(), random_vector(2 * n, rng_state));
}

CliffordTableau read_tableau(std::istream& in, std::size_t& line_no) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError(line_no, "missing tableau header");
  ++line_no;
  std::istringstream hs(header);
  std::string tag;
  std::size_t n = 0;
  if (!(hs >> tag >> n) || tag != "n")
    throw ParseError(line_no - 1, "expected 'n <count>' header");
  auto read_bits = [&](std::size_t len) {
    std::string row;
    if (!std::getline(in, row)) throw ParseError(line_no, "missing bit row");
    ++line_no;
    if (row.size() != len) throw ParseError(line_no - 1, "bad bit row length");
    BinVec v(len);
    for (std::size_t j = 0; j < len; ++j) {
      if (row[j] == '1')
        v.set(j, true);
      else if (row[j] != '0')
        throw ParseError(line_no - 1, "bad bit character");
    }
    return v;
  };
  BinMat c(2 * n, 2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) c.set_row(i, read_bits(2 * n));
  BinVec d = read_bits(2 * n);
  BinVec h = read_bits(2 * n);
  return CliffordTableau::checked(std::move(c), std::move(d), std::move(h));
}

void write_tableau(std::ostream& out, const CliffordTableau& t) {
  out << "n " << t.n() << '\n';
  for (std::size_t i = 0; i < 2 * t.n(); ++i) out << t.c().row(i).str() << '\n';
  out << t.d().str() << '\n';
  out << t.h().str() << '\n';
}

}  // namespace cgf2
