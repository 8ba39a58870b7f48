#include "cgf2/pauli.hpp"

#include <bit>

namespace cgf2 {

namespace {

// a2^T U a1 = <x part of a1, z part of a2>, the sign-counting term of the
// binary product rule. Word-parallel: the x half of a1 is realigned against
// the z half of a2 one word at a time.
bool cross_term(const BinVec& a1, const BinVec& a2, std::size_t n) {
  Word acc = 0;
  for (std::size_t k = 0; k < n; k += kWordBits) {
    std::size_t w = (n + k) / kWordBits;
    std::size_t s = (n + k) % kWordBits;
    Word x1 = a1.words()[w] >> s;
    if (s && w + 1 < a1.words().size()) x1 |= a1.words()[w + 1] << (kWordBits - s);
    Word z2 = a2.words()[k / kWordBits];
    if (n - k < kWordBits) z2 &= (Word(1) << (n - k)) - 1;
    acc ^= x1 & z2;
  }
  return std::popcount(acc) & 1;
}

}  // namespace

PauliElement pauli_mul(const PauliElement& p1, const PauliElement& p2) {
  if (p1.n != p2.n) throw DimMismatchError("pauli_mul: qubit count mismatch");
  PauliElement out;
  out.n = p1.n;
  out.delta = p1.delta ^ p2.delta;
  out.epsilon = p1.epsilon ^ p2.epsilon ^ (p1.delta & p2.delta) ^
                cross_term(p1.a, p2.a, p1.n);
  out.a = p1.a ^ p2.a;
  return out;
}

bool commutes(const BinVec& a, const BinVec& b) {
  if (a.len() != b.len() || a.len() % 2 != 0)
    throw DimMismatchError("commutes: bad vector lengths");
  const std::size_t n = a.len() / 2;
  // b^T P a = <z(a),x(b)> + <x(a),z(b)>
  bool acc = false;
  for (std::size_t k = 0; k < n; ++k) {
    acc ^= a.get(k) & b.get(n + k);
    acc ^= a.get(n + k) & b.get(k);
  }
  return !acc;
}

std::size_t y_weight(const BinVec& a) {
  const std::size_t n = a.len() / 2;
  std::size_t count = 0;
  for (std::size_t k = 0; k < n; ++k)
    if (a.get(k) && a.get(n + k)) ++count;
  return count;
}

bool is_hermitian(const PauliElement& p) {
  return p.delta == (y_weight(p.a) % 2 != 0);
}

std::string format_pauli_string(const PauliElement& p) {
  if (!is_hermitian(p))
    throw std::invalid_argument("format_pauli_string: element is not Hermitian");
  const std::size_t y = y_weight(p.a);
  // i^f (-1)^eps tau_a = (-1)^(eps + ceil(y/2)) sigma_a with f = y mod 2
  bool sign = p.epsilon ^ (((y + 1) / 2) % 2 != 0);
  std::string s;
  s.reserve(p.n + 1);
  s.push_back(sign ? '-' : '+');
  for (std::size_t k = 0; k < p.n; ++k) {
    bool z = p.a.get(k);
    bool x = p.a.get(p.n + k);
    s.push_back(z ? (x ? 'Y' : 'Z') : (x ? 'X' : 'I'));
  }
  return s;
}

PauliElement parse_pauli_string(const std::string& text, std::size_t line_no) {
  if (text.size() < 2) throw ParseError(line_no, "pauli string too short");
  bool sign;
  if (text[0] == '+')
    sign = false;
  else if (text[0] == '-')
    sign = true;
  else
    throw ParseError(line_no, "pauli string must start with '+' or '-'");
  const std::size_t n = text.size() - 1;
  BinVec a(2 * n);
  std::size_t y = 0;
  for (std::size_t k = 0; k < n; ++k) {
    switch (text[k + 1]) {
      case 'I':
        break;
      case 'X':
        a.set(n + k, true);
        break;
      case 'Z':
        a.set(k, true);
        break;
      case 'Y':
        a.set(k, true);
        a.set(n + k, true);
        ++y;
        break;
      default:
        throw ParseError(line_no, std::string("bad pauli letter '") + text[k + 1] + "'");
    }
  }
  PauliElement p;
  p.n = n;
  p.a = std::move(a);
  p.delta = (y % 2) != 0;
  p.epsilon = sign ^ (((y + 1) / 2) % 2 != 0);
  return p;
}

}  // namespace cgf2
