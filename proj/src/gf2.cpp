#include "cgf2/gf2.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>

namespace cgf2 {

namespace {

void check_same_len(const BinVec& a, const BinVec& b) {
  if (a.len() != b.len())
    throw DimMismatchError("vector length mismatch: " + std::to_string(a.len()) +
                           " vs " + std::to_string(b.len()));
}

}  // namespace

BinVec& BinVec::operator^=(const BinVec& other) {
  check_same_len(*this, other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

bool BinVec::dot(const BinVec& other) const {
  check_same_len(*this, other);
  // popcount parity is XOR-linear, so the AND words can be folded first
  Word acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
  return std::popcount(acc) & 1;
}

std::size_t BinVec::popcount() const {
  std::size_t total = 0;
  for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BinVec::is_zero() const {
  for (Word w : words_)
    if (w) return false;
  return true;
}

BinVec BinVec::slice(std::size_t begin, std::size_t end) const {
  BinVec out(end - begin);
  for (std::size_t k = begin; k < end; ++k)
    if (get(k)) out.set(k - begin, true);
  return out;
}

void BinVec::paste(std::size_t at, const BinVec& src) {
  for (std::size_t k = 0; k < src.len(); ++k) set(at + k, src.get(k));
}

std::string BinVec::str() const {
  std::string s(len_, '0');
  for (std::size_t k = 0; k < len_; ++k)
    if (get(k)) s[k] = '1';
  return s;
}

BinMat BinMat::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows.begin()->size() : 0;
  BinMat m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimMismatchError("ragged initializer rows");
    std::size_t j = 0;
    for (int b : row) m.set(i, j++, b != 0);
    ++i;
  }
  return m;
}

void BinMat::xor_row_into(std::size_t src, std::size_t dst) {
  Word* d = row_ptr(dst);
  const Word* s = row_ptr(src);
  for (std::size_t w = 0; w < row_words_; ++w) d[w] ^= s[w];
}

void BinMat::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  Word* a = row_ptr(i);
  Word* b = row_ptr(j);
  for (std::size_t w = 0; w < row_words_; ++w) std::swap(a[w], b[w]);
}

BinVec BinMat::row(std::size_t i) const {
  BinVec v(cols_);
  std::copy(row_ptr(i), row_ptr(i) + row_words_, v.words().begin());
  return v;
}

void BinMat::set_row(std::size_t i, const BinVec& v) {
  if (v.len() != cols_) throw DimMismatchError("row length mismatch");
  std::copy(v.words().begin(), v.words().end(), row_ptr(i));
}

BinVec BinMat::column(std::size_t j) const {
  BinVec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    if (get(i, j)) v.set(i, true);
  return v;
}

void BinMat::set_column(std::size_t j, const BinVec& v) {
  if (v.len() != rows_) throw DimMismatchError("column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) set(i, j, v.get(i));
}

BinMat BinMat::submatrix(std::size_t r0, std::size_t r1, std::size_t c0,
                         std::size_t c1) const {
  BinMat out(r1 - r0, c1 - c0);
  if (c0 % kWordBits == 0) {
    const std::size_t w0 = c0 / kWordBits;
    const std::size_t len = c1 - c0;
    const Word tail_mask =
        len % kWordBits ? (Word(1) << (len % kWordBits)) - 1 : ~Word(0);
    for (std::size_t i = r0; i < r1; ++i) {
      Word* dst = out.row_ptr(i - r0);
      const Word* src = row_ptr(i) + w0;
      std::copy(src, src + out.row_words_, dst);
      if (out.row_words_) dst[out.row_words_ - 1] &= tail_mask;
    }
    return out;
  }
  for (std::size_t i = r0; i < r1; ++i)
    for (std::size_t j = c0; j < c1; ++j)
      if (get(i, j)) out.set(i - r0, j - c0, true);
  return out;
}

void BinMat::paste(std::size_t r0, std::size_t c0, const BinMat& block) {
  if (c0 % kWordBits == 0 && block.cols() > 0) {
    const std::size_t w0 = c0 / kWordBits;
    const std::size_t full = block.cols() / kWordBits;
    const Word tail_mask = block.cols() % kWordBits
                               ? (Word(1) << (block.cols() % kWordBits)) - 1
                               : 0;
    for (std::size_t i = 0; i < block.rows(); ++i) {
      Word* dst = row_ptr(r0 + i) + w0;
      const Word* src = block.row_ptr(i);
      std::copy(src, src + full, dst);
      if (tail_mask) dst[full] = (dst[full] & ~tail_mask) | (src[full] & tail_mask);
    }
    return;
  }
  for (std::size_t i = 0; i < block.rows(); ++i)
    for (std::size_t j = 0; j < block.cols(); ++j)
      set(r0 + i, c0 + j, block.get(i, j));
}

bool BinMat::is_zero() const {
  for (Word w : data_)
    if (w) return false;
  return true;
}

StructMatrices StructMatrices::make(std::size_t n) {
  return StructMatrices{n, upper_block_matrix(n), symplectic_form(n)};
}

BinMat upper_block_matrix(std::size_t n) {
  BinMat u(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) u.set(i, n + i, true);
  return u;
}

BinMat symplectic_form(std::size_t n) {
  BinMat p(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    p.set(i, n + i, true);
    p.set(n + i, i, true);
  }
  return p;
}

namespace {

inline void xor_words(Word* dst, const Word* src, std::size_t n) {
  for (std::size_t w = 0; w < n; ++w) dst[w] ^= src[w];
}

void mul_naive(const BinMat& a, const BinMat& b, BinMat& c) {
  const std::size_t bw = b.row_words();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Word* crow = c.row_ptr(i);
    const Word* arow = a.row_ptr(i);
    for (std::size_t kw = 0; kw < a.row_words(); ++kw) {
      Word bits = arow[kw];
      while (bits) {
        std::size_t k = kw * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        xor_words(crow, b.row_ptr(k), bw);
      }
    }
  }
}

// Four-Russians multiply, strip-mined over the output columns with four
// 8-row lookup tables per sweep: each output row is then touched once per
// 32 rows of b, and the tables stay L2 resident.
void mul_m4r(const BinMat& a, const BinMat& b, BinMat& c) {
  constexpr std::size_t kStripWords = 64;
  constexpr std::size_t kBatch = 4;  // groups per sweep; 32 b-rows
  const std::size_t bw = b.row_words();
  std::vector<Word> table(kBatch * 256 * kStripWords);
  for (std::size_t w0 = 0; w0 < bw; w0 += kStripWords) {
    const std::size_t sw = std::min(kStripWords, bw - w0);
    for (std::size_t base = 0; base < b.rows(); base += 8 * kBatch) {
      std::size_t mask[kBatch] = {0, 0, 0, 0};
      for (std::size_t g = 0; g < kBatch; ++g) {
        Word* tbl = table.data() + g * 256 * sw;
        std::fill(tbl, tbl + sw, 0);
        const std::size_t gbase = base + 8 * g;
        if (gbase >= b.rows()) continue;
        const std::size_t gb = std::min<std::size_t>(8, b.rows() - gbase);
        const std::size_t entries = std::size_t(1) << gb;
        mask[g] = entries - 1;
        for (std::size_t m = 1; m < entries; ++m) {
          const std::size_t low = m & (~m + 1);
          const std::size_t r =
              gbase + static_cast<std::size_t>(std::countr_zero(static_cast<unsigned>(m)));
          Word* dst = tbl + m * sw;
          const Word* prev = tbl + (m ^ low) * sw;
          const Word* brow = b.row_ptr(r) + w0;
          for (std::size_t t = 0; t < sw; ++t) dst[t] = prev[t] ^ brow[t];
        }
      }
      // base is 32-aligned, so the 32-bit chunk never straddles a word
      const std::size_t word = base / kWordBits;
      const std::size_t shift = base % kWordBits;
      for (std::size_t i = 0; i < a.rows(); ++i) {
        const std::size_t chunk =
            static_cast<std::size_t>(a.row_ptr(i)[word] >> shift) & 0xFFFFFFFFu;
        if (!chunk) continue;
        const Word* t0 = table.data() + (chunk & mask[0]) * sw;
        const Word* t1 = table.data() + (256 + ((chunk >> 8) & mask[1])) * sw;
        const Word* t2 = table.data() + (512 + ((chunk >> 16) & mask[2])) * sw;
        const Word* t3 = table.data() + (768 + ((chunk >> 24) & mask[3])) * sw;
        Word* crow = c.row_ptr(i) + w0;
        for (std::size_t t = 0; t < sw; ++t) crow[t] ^= t0[t] ^ t1[t] ^ t2[t] ^ t3[t];
      }
    }
  }
}

}  // namespace

BinMat mat_mul(const BinMat& a, const BinMat& b) {
  if (a.cols() != b.rows())
    throw DimMismatchError("mat_mul: " + std::to_string(a.cols()) + " cols vs " +
                           std::to_string(b.rows()) + " rows");
  BinMat c(a.rows(), b.cols());
  if (b.rows() >= 256 && b.row_words() >= 8)
    mul_m4r(a, b, c);
  else
    mul_naive(a, b, c);
  return c;
}

BinMat mat_add(const BinMat& a, const BinMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimMismatchError("mat_add: shape mismatch");
  BinMat c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    xor_words(c.row_ptr(i), b.row_ptr(i), a.row_words());
  return c;
}

namespace {

// 64x64 bit transpose, recursive block swap; bit k of a row is column k.
void transpose64(Word a[64]) {
  Word m = 0x00000000FFFFFFFFull;
  for (std::size_t j = 32; j != 0; j >>= 1, m ^= m << j) {
    for (std::size_t k = 0; k < 64; k = (k + j + 1) & ~j) {
      Word t = ((a[k] >> j) ^ a[k + j]) & m;
      a[k] ^= t << j;
      a[k + j] ^= t;
    }
  }
}

}  // namespace

BinMat transpose(const BinMat& a) {
  BinMat t(a.cols(), a.rows());
  Word block[64];
  const std::size_t bi_count = words_for(a.rows());
  const std::size_t bj_count = a.row_words();
  for (std::size_t bi = 0; bi < bi_count; ++bi) {
    for (std::size_t bj = 0; bj < bj_count; ++bj) {
      const std::size_t r_lim = std::min<std::size_t>(64, a.rows() - bi * 64);
      for (std::size_t k = 0; k < 64; ++k)
        block[k] = k < r_lim ? a.row_ptr(bi * 64 + k)[bj] : 0;
      transpose64(block);
      const std::size_t c_lim = std::min<std::size_t>(64, t.rows() - bj * 64);
      for (std::size_t k = 0; k < c_lim; ++k)
        t.row_ptr(bj * 64 + k)[bi] = block[k];
    }
  }
  return t;
}

BinMat mat_inverse(const BinMat& a) {
  if (a.rows() != a.cols()) throw DimMismatchError("mat_inverse: non-square input");
  const std::size_t n = a.rows();
  BinMat work = a;
  BinMat inv = BinMat::identity(n);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t i = rank; i < n; ++i) {
      if (work.get(i, col)) {
        pivot = i;
        break;
      }
    }
    if (pivot == n) continue;
    work.swap_rows(rank, pivot);
    inv.swap_rows(rank, pivot);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != rank && work.get(i, col)) {
        work.xor_row_into(rank, i);
        inv.xor_row_into(rank, i);
      }
    }
    ++rank;
  }
  if (rank < n) throw SingularMatrixError(rank, n);
  return inv;
}

BinMat lows(const BinMat& a) {
  if (a.rows() != a.cols()) throw DimMismatchError("lows: non-square input");
  BinMat out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Word* row = out.row_ptr(i);
    const std::size_t full = i / kWordBits;
    const std::size_t rem = i % kWordBits;
    row[full] &= rem ? (Word(1) << rem) - 1 : 0;
    for (std::size_t w = full + 1; w < a.row_words(); ++w) row[w] = 0;
  }
  return out;
}

BinVec diag_vec(const BinMat& a) {
  if (a.rows() != a.cols()) throw DimMismatchError("diag_vec: non-square input");
  BinVec d(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (a.get(i, i)) d.set(i, true);
  return d;
}

bool is_symmetric(const BinMat& a) {
  if (a.rows() != a.cols()) return false;
  return a == transpose(a);
}

bool is_symplectic(const BinMat& a, const BinMat& p) {
  if (a.rows() != a.cols() || a.rows() != p.rows()) return false;
  return mat_mul(transpose(a), mat_mul(p, a)) == p;
}

std::size_t mat_rank(const BinMat& a) {
  BinMat work = a;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t pivot = a.rows();
    for (std::size_t i = rank; i < a.rows(); ++i) {
      if (work.get(i, col)) {
        pivot = i;
        break;
      }
    }
    if (pivot == a.rows()) continue;
    work.swap_rows(rank, pivot);
    for (std::size_t i = rank + 1; i < a.rows(); ++i)
      if (work.get(i, col)) work.xor_row_into(rank, i);
    ++rank;
  }
  return rank;
}

KernelRange kernel_range_bases(const BinMat& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  BinMat work = a;
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rows;
    for (std::size_t i = rank; i < rows; ++i) {
      if (work.get(i, col)) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows) continue;
    work.swap_rows(rank, pivot);
    for (std::size_t i = 0; i < rows; ++i)
      if (i != rank && work.get(i, col)) work.xor_row_into(rank, i);
    pivot_col.push_back(col);
    ++rank;
  }

  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;

  BinMat kernel(cols, cols - rank);
  std::size_t k = 0;
  for (std::size_t j = 0; j < cols; ++j) {
    if (is_pivot[j]) continue;
    kernel.set(j, k, true);
    for (std::size_t i = 0; i < rank; ++i)
      if (work.get(i, j)) kernel.set(pivot_col[i], k, true);
    ++k;
  }

  BinMat range(rows, rank);
  for (std::size_t i = 0; i < rank; ++i)
    range.set_column(i, a.column(pivot_col[i]));

  return KernelRange{std::move(kernel), std::move(range), rank};
}

BinMat complete_to_invertible(const BinMat& cols) {
  const std::size_t n = cols.rows();
  if (cols.cols() > n) throw DimMismatchError("complete_to_invertible: too many columns");

  // Reduce the given columns, tracking which pivot rows they claim.
  std::vector<BinVec> reduced;
  std::vector<std::size_t> pivots;
  std::vector<bool> claimed(n, false);
  for (std::size_t j = 0; j < cols.cols(); ++j) {
    BinVec v = cols.column(j);
    for (std::size_t t = 0; t < reduced.size(); ++t)
      if (v.get(pivots[t])) v ^= reduced[t];
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (v.get(i)) {
        p = i;
        break;
      }
    }
    if (p == n)
      throw SingularMatrixError(reduced.size(), n);
    reduced.push_back(v);
    pivots.push_back(p);
    claimed[p] = true;
  }

  BinMat out(n, n);
  for (std::size_t j = 0; j < cols.cols(); ++j) out.set_column(j, cols.column(j));
  std::size_t j = cols.cols();
  for (std::size_t p = 0; p < n; ++p) {
    if (claimed[p]) continue;
    out.set(p, j, true);
    ++j;
  }
  return out;
}

BinVec mat_vec(const BinMat& a, const BinVec& x) {
  if (a.cols() != x.len()) throw DimMismatchError("mat_vec: shape mismatch");
  BinVec y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Word acc = 0;
    const Word* row = a.row_ptr(i);
    for (std::size_t w = 0; w < a.row_words(); ++w) acc ^= row[w] & x.words()[w];
    if (std::popcount(acc) & 1) y.set(i, true);
  }
  return y;
}

BinVec tmat_vec(const BinMat& a, const BinVec& s) {
  if (a.rows() != s.len()) throw DimMismatchError("tmat_vec: shape mismatch");
  BinVec y(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (!s.get(i)) continue;
    for (std::size_t w = 0; w < a.row_words(); ++w) y.words()[w] ^= a.row_ptr(i)[w];
  }
  return y;
}

BinVec diag_of_at_product(const BinMat& a, const BinMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimMismatchError("diag_of_at_product: shape mismatch");
  BinVec d(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Word* ra = a.row_ptr(i);
    const Word* rb = b.row_ptr(i);
    for (std::size_t w = 0; w < a.row_words(); ++w) d.words()[w] ^= ra[w] & rb[w];
  }
  return d;
}

bool quad_form_lows(const BinMat& m, const BinVec& x) {
  if (m.rows() != m.cols() || m.rows() != x.len())
    throw DimMismatchError("quad_form_lows: shape mismatch");
  bool acc = false;
  for (std::size_t i = 0; i < x.len(); ++i) {
    if (!x.get(i)) continue;
    const Word* row = m.row_ptr(i);
    const std::size_t full = i / kWordBits;
    const std::size_t rem = i % kWordBits;
    Word par = 0;
    for (std::size_t w = 0; w < full; ++w) par ^= row[w] & x.words()[w];
    if (rem) par ^= row[full] & x.words()[full] & ((Word(1) << rem) - 1);
    acc ^= std::popcount(par) & 1;
  }
  return acc;
}

BinVec swap_halves(const BinVec& a) {
  if (a.len() % 2 != 0) throw DimMismatchError("swap_halves: odd length");
  const std::size_t n = a.len() / 2;
  BinVec out(a.len());
  out.paste(0, a.slice(n, 2 * n));
  out.paste(n, a.slice(0, n));
  return out;
}

BinMat u_mul(const BinMat& m, bool padded) {
  const std::size_t two_n = padded ? m.rows() - 1 : m.rows();
  if (two_n % 2 != 0) throw DimMismatchError("u_mul: bad row count");
  const std::size_t n = two_n / 2;
  BinMat out(m.rows(), m.cols());
  for (std::size_t k = 0; k < n; ++k)
    std::copy(m.row_ptr(n + k), m.row_ptr(n + k) + m.row_words(), out.row_ptr(k));
  if (padded)
    std::copy(m.row_ptr(two_n), m.row_ptr(two_n) + m.row_words(), out.row_ptr(two_n));
  return out;
}

BinMat swap_half_rows(const BinMat& m) {
  if (m.rows() % 2 != 0) throw DimMismatchError("swap_half_rows: odd row count");
  const std::size_t n = m.rows() / 2;
  BinMat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(m.row_ptr(i), m.row_ptr(i) + m.row_words(), out.row_ptr(n + i));
    std::copy(m.row_ptr(n + i), m.row_ptr(n + i) + m.row_words(), out.row_ptr(i));
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

BinVec random_vector(std::size_t len, std::uint64_t& rng_state) {
  BinVec v(len);
  for (auto& w : v.words()) w = splitmix64(rng_state);
  if (len % kWordBits)
    v.words().back() &= (Word(1) << (len % kWordBits)) - 1;
  return v;
}

BinMat random_matrix(std::size_t rows, std::size_t cols, std::uint64_t& rng_state) {
  BinMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) m.set_row(i, random_vector(cols, rng_state));
  return m;
}

BinMat random_invertible(std::size_t n, std::uint64_t& rng_state) {
  // Product of random unitriangular factors and a random row rotation;
  // always invertible, not uniform over GL(n,2).
  BinMat lower = BinMat::identity(n);
  BinMat upper = BinMat::identity(n);
  for (std::size_t i = 1; i < n; ++i) {
    BinVec low_bits = random_vector(i, rng_state);
    BinVec up_bits = random_vector(n - i, rng_state);
    for (std::size_t j = 0; j < i; ++j)
      if (low_bits.get(j)) lower.set(i, j, true);
    for (std::size_t j = 0; j < n - i; ++j)
      if (up_bits.get(j)) upper.set(i - 1, i + j, true);
  }
  BinMat prod = mat_mul(lower, upper);
  if (n > 1) {
    std::size_t rot = splitmix64(rng_state) % n;
    BinMat perm(n, n);
    for (std::size_t i = 0; i < n; ++i) perm.set(i, (i + rot) % n, true);
    prod = mat_mul(perm, prod);
  }
  return prod;
}

BinMat random_symmetric(std::size_t n, std::uint64_t& rng_state) {
  BinMat m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (splitmix64(rng_state) & 1) {
        m.set(i, j, true);
        m.set(j, i, true);
      }
  return m;
}

BinMat read_matrix(std::istream& in, std::size_t& line_no) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError(line_no, "missing matrix header");
  ++line_no;
  std::istringstream hs(header);
  std::size_t rows = 0, cols = 0;
  if (!(hs >> rows >> cols)) throw ParseError(line_no - 1, "bad matrix header: " + header);
  BinMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    std::string row;
    if (!std::getline(in, row)) throw ParseError(line_no, "missing matrix row");
    ++line_no;
    if (row.size() != cols) throw ParseError(line_no - 1, "bad row length");
    for (std::size_t j = 0; j < cols; ++j) {
      if (row[j] == '1')
        m.set(i, j, true);
      else if (row[j] != '0')
        throw ParseError(line_no - 1, "bad matrix character");
    }
  }
  return m;
}

void write_matrix(std::ostream& out, const BinMat& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) out << m.row(i).str() << '\n';
}

}  // namespace cgf2
