#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgf2 {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

struct DimMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularMatrixError : std::runtime_error {
  std::size_t rank_found;
  SingularMatrixError(std::size_t rank, std::size_t dim)
      : std::runtime_error("singular matrix: rank " + std::to_string(rank) +
                           " of " + std::to_string(dim)),
        rank_found(rank) {}
};

struct ParseError : std::runtime_error {
  std::size_t line;
  ParseError(std::size_t line_no, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what),
        line(line_no) {}
};

/// Bit vector over GF(2). Bit k is the coefficient of coordinate k.
/// Bits beyond len() are kept zero.
class BinVec {
 public:
  BinVec() = default;
  explicit BinVec(std::size_t len) : len_(len), words_(words_for(len), 0) {}

  static BinVec from_bits(std::initializer_list<int> bits) {
    BinVec v(bits.size());
    std::size_t k = 0;
    for (int b : bits) v.set(k++, b != 0);
    return v;
  }

  static BinVec unit(std::size_t len, std::size_t k) {
    BinVec v(len);
    v.set(k, true);
    return v;
  }

  std::size_t len() const { return len_; }

  bool get(std::size_t k) const {
    return (words_[k / kWordBits] >> (k % kWordBits)) & 1u;
  }
  void set(std::size_t k, bool value) {
    Word mask = Word(1) << (k % kWordBits);
    if (value)
      words_[k / kWordBits] |= mask;
    else
      words_[k / kWordBits] &= ~mask;
  }
  void flip(std::size_t k) { words_[k / kWordBits] ^= Word(1) << (k % kWordBits); }

  BinVec& operator^=(const BinVec& other);
  friend BinVec operator^(BinVec a, const BinVec& b) { return a ^= b; }

  /// Parity of the coordinatewise product, i.e. the GF(2) inner product.
  bool dot(const BinVec& other) const;

  std::size_t popcount() const;
  bool is_zero() const;

  BinVec slice(std::size_t begin, std::size_t end) const;
  void paste(std::size_t at, const BinVec& src);

  std::span<const Word> words() const { return words_; }
  std::span<Word> words() { return words_; }

  std::string str() const;

  bool operator==(const BinVec&) const = default;

 private:
  std::size_t len_ = 0;
  std::vector<Word> words_;
};

/// Row-major bit-packed matrix over GF(2). Each row's trailing padding
/// bits are zero.
class BinMat {
 public:
  BinMat() = default;
  BinMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), row_words_(words_for(cols)),
        data_(rows * row_words_, 0) {}

  static BinMat identity(std::size_t n) {
    BinMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  static BinMat from_rows(std::initializer_list<std::initializer_list<int>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t row_words() const { return row_words_; }

  bool get(std::size_t i, std::size_t j) const {
    return (data_[i * row_words_ + j / kWordBits] >> (j % kWordBits)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool value) {
    Word mask = Word(1) << (j % kWordBits);
    Word& w = data_[i * row_words_ + j / kWordBits];
    if (value)
      w |= mask;
    else
      w &= ~mask;
  }
  void flip(std::size_t i, std::size_t j) {
    data_[i * row_words_ + j / kWordBits] ^= Word(1) << (j % kWordBits);
  }

  const Word* row_ptr(std::size_t i) const { return data_.data() + i * row_words_; }
  Word* row_ptr(std::size_t i) { return data_.data() + i * row_words_; }

  void xor_row_into(std::size_t src, std::size_t dst);
  void swap_rows(std::size_t i, std::size_t j);

  BinVec row(std::size_t i) const;
  void set_row(std::size_t i, const BinVec& v);
  BinVec column(std::size_t j) const;
  void set_column(std::size_t j, const BinVec& v);

  BinMat submatrix(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;
  void paste(std::size_t r0, std::size_t c0, const BinMat& block);

  bool is_zero() const;
  bool operator==(const BinMat&) const = default;

  std::size_t byte_size() const { return data_.size() * sizeof(Word); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t row_words_ = 0;
  std::vector<Word> data_;
};

/// The fixed structural matrices of the binary picture: U has the n x n
/// identity in its upper-right block, and P = U + U^T is the symplectic
/// form. Coordinates 0..n-1 are the z part, n..2n-1 the x part.
struct StructMatrices {
  std::size_t n;
  BinMat u;
  BinMat p;
  static StructMatrices make(std::size_t n);
};

BinMat upper_block_matrix(std::size_t n);   // U
BinMat symplectic_form(std::size_t n);      // P = U + U^T

BinMat mat_mul(const BinMat& a, const BinMat& b);
BinMat mat_add(const BinMat& a, const BinMat& b);
BinMat transpose(const BinMat& a);

/// Gauss-Jordan inverse. Throws SingularMatrixError carrying the achieved
/// rank when no inverse exists.
BinMat mat_inverse(const BinMat& a);

/// Strictly lower triangular part; diagonal and above zeroed.
BinMat lows(const BinMat& a);

/// Vector of diagonal entries of a square matrix.
BinVec diag_vec(const BinMat& a);

bool is_symmetric(const BinMat& a);
bool is_symplectic(const BinMat& a, const BinMat& p);

std::size_t mat_rank(const BinMat& a);

struct KernelRange {
  BinMat kernel;  // columns form a kernel basis
  BinMat range;   // columns form a range basis (pivot columns of the input)
  std::size_t rank;
};
KernelRange kernel_range_bases(const BinMat& a);

/// Completes a set of independent columns to an invertible square matrix.
/// The given columns keep their positions; the missing pivot positions are
/// filled with standard basis vectors, lowest pivot first.
BinMat complete_to_invertible(const BinMat& cols);

/// y = A x (length rows(A)).
BinVec mat_vec(const BinMat& a, const BinVec& x);

/// y = A^T s, computed as the XOR of the rows of A selected by s.
BinVec tmat_vec(const BinMat& a, const BinVec& s);

/// diag(A^T B) for equally shaped A, B: entry k is <column k of A, column k of B>.
BinVec diag_of_at_product(const BinMat& a, const BinMat& b);

/// x^T lows(M) x without materializing lows(M): accumulates row-of-M dotted
/// against the prefix of x below the row index.
bool quad_form_lows(const BinMat& m, const BinVec& x);

/// P a for a of length 2n: exchanges the z and x halves.
BinVec swap_halves(const BinVec& a);

/// U M for a matrix with 2n rows: row k (k < n) becomes row n+k of M and the
/// lower half is zeroed. With padded = true the input has 2n+1 rows and the
/// final row is kept (the 1 block of the padded Ubar).
BinMat u_mul(const BinMat& m, bool padded = false);

/// P M for a matrix with 2n rows: swaps the two row halves.
BinMat swap_half_rows(const BinMat& m);

BinMat random_matrix(std::size_t rows, std::size_t cols, std::uint64_t& rng_state);
BinMat random_invertible(std::size_t n, std::uint64_t& rng_state);
BinMat random_symmetric(std::size_t n, std::uint64_t& rng_state);
BinVec random_vector(std::size_t len, std::uint64_t& rng_state);
std::uint64_t splitmix64(std::uint64_t& state);

/// Text format: first line "rows cols", then one '0'/'1' line per row.
BinMat read_matrix(std::istream& in, std::size_t& line_no);
void write_matrix(std::ostream& out, const BinMat& m);

}  // namespace cgf2
