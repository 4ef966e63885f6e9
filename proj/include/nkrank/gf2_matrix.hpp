#ifndef NKRANK_GF2_MATRIX_HPP
#define NKRANK_GF2_MATRIX_HPP

// Dense matrices over the two-element field.
//
// Rows are packed little-endian into 64-bit words; the bits past `cols()` in
// the last word of every row are always zero. All linear algebra here is
// exact; the 0x0 and 0xn matrices are valid everywhere and have rank 0.

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nkrank/bit_vector.hpp"
#include "nkrank/errors.hpp"

namespace nkrank {

class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * stride_, 0) {}

  static Gf2Matrix identity(std::size_t n) {
    Gf2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }
  static Gf2Matrix ones(std::size_t rows, std::size_t cols) {
    Gf2Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m.set(r, c);
    return m;
  }
  /// Direct sum of `blocks` copies of ((0,1),(1,0)).
  static Gf2Matrix hyperbolic(std::size_t blocks) {
    Gf2Matrix m(2 * blocks, 2 * blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
      m.set(2 * b, 2 * b + 1);
      m.set(2 * b + 1, 2 * b);
    }
    return m;
  }
  template <class Rng>
  static Gf2Matrix random(std::size_t rows, std::size_t cols, Rng& rng) {
    Gf2Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      auto w = m.row(r);
      for (auto& x : w) x = static_cast<word_type>(rng());
      if (!w.empty()) w.back() &= tail_mask(cols);
    }
    return m;
  }
  /// Parses rows written as strings of '0'/'1'; all rows must have equal length.
  static Gf2Matrix from_rows(const std::vector<std::string>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Gf2Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw std::invalid_argument("ragged row strings");
      for (std::size_t c = 0; c < cols; ++c) {
        if (rows[r][c] == '1') m.set(r, c);
        else if (rows[r][c] != '0') throw std::invalid_argument("matrix rows may only contain 0 and 1");
      }
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t stride() const { return stride_; }
  bool is_square() const { return rows_ == cols_; }

  bool get(std::size_t r, std::size_t c) const {
    check(r, c);
    return (data_[r * stride_ + c / word_bits] >> (c % word_bits)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool value = true) {
    check(r, c);
    const word_type mask = word_type{1} << (c % word_bits);
    auto& w = data_[r * stride_ + c / word_bits];
    if (value) w |= mask;
    else w &= ~mask;
  }
  void flip(std::size_t r, std::size_t c) {
    check(r, c);
    data_[r * stride_ + c / word_bits] ^= word_type{1} << (c % word_bits);
  }

  std::span<const word_type> row(std::size_t r) const {
    assert(r < rows_);
    return {data_.data() + r * stride_, stride_};
  }
  std::span<word_type> row(std::size_t r) {
    assert(r < rows_);
    return {data_.data() + r * stride_, stride_};
  }
  BitVector row_vector(std::size_t r) const {
    BitVector v(cols_);
    std::copy(row(r).begin(), row(r).end(), v.words().begin());
    return v;
  }
  void set_row(std::size_t r, const BitVector& v) {
    if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
    std::copy(v.words().begin(), v.words().end(), row(r).begin());
  }
  /// row[dst] += row[src]
  void add_row(std::size_t dst, std::size_t src) {
    assert(dst != src);
    xor_words(row(dst), row(src));
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row(a).begin(), row(a).end(), row(b).begin());
  }

  Gf2Matrix transpose() const {
    Gf2Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      auto w = row(r);
      for (std::size_t wi = 0; wi < stride_; ++wi) {
        word_type x = w[wi];
        while (x != 0) {
          const std::size_t c = wi * word_bits + static_cast<std::size_t>(std::countr_zero(x));
          t.set(c, r);
          x &= x - 1;
        }
      }
    }
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](word_type w) { return w == 0; });
  }
  bool is_symmetric() const { return is_square() && *this == transpose(); }
  std::size_t count_ones() const {
    std::size_t n = 0;
    for (auto w : data_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  /// True when every padding bit is zero (the storage invariant).
  bool padding_clean() const {
    if (cols_ % word_bits == 0) return true;
    const word_type mask = ~tail_mask(cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      if ((row(r).back() & mask) != 0) return false;
    return true;
  }

  Gf2Matrix& operator+=(const Gf2Matrix& o) {
    require_same_shape(o);
    xor_words(data_, o.data_);
    return *this;
  }
  friend Gf2Matrix operator+(Gf2Matrix a, const Gf2Matrix& b) { return a += b; }

  friend Gf2Matrix operator*(const Gf2Matrix& a, const Gf2Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    Gf2Matrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
      auto dst = out.row(r);
      auto src = a.row(r);
      for (std::size_t wi = 0; wi < a.stride_; ++wi) {
        word_type x = src[wi];
        while (x != 0) {
          const std::size_t k = wi * word_bits + static_cast<std::size_t>(std::countr_zero(x));
          xor_words(dst, b.row(k));
          x &= x - 1;
        }
      }
    }
    return out;
  }

  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
  }
  void require_same_shape(const Gf2Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<word_type> data_;
};

/// Row rank over GF(2), by forward elimination pivoting on the first set bit.
inline std::size_t rank(Gf2Matrix m) {
  std::size_t rank = 0;
  const std::size_t stride = m.stride();
  for (std::size_t wi = 0; wi < stride && rank < m.rows(); ++wi) {
    for (std::size_t bit = 0; bit < word_bits && rank < m.rows(); ++bit) {
      const word_type mask = word_type{1} << bit;
      std::size_t pivot = rank;
      while (pivot < m.rows() && (m.row(pivot)[wi] & mask) == 0) ++pivot;
      if (pivot == m.rows()) continue;
      m.swap_rows(rank, pivot);
      auto prow = m.row(rank);
      for (std::size_t r = pivot + 1; r < m.rows(); ++r) {
        auto w = m.row(r);
        if (w[wi] & mask)
          for (std::size_t j = wi; j < stride; ++j) w[j] ^= prow[j];
      }
      ++rank;
    }
  }
  return rank;
}

struct RowReduction {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
  std::vector<BitVector> kernel_basis;  // spans {x : m x = 0}
  Gf2Matrix reduced;                    // reduced row echelon form of m
};

/// Reduced row echelon form, pivot columns and a null-space basis.
///
/// The kernel basis has one vector per free column f: x_f = 1, the other free
/// coordinates 0, pivot coordinates read off the reduced rows.
inline RowReduction row_reduce(const Gf2Matrix& input) {
  RowReduction out;
  Gf2Matrix m = input;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && !m.get(pivot, c)) ++pivot;
    if (pivot == m.rows()) continue;
    m.swap_rows(rank, pivot);
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (r != rank && m.get(r, c)) m.add_row(r, rank);
    out.pivot_columns.push_back(c);
    ++rank;
  }
  out.rank = rank;
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : out.pivot_columns) is_pivot[c] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVector v(m.cols());
    v.set(f);
    for (std::size_t i = 0; i < rank; ++i)
      if (m.get(i, f)) v.set(out.pivot_columns[i]);
    out.kernel_basis.push_back(std::move(v));
  }
  out.reduced = std::move(m);
  return out;
}

/// m * v for a column vector v.
inline BitVector apply(const Gf2Matrix& m, const BitVector& v) {
  if (v.size() != m.cols()) throw std::invalid_argument("vector length mismatch");
  BitVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (parity_of_and(m.row(r), v.words())) out.set(r);
  return out;
}

/// yᵀ · omega · y.
inline Gf2Matrix gram(const Gf2Matrix& y, const Gf2Matrix& omega) {
  if (!omega.is_square() || omega.rows() != y.rows())
    throw std::invalid_argument("gram: omega must be square with rows(omega) == rows(y)");
  const Gf2Matrix yt = y.transpose();
  return yt * (omega * y);
}

/// Entry (i, j) of the result is m(rows[i], cols[j]).
inline Gf2Matrix block(const Gf2Matrix& m, std::span<const std::size_t> row_indices,
                       std::span<const std::size_t> col_indices) {
  for (auto r : row_indices)
    if (r >= m.rows()) throw std::out_of_range("block: row index out of range");
  for (auto c : col_indices)
    if (c >= m.cols()) throw std::out_of_range("block: column index out of range");
  Gf2Matrix out(row_indices.size(), col_indices.size());
  for (std::size_t i = 0; i < row_indices.size(); ++i)
    for (std::size_t j = 0; j < col_indices.size(); ++j)
      if (m.get(row_indices[i], col_indices[j])) out.set(i, j);
  return out;
}

/// Contiguous submatrix starting at (row0, col0).
inline Gf2Matrix block(const Gf2Matrix& m, std::size_t row0, std::size_t col0, std::size_t nrows,
                       std::size_t ncols) {
  if (row0 + nrows > m.rows() || col0 + ncols > m.cols())
    throw std::out_of_range("block: range out of bounds");
  Gf2Matrix out(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j)
      if (m.get(row0 + i, col0 + j)) out.set(i, j);
  return out;
}

// GF2M text format:
//   GF2M 1
//   meta n=<n> k=<k> indexing=joinpower-lex     (optional)
//   rows <R> cols <C>
//   R lines of exactly C characters from {0,1}

struct Gf2mMeta {
  std::size_t n = 0;
  std::size_t k = 0;
  friend bool operator==(const Gf2mMeta&, const Gf2mMeta&) = default;
};

struct Gf2mFile {
  Gf2Matrix matrix;
  std::optional<Gf2mMeta> meta;
};

inline void write_gf2m(std::ostream& os, const Gf2Matrix& m, const std::optional<Gf2mMeta>& meta = {}) {
  os << "GF2M 1\n";
  if (meta) os << "meta n=" << meta->n << " k=" << meta->k << " indexing=joinpower-lex\n";
  os << "rows " << m.rows() << " cols " << m.cols() << "\n";
  std::string line(m.cols(), '0');
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) line[c] = m.get(r, c) ? '1' : '0';
    os << line << '\n';
  }
}

namespace detail {

inline std::size_t parse_count(const std::string& token, const std::string& what) {
  if (token.empty() || token.size() > 18 ||
      !std::all_of(token.begin(), token.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
    throw FormatError("GF2M: bad " + what + " '" + token + "'");
  return static_cast<std::size_t>(std::stoull(token));
}

inline bool read_line(std::istream& is, std::string& line) {
  if (!std::getline(is, line)) return false;
  if (!line.empty() && line.back() == '\r') throw FormatError("GF2M: CR line endings are not allowed");
  return true;
}

inline Gf2mMeta parse_meta(const std::string& line) {
  std::istringstream ss(line);
  std::string tag, ntok, ktok, idx, extra;
  ss >> tag >> ntok >> ktok >> idx;
  if (tag != "meta" || ntok.rfind("n=", 0) != 0 || ktok.rfind("k=", 0) != 0 || idx != "indexing=joinpower-lex" ||
      (ss >> extra))
    throw FormatError("GF2M: malformed meta line '" + line + "'");
  return {parse_count(ntok.substr(2), "n"), parse_count(ktok.substr(2), "k")};
}

}  // namespace detail

inline Gf2mFile read_gf2m(std::istream& is) {
  std::string line;
  if (!detail::read_line(is, line) || line != "GF2M 1") throw FormatError("GF2M: missing 'GF2M 1' header");
  Gf2mFile file;
  if (!detail::read_line(is, line)) throw FormatError("GF2M: truncated header");
  if (line.rfind("meta", 0) == 0) {
    file.meta = detail::parse_meta(line);
    if (!detail::read_line(is, line)) throw FormatError("GF2M: truncated header");
  }
  std::istringstream dims(line);
  std::string rtag, rtok, ctag, ctok, extra;
  dims >> rtag >> rtok >> ctag >> ctok;
  if (rtag != "rows" || ctag != "cols" || (dims >> extra)) throw FormatError("GF2M: malformed dimension line");
  const std::size_t rows = detail::parse_count(rtok, "row count");
  const std::size_t cols = detail::parse_count(ctok, "column count");
  Gf2Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!detail::read_line(is, line)) throw FormatError("GF2M: expected " + std::to_string(rows) + " rows");
    if (line.size() != cols) throw FormatError("GF2M: row " + std::to_string(r) + " has wrong length");
    for (std::size_t c = 0; c < cols; ++c) {
      if (line[c] == '1') m.set(r, c);
      else if (line[c] != '0') throw FormatError("GF2M: invalid character in row " + std::to_string(r));
    }
  }
  while (std::getline(is, line))
    if (!line.empty()) throw FormatError("GF2M: trailing content after matrix rows");
  file.matrix = std::move(m);
  return file;
}

}  // namespace nkrank

#endif  // NKRANK_GF2_MATRIX_HPP
