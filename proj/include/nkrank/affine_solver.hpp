#ifndef NKRANK_AFFINE_SOLVER_HPP
#define NKRANK_AFFINE_SOLVER_HPP

// Incremental Gaussian elimination for large, sparse-input affine systems
// over GF(2). Equations are reduced on arrival against the stored echelon
// rows (pivot = lowest set column), so the full equation list never has to
// be materialized as a dense matrix.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "nkrank/bit_vector.hpp"

namespace nkrank {

struct AffineSolution {
  BitVector particular;
  std::vector<BitVector> kernel_basis;
};

class AffineSolver {
 public:
  explicit AffineSolver(std::size_t columns)
      : columns_(columns), stride_(words_for(columns)), pivot_row_(columns, npos), scratch_(stride_) {}

  std::size_t columns() const { return columns_; }
  std::size_t rank() const { return rhs_.size(); }
  bool consistent() const { return consistent_; }

  /// Adds sum_{c in cols} x_c = rhs. Repeated columns cancel.
  void add_equation(std::span<const std::size_t> cols, bool rhs) {
    std::fill(scratch_.begin(), scratch_.end(), 0);
    for (auto c : cols) {
      if (c >= columns_) throw std::out_of_range("equation column out of range");
      scratch_[c / word_bits] ^= word_type{1} << (c % word_bits);
    }
    reduce_and_insert(rhs);
  }

  void add_equation(const BitVector& coefficients, bool rhs) {
    if (coefficients.size() != columns_) throw std::invalid_argument("equation length mismatch");
    std::copy(coefficients.words().begin(), coefficients.words().end(), scratch_.begin());
    reduce_and_insert(rhs);
  }

  /// Particular solution and kernel basis, or nullopt when inconsistent.
  /// Kernel vector i has free column free_columns()[i] set.
  std::optional<AffineSolution> solve() const {
    if (!consistent_) return std::nullopt;
    const std::vector<std::size_t> free = free_columns();
    const std::size_t sols = free.size() + 1;  // bit 0: particular, bit 1+i: kernel vector i
    const std::size_t vstride = words_for(sols);
    std::vector<word_type> values(columns_ * vstride, 0);
    auto value = [&](std::size_t col) { return std::span<word_type>(values.data() + col * vstride, vstride); };
    for (std::size_t i = 0; i < free.size(); ++i) value(free[i])[(i + 1) / word_bits] |= word_type{1} << ((i + 1) % word_bits);

    for (std::size_t col = columns_; col-- > 0;) {
      const std::size_t r = pivot_row_[col];
      if (r == npos) continue;
      auto dst = value(col);
      if (rhs_[r]) dst[0] ^= 1;
      const auto row = row_words(r);
      for (std::size_t w = col / word_bits; w < stride_; ++w) {
        word_type x = row[w];
        if (w == col / word_bits) x &= ~(word_type{1} << (col % word_bits));
        while (x != 0) {
          const std::size_t j = w * word_bits + static_cast<std::size_t>(std::countr_zero(x));
          xor_words(dst, value(j));
          x &= x - 1;
        }
      }
    }

    AffineSolution out;
    out.particular = BitVector(columns_);
    out.kernel_basis.assign(free.size(), BitVector(columns_));
    for (std::size_t col = 0; col < columns_; ++col) {
      const auto v = value(col);
      if (v[0] & 1U) out.particular.set(col);
      for (std::size_t w = 0; w < vstride; ++w) {
        word_type x = v[w];
        if (w == 0) x &= ~word_type{1};
        while (x != 0) {
          const std::size_t bit = w * word_bits + static_cast<std::size_t>(std::countr_zero(x));
          out.kernel_basis[bit - 1].set(col);
          x &= x - 1;
        }
      }
    }
    return out;
  }

  std::vector<std::size_t> free_columns() const {
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < columns_; ++c)
      if (pivot_row_[c] == npos) free.push_back(c);
    return free;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::span<const word_type> row_words(std::size_t r) const { return {rows_.data() + r * stride_, stride_}; }

  void reduce_and_insert(bool rhs) {
    std::size_t from = 0;
    while (true) {
      const std::size_t p = first_set_bit(scratch_, from);
      if (p == static_cast<std::size_t>(-1)) {
        if (rhs) consistent_ = false;
        return;
      }
      from = p / word_bits;
      const std::size_t r = pivot_row_[p];
      if (r == npos) {
        pivot_row_[p] = rhs_.size();
        rows_.insert(rows_.end(), scratch_.begin(), scratch_.end());
        rhs_.push_back(rhs);
        return;
      }
      const auto row = row_words(r);
      for (std::size_t w = from; w < stride_; ++w) scratch_[w] ^= row[w];
      rhs ^= static_cast<bool>(rhs_[r]);
    }
  }

  std::size_t columns_;
  std::size_t stride_;
  std::vector<std::size_t> pivot_row_;
  std::vector<word_type> rows_;
  std::vector<std::uint8_t> rhs_;
  std::vector<word_type> scratch_;
  bool consistent_ = true;
};

}  // namespace nkrank

#endif  // NKRANK_AFFINE_SOLVER_HPP
