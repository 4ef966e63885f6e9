#ifndef NKRANK_BIT_VECTOR_HPP
#define NKRANK_BIT_VECTOR_HPP

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nkrank {

using word_type = std::uint64_t;
inline constexpr std::size_t word_bits = 64;

constexpr std::size_t words_for(std::size_t bits) { return (bits + word_bits - 1) / word_bits; }

/// Mask of the valid bits in the last word of a `bits`-long packed vector.
constexpr word_type tail_mask(std::size_t bits) {
  const std::size_t r = bits % word_bits;
  return r == 0 ? ~word_type{0} : (word_type{1} << r) - 1;
}

inline void xor_words(std::span<word_type> dst, std::span<const word_type> src) {
  assert(dst.size() == src.size());
  for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
}

/// Index of the lowest set bit, or `npos` when all words are zero.
inline std::size_t first_set_bit(std::span<const word_type> words, std::size_t from_word = 0) {
  for (std::size_t w = from_word; w < words.size(); ++w)
    if (words[w] != 0) return w * word_bits + static_cast<std::size_t>(std::countr_zero(words[w]));
  return static_cast<std::size_t>(-1);
}

inline bool parity_of_and(std::span<const word_type> a, std::span<const word_type> b) {
  word_type acc = 0;
  for (std::size_t w = 0; w < a.size(); ++w) acc ^= a[w] & b[w];
  return (std::popcount(acc) & 1) != 0;
}

/// Dense vector over GF(2), little-endian within words. Padding bits stay zero.
class BitVector {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_(words_for(size), 0) {}

  static BitVector from_string(const std::string& bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') v.set(i);
      else if (bits[i] != '0') throw std::invalid_argument("bit string may only contain 0 and 1");
    }
    return v;
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(std::size_t i) const {
    check(i);
    return (words_[i / word_bits] >> (i % word_bits)) & 1U;
  }
  void set(std::size_t i, bool value = true) {
    check(i);
    const word_type mask = word_type{1} << (i % word_bits);
    if (value) words_[i / word_bits] |= mask;
    else words_[i / word_bits] &= ~mask;
  }
  void flip(std::size_t i) {
    check(i);
    words_[i / word_bits] ^= word_type{1} << (i % word_bits);
  }

  BitVector& operator^=(const BitVector& other) {
    if (other.size_ != size_) throw std::invalid_argument("BitVector size mismatch");
    xor_words(words_, other.words_);
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend auto operator<=>(const BitVector& a, const BitVector& b) {
    if (auto c = a.size_ <=> b.size_; c != 0) return c;
    return a.words_ <=> b.words_;
  }

  bool none() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  std::size_t first() const { return first_set_bit(words_); }

  /// Indices of set bits in increasing order.
  std::vector<std::size_t> ones() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      word_type x = words_[w];
      while (x != 0) {
        out.push_back(w * word_bits + static_cast<std::size_t>(std::countr_zero(x)));
        x &= x - 1;
      }
    }
    return out;
  }

  std::string to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i)
      if (get(i)) s[i] = '1';
    return s;
  }

  std::span<const word_type> words() const { return words_; }
  std::span<word_type> words() { return words_; }

 private:
  void check(std::size_t i) const {
    if (i >= size_) throw std::out_of_range("BitVector index out of range");
  }

  std::size_t size_ = 0;
  std::vector<word_type> words_;
};

}  // namespace nkrank

#endif  // NKRANK_BIT_VECTOR_HPP
