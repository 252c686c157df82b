#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace depthposet {

/// Fixed-size bit vector over Z/2, packed into 64-bit words.
class BitVector {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const noexcept { return size_; }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= word_bit(i); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~word_bit(i); }
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= word_bit(i); }

  BitVector& operator^=(const BitVector& other) noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }
  BitVector& operator|=(const BitVector& other) noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    return *this;
  }
  BitVector& operator&=(const BitVector& other) noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    return *this;
  }
  /// this &= ~other
  BitVector& subtract(const BitVector& other) noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
    return *this;
  }

  bool any() const noexcept;
  bool none() const noexcept { return !any(); }
  std::size_t count() const noexcept;

  /// Index of the highest set bit, or npos.
  std::size_t highest() const noexcept;
  /// Index of the lowest set bit, or npos.
  std::size_t lowest() const noexcept;
  /// Lowest set bit with index >= from, or npos.
  std::size_t next(std::size_t from) const noexcept;

  /// Calls fn(i) for every set bit in increasing order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word) {
        fn(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
        word &= word - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  static std::uint64_t word_bit(std::size_t i) noexcept { return std::uint64_t{1} << (i & 63); }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense rows x cols matrix over Z/2 stored as packed columns.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols, BitVector(rows)) {}

  static BitMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const noexcept { return columns_[c].test(r); }
  void set(std::size_t r, std::size_t c) noexcept { columns_[c].set(r); }
  void flip(std::size_t r, std::size_t c) noexcept { columns_[c].flip(r); }

  const BitVector& column(std::size_t c) const noexcept { return columns_[c]; }
  BitVector& column(std::size_t c) noexcept { return columns_[c]; }

  /// column[dst] += column[src]; involutive.
  void add_column(std::size_t src, std::size_t dst) noexcept { columns_[dst] ^= columns_[src]; }

  /// Copies row r out of the column storage.
  BitVector row(std::size_t r) const;

  BitMatrix transpose() const;

  bool is_zero() const noexcept;
  std::size_t count() const noexcept;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BitVector> columns_;
};

/// Matrix product over Z/2.
BitMatrix operator*(const BitMatrix& lhs, const BitMatrix& rhs);

}  // namespace depthposet
