#include "depthposet/bit_matrix.hpp"

#include <cassert>

namespace depthposet {

bool BitVector::any() const noexcept {
  for (auto w : words_)
    if (w) return true;
  return false;
}

std::size_t BitVector::count() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::size_t BitVector::highest() const noexcept {
  for (std::size_t w = words_.size(); w-- > 0;) {
    if (words_[w]) return w * 64 + 63 - static_cast<std::size_t>(std::countl_zero(words_[w]));
  }
  return npos;
}

std::size_t BitVector::lowest() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return npos;
}

std::size_t BitVector::next(std::size_t from) const noexcept {
  if (from >= size_) return npos;
  std::size_t w = from >> 6;
  std::uint64_t word = words_[w] & (~std::uint64_t{0} << (from & 63));
  while (true) {
    if (word) return w * 64 + static_cast<std::size_t>(std::countr_zero(word));
    if (++w == words_.size()) return npos;
    word = words_[w];
  }
}

std::vector<std::size_t> BitVector::indices() const {
  std::vector<std::size_t> out;
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitVector BitMatrix::row(std::size_t r) const {
  BitVector out(cols_);
  for (std::size_t c = 0; c < cols_; ++c)
    if (columns_[c].test(r)) out.set(c);
  return out;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t c = 0; c < cols_; ++c) columns_[c].for_each([&](std::size_t r) { t.set(c, r); });
  return t;
}

bool BitMatrix::is_zero() const noexcept {
  for (const auto& col : columns_)
    if (col.any()) return false;
  return true;
}

std::size_t BitMatrix::count() const noexcept {
  std::size_t total = 0;
  for (const auto& col : columns_) total += col.count();
  return total;
}

BitMatrix operator*(const BitMatrix& lhs, const BitMatrix& rhs) {
  assert(lhs.cols() == rhs.rows());
  BitMatrix out(lhs.rows(), rhs.cols());
  // Column j of the product is the sum of lhs columns selected by rhs column j.
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    rhs.column(j).for_each([&](std::size_t k) { out.column(j) ^= lhs.column(k); });
  }
  return out;
}

}  // namespace depthposet
