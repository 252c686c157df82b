#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "depthposet/bit_matrix.hpp"
#include "depthposet/reduction.hpp"

namespace depthposet {

/// Ordered boundary matrix that supports cancelling shallow pairs in place.
///
/// Rows and columns are filter positions. Cancelled positions keep their slot
/// but lose every incidence, so positions stay comparable across
/// cancellations and no reordering is ever needed.
class CancellationMatrix {
 public:
  using PositionPair = std::pair<std::size_t, std::size_t>;

  explicit CancellationMatrix(const BitMatrix& delta);

  std::size_t size() const noexcept { return alive_.size(); }
  bool alive(std::size_t pos) const { return alive_.test(pos); }
  bool entry(std::size_t row, std::size_t col) const { return cols_.get(row, col); }
  const BitVector& column(std::size_t col) const { return cols_.column(col); }
  const BitVector& row(std::size_t r) const { return rows_.column(r); }

  bool has_incidence() const noexcept { return !cols_.is_zero(); }

  bool is_shallow(std::size_t row, std::size_t col) const;
  /// Sorted by column.
  std::vector<PositionPair> shallow_pairs() const;

  /// Throws Error(NotShallow).
  void cancel(std::size_t row, std::size_t col);

  /// The current matrix; cancelled rows and columns are zero.
  const BitMatrix& matrix() const noexcept { return cols_; }

 private:
  BitMatrix cols_;
  BitMatrix rows_;  // transpose mirror
  BitVector alive_;
};

/// Cancels the given pairs (by position) in some shallow order, picking the
/// leftmost cancellable pair at each step. Returns false if at some step none
/// of the remaining pairs is shallow; the matrix is then left partially
/// cancelled.
bool cancel_all(CancellationMatrix& matrix, std::vector<CancellationMatrix::PositionPair> pairs);

}  // namespace depthposet
