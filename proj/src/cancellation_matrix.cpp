#include "depthposet/cancellation_matrix.hpp"

#include <algorithm>

#include "depthposet/errors.hpp"

namespace depthposet {

CancellationMatrix::CancellationMatrix(const BitMatrix& delta)
    : cols_(delta), rows_(delta.transpose()), alive_(delta.cols()) {
  for (std::size_t i = 0; i < delta.cols(); ++i) alive_.set(i);
}

bool CancellationMatrix::is_shallow(std::size_t row, std::size_t col) const {
  if (!cols_.get(row, col)) return false;
  return cols_.column(col).highest() == row && rows_.column(row).lowest() == col;
}

std::vector<CancellationMatrix::PositionPair> CancellationMatrix::shallow_pairs() const {
  std::vector<PositionPair> out;
  for (std::size_t c = 0; c < size(); ++c) {
    std::size_t r = cols_.column(c).highest();
    if (r != BitVector::npos && rows_.column(r).lowest() == c) out.emplace_back(r, c);
  }
  return out;
}

void CancellationMatrix::cancel(std::size_t a, std::size_t b) {
  if (!is_shallow(a, b))
    throw Error(ErrorCode::NotShallow, "position pair (" + std::to_string(a) + ", " + std::to_string(b) + ")");
  BitVector facets_of_b = cols_.column(b);
  facets_of_b.reset(a);
  BitVector cofacets_of_a = rows_.column(a);
  cofacets_of_a.reset(b);

  facets_of_b.for_each([&](std::size_t p) { rows_.column(p) ^= cofacets_of_a; });
  cofacets_of_a.for_each([&](std::size_t q) { cols_.column(q) ^= facets_of_b; });

  for (std::size_t cell : {a, b}) {
    cols_.column(cell).for_each([&](std::size_t f) { rows_.column(f).reset(cell); });
    rows_.column(cell).for_each([&](std::size_t q) { cols_.column(q).reset(cell); });
    cols_.column(cell) = BitVector(size());
    rows_.column(cell) = BitVector(size());
    alive_.reset(cell);
  }
}

bool cancel_all(CancellationMatrix& matrix, std::vector<CancellationMatrix::PositionPair> pairs) {
  std::sort(pairs.begin(), pairs.end(), [](auto& l, auto& r) { return l.second < r.second; });
  while (!pairs.empty()) {
    auto it = std::find_if(pairs.begin(), pairs.end(),
                           [&](const auto& p) { return matrix.is_shallow(p.first, p.second); });
    if (it == pairs.end()) return false;
    matrix.cancel(it->first, it->second);
    pairs.erase(it);
  }
  return true;
}

}  // namespace depthposet
