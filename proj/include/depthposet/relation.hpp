#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "depthposet/bit_matrix.hpp"
#include "depthposet/complex.hpp"

namespace depthposet {

/// (birth, death) with dim(death) = dim(birth) + 1; degree = dim(birth).
struct BirthDeathPair {
  CellIndex birth = 0;
  CellIndex death = 0;
  int degree = 0;

  friend bool operator==(const BirthDeathPair& a, const BirthDeathPair& b) {
    return a.birth == b.birth && a.death == b.death;
  }
  friend std::strong_ordering operator<=>(const BirthDeathPair& a, const BirthDeathPair& b) {
    if (auto c = a.birth <=> b.birth; c != 0) return c;
    return a.death <=> b.death;
  }
};

/// Directed arcs over an indexed list of birth-death pairs.
class PairRelation {
 public:
  using Arc = std::pair<std::size_t, std::size_t>;

  PairRelation() = default;
  explicit PairRelation(std::vector<BirthDeathPair> nodes);

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<BirthDeathPair>& nodes() const noexcept { return nodes_; }
  const BirthDeathPair& node(std::size_t i) const { return nodes_[i]; }
  std::optional<std::size_t> find(const BirthDeathPair& pair) const;

  /// Self-arcs are ignored.
  void add_arc(std::size_t from, std::size_t to);
  bool has_arc(std::size_t from, std::size_t to) const { return succ_[from].test(to); }
  const BitVector& successors(std::size_t from) const { return succ_[from]; }

  std::size_t arc_count() const noexcept;
  /// Arcs sorted by (source, target).
  std::vector<Arc> arcs() const;

  /// Union with another relation over the same node list.
  PairRelation& operator|=(const PairRelation& other);

  /// Relation restricted to the given nodes (in that order).
  PairRelation restricted_to(const std::vector<BirthDeathPair>& keep) const;

  /// Same node set and same arcs, compared through the node pairs rather than
  /// their indices.
  bool same_as(const PairRelation& other) const;

  /// Arcs present in exactly one of the two relations, identifying nodes by
  /// their (birth, death) cells.
  static std::size_t arc_symmetric_difference(const PairRelation& lhs, const PairRelation& rhs);

 private:
  std::vector<BirthDeathPair> nodes_;
  std::vector<BitVector> succ_;
};

}  // namespace depthposet
