#include "depthposet/relation.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace depthposet {

PairRelation::PairRelation(std::vector<BirthDeathPair> nodes)
    : nodes_(std::move(nodes)), succ_(nodes_.size(), BitVector(nodes_.size())) {}

std::optional<std::size_t> PairRelation::find(const BirthDeathPair& pair) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i] == pair) return i;
  return std::nullopt;
}

void PairRelation::add_arc(std::size_t from, std::size_t to) {
  if (from != to) succ_[from].set(to);
}

std::size_t PairRelation::arc_count() const noexcept {
  std::size_t total = 0;
  for (const auto& s : succ_) total += s.count();
  return total;
}

std::vector<PairRelation::Arc> PairRelation::arcs() const {
  std::vector<Arc> out;
  for (std::size_t u = 0; u < succ_.size(); ++u) succ_[u].for_each([&](std::size_t v) { out.emplace_back(u, v); });
  return out;
}

PairRelation& PairRelation::operator|=(const PairRelation& other) {
  for (std::size_t u = 0; u < succ_.size(); ++u) succ_[u] |= other.succ_[u];
  return *this;
}

PairRelation PairRelation::restricted_to(const std::vector<BirthDeathPair>& keep) const {
  PairRelation out(keep);
  std::vector<std::optional<std::size_t>> where(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) where[i] = find(keep[i]);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (!where[i]) continue;
    for (std::size_t j = 0; j < keep.size(); ++j)
      if (where[j] && has_arc(*where[i], *where[j])) out.add_arc(i, j);
  }
  return out;
}

namespace {

using ArcKey = std::array<CellIndex, 4>;

std::vector<ArcKey> arc_keys(const PairRelation& rel) {
  std::vector<ArcKey> keys;
  for (auto [u, v] : rel.arcs()) {
    const auto& a = rel.node(u);
    const auto& b = rel.node(v);
    keys.push_back({a.birth, a.death, b.birth, b.death});
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace

bool PairRelation::same_as(const PairRelation& other) const {
  auto lhs_nodes = nodes_;
  auto rhs_nodes = other.nodes_;
  std::sort(lhs_nodes.begin(), lhs_nodes.end());
  std::sort(rhs_nodes.begin(), rhs_nodes.end());
  if (lhs_nodes != rhs_nodes) return false;
  return arc_keys(*this) == arc_keys(other);
}

std::size_t PairRelation::arc_symmetric_difference(const PairRelation& lhs, const PairRelation& rhs) {
  auto a = arc_keys(lhs);
  auto b = arc_keys(rhs);
  std::vector<ArcKey> diff;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
  return diff.size();
}

}  // namespace depthposet
