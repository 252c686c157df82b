#include "depthposet/poset.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <unordered_set>

#include "depthposet/cancellation_matrix.hpp"
#include "depthposet/errors.hpp"

namespace depthposet {

std::vector<std::size_t> topological_order(const PairRelation& rel) {
  const std::size_t n = rel.size();
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t u = 0; u < n; ++u) rel.successors(u).for_each([&](std::size_t v) { ++indegree[v]; });
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t u = 0; u < n; ++u)
    if (indegree[u] == 0) order.push_back(u);
  for (std::size_t head = 0; head < order.size(); ++head) {
    rel.successors(order[head]).for_each([&](std::size_t v) {
      if (--indegree[v] == 0) order.push_back(v);
    });
  }
  if (order.size() != n) throw Error(ErrorCode::CyclicInput, "relation has a directed cycle");
  return order;
}

PairRelation transitive_closure(const PairRelation& rel) {
  auto topo = topological_order(rel);
  PairRelation out(rel.nodes());
  std::vector<BitVector> reach(rel.size(), BitVector(rel.size()));
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const std::size_t u = *it;
    rel.successors(u).for_each([&](std::size_t v) {
      reach[u].set(v);
      reach[u] |= reach[v];
    });
    reach[u].for_each([&](std::size_t v) { out.add_arc(u, v); });
  }
  return out;
}

PairRelation transitive_reduction(const PairRelation& rel) {
  auto closure = transitive_closure(rel);
  PairRelation out(rel.nodes());
  for (std::size_t u = 0; u < rel.size(); ++u) {
    BitVector covered(rel.size());
    closure.successors(u).for_each([&](std::size_t v) { covered |= closure.successors(v); });
    BitVector keep = closure.successors(u);
    keep.subtract(covered);
    keep.for_each([&](std::size_t v) { out.add_arc(u, v); });
  }
  return out;
}

PairRelation depth_poset(const ReductionState& state) {
  auto rel = death_relation(state);
  rel |= birth_relation(state);
  return transitive_closure(rel);
}

PairRelation depth_poset(const LefschetzComplex& complex, const CellOrder& order) {
  return depth_poset(reduce(complex, order));
}

PairRelation depth_poset(const LefschetzComplex& complex, const Filter& filter) {
  return depth_poset(complex, filter.order);
}

namespace {

struct Explorer {
  std::map<CancellationMatrix::PositionPair, std::size_t> id_of;
  std::vector<std::uint64_t> must_precede;
  std::unordered_set<std::uint64_t> visited;
  std::uint64_t full = 0;

  void visit(const CancellationMatrix& m, std::uint64_t done) {
    if (!visited.insert(done).second) return;
    auto shallow = m.shallow_pairs();
    if (shallow.empty()) {
      if (m.has_incidence())
        throw Error(ErrorCode::MismatchFound, "nonempty incidence without a shallow pair");
      if (done != full) throw Error(ErrorCode::MismatchFound, "cancellation orders cancel different pair sets");
      return;
    }
    std::vector<std::size_t> ids;
    for (const auto& p : shallow) {
      auto it = id_of.find(p);
      if (it == id_of.end())
        throw Error(ErrorCode::MismatchFound, "shallow pair outside the pairing found by cancellation");
      must_precede[it->second] &= done;
      ids.push_back(it->second);
    }
    for (std::size_t k = 0; k < shallow.size(); ++k) {
      const std::uint64_t next = done | (std::uint64_t{1} << ids[k]);
      if (visited.count(next)) continue;
      CancellationMatrix child = m;
      child.cancel(shallow[k].first, shallow[k].second);
      visit(child, next);
    }
  }
};

}  // namespace

PairRelation brute_force_depth_poset(const LefschetzComplex& complex, const CellOrder& order,
                                     BruteForceOptions options) {
  const auto delta = boundary_matrix(complex, order);
  const CancellationMatrix root(delta.matrix);

  // One greedy run discovers the pairs; every complete order cancels the same set.
  std::vector<CancellationMatrix::PositionPair> found;
  {
    CancellationMatrix m = root;
    while (m.has_incidence()) {
      auto shallow = m.shallow_pairs();
      if (shallow.empty()) throw Error(ErrorCode::MismatchFound, "nonempty incidence without a shallow pair");
      found.push_back(shallow.front());
      m.cancel(shallow.front().first, shallow.front().second);
      if (found.size() > options.max_pairs || found.size() > 64)
        throw Error(ErrorCode::TooLarge, "more than " + std::to_string(std::min<std::size_t>(options.max_pairs, 64)) +
                                             " birth-death pairs");
    }
  }
  std::sort(found.begin(), found.end(), [](auto& l, auto& r) { return l.second < r.second; });

  Explorer ex;
  std::vector<BirthDeathPair> nodes;
  for (std::size_t i = 0; i < found.size(); ++i) {
    ex.id_of[found[i]] = i;
    nodes.push_back({order.sequence[found[i].first], order.sequence[found[i].second], delta.dims[found[i].first]});
  }
  ex.full = found.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << found.size()) - 1;
  ex.must_precede.assign(found.size(), ex.full);
  ex.visit(root, 0);

  PairRelation rel(nodes);
  for (std::size_t j = 0; j < found.size(); ++j)
    for (std::size_t i = 0; i < found.size(); ++i)
      if (i != j && (ex.must_precede[j] >> i & 1u)) rel.add_arc(i, j);
  return rel;
}

std::vector<std::size_t> minimal_nodes(const PairRelation& rel) {
  std::vector<char> has_in(rel.size(), 0);
  for (std::size_t u = 0; u < rel.size(); ++u) rel.successors(u).for_each([&](std::size_t v) { has_in[v] = 1; });
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < rel.size(); ++u)
    if (!has_in[u]) out.push_back(u);
  return out;
}

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

DegreeStats stats_for(const PairRelation& closure, const PairRelation& reduction, const std::vector<std::size_t>& members,
                      ArcSet use, std::optional<int> degree) {
  DegreeStats s;
  s.degree = degree;
  s.nodes = members.size();
  BitVector in_set(closure.size());
  for (auto u : members) in_set.set(u);

  std::vector<std::size_t> parent(closure.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::vector<char> has_in(closure.size(), 0), has_out(closure.size(), 0);
  for (auto u : members) {
    BitVector cl = closure.successors(u);
    cl &= in_set;
    BitVector rd = reduction.successors(u);
    rd &= in_set;
    s.arcs_closure += cl.count();
    s.arcs_reduction += rd.count();
    rd.for_each([&](std::size_t v) {
      has_out[u] = 1;
      has_in[v] = 1;
      parent[find_root(parent, u)] = find_root(parent, v);
    });
  }
  for (auto u : members) {
    if (find_root(parent, u) == u) ++s.components;
    if (!has_in[u]) ++s.min_nodes;
    if (!has_out[u]) ++s.max_nodes;
  }

  // longest path over the reduction, nodes visited in topological order
  auto topo = topological_order(reduction);
  std::vector<std::size_t> depth(closure.size(), 0);
  for (auto u : topo) {
    if (!in_set.test(u)) continue;
    BitVector rd = reduction.successors(u);
    rd &= in_set;
    rd.for_each([&](std::size_t v) { depth[v] = std::max(depth[v], depth[u] + 1); });
    s.height = std::max(s.height, depth[u]);
  }

  const std::size_t arcs = use == ArcSet::Closure ? s.arcs_closure : s.arcs_reduction;
  s.cycles = static_cast<long long>(s.components) + static_cast<long long>(arcs) - static_cast<long long>(s.nodes);
  return s;
}

}  // namespace

PosetStats poset_stats(const PairRelation& rel, ArcSet use) {
  auto closure = transitive_closure(rel);
  auto reduction = transitive_reduction(closure);
  PosetStats out;
  out.arc_set = use;

  std::map<int, std::vector<std::size_t>> by_degree;
  std::vector<std::size_t> all(rel.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  for (std::size_t u = 0; u < rel.size(); ++u) by_degree[rel.node(u).degree].push_back(u);
  for (const auto& [p, members] : by_degree) out.per_degree.push_back(stats_for(closure, reduction, members, use, p));
  out.total = stats_for(closure, reduction, all, use, std::nullopt);
  return out;
}

}  // namespace depthposet
