#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "depthposet/complex.hpp"
#include "depthposet/reduction.hpp"
#include "depthposet/relation.hpp"

namespace depthposet {

/// Nodes in topological order; throws Error(CyclicInput) on a directed cycle.
std::vector<std::size_t> topological_order(const PairRelation& rel);

/// Arc (u, w) iff a directed path u -> w exists. Throws Error(CyclicInput).
PairRelation transitive_closure(const PairRelation& rel);

/// Minimal arc set with the same closure. Throws Error(CyclicInput).
PairRelation transitive_reduction(const PairRelation& rel);

/// Transitive closure of the union of the death and birth relations.
PairRelation depth_poset(const ReductionState& state);
PairRelation depth_poset(const LefschetzComplex& complex, const CellOrder& order);
PairRelation depth_poset(const LefschetzComplex& complex, const Filter& filter);

struct BruteForceOptions {
  std::size_t max_pairs = 10;  ///< hard limit 64
};

/// Depth poset straight from its definition: (i, j) is an arc iff pair i is
/// cancelled before pair j in every sequence of shallow-pair cancellations
/// that empties the incidence relation. Explores the lattice of cancelled
/// sets, which determines the remaining matrix regardless of the order.
/// Throws Error(TooLarge) above max_pairs, Error(MismatchFound) if the
/// cancellations do not behave like a pairing.
PairRelation brute_force_depth_poset(const LefschetzComplex& complex, const CellOrder& order,
                                     BruteForceOptions options = {});

enum class ArcSet { Closure, Reduction };

struct DegreeStats {
  std::optional<int> degree;  ///< nullopt for the all-degrees total
  std::size_t nodes = 0;
  std::size_t arcs_closure = 0;
  std::size_t arcs_reduction = 0;
  std::size_t components = 0;
  std::size_t min_nodes = 0;
  std::size_t max_nodes = 0;
  std::size_t height = 0;  ///< arcs on the longest directed path
  long long cycles = 0;    ///< components + arcs - nodes on the chosen arc set
};

struct PosetStats {
  ArcSet arc_set = ArcSet::Reduction;
  std::vector<DegreeStats> per_degree;  ///< ascending degree
  DegreeStats total;
};

/// Throws Error(CyclicInput).
PosetStats poset_stats(const PairRelation& rel, ArcSet use = ArcSet::Reduction);

/// Nodes without incoming arcs.
std::vector<std::size_t> minimal_nodes(const PairRelation& rel);

}  // namespace depthposet
