#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "depthposet/bit_matrix.hpp"
#include "depthposet/complex.hpp"
#include "depthposet/relation.hpp"

namespace depthposet {

/// Boundary matrix in filter order: entry [i, j] is the incidence between the
/// cells at positions i and j. Strictly upper triangular.
struct OrderedBoundaryMatrix {
  BitMatrix matrix;
  std::vector<int> dims;  ///< by position
  CellOrder order;

  std::size_t size() const noexcept { return dims.size(); }
};

OrderedBoundaryMatrix boundary_matrix(const LefschetzComplex& complex, const CellOrder& order);

/// Birth-death pairs plus the unpaired (essential) cells.
struct Pairing {
  std::vector<BirthDeathPair> pairs;  ///< sorted by position of the death cell
  std::vector<CellIndex> essential;   ///< sorted by position

  friend bool operator==(const Pairing&, const Pairing&) = default;
};

/// Classic left-to-right column reduction.
Pairing standard_reduce(const OrderedBoundaryMatrix& delta);

/// Bottom-to-top column reduction. Records every "add column y to column b"
/// as a toggle of u[y, b]. Deleted rows and columns are masked, so the
/// matrices keep their original size and delta = r * u holds at the end.
struct ColumnReduction {
  Pairing pairing;
  BitMatrix u;
  std::optional<BitMatrix> r;
};
ColumnReduction reduce_alg1(const OrderedBoundaryMatrix& delta, bool retain_reduced = false);

/// Left-to-right row reduction. Records every "add row x to row a" as a
/// toggle of u[a, x]; delta = u * r holds at the end.
struct RowReduction {
  Pairing pairing;
  BitMatrix u;
  std::optional<BitMatrix> r;
};
RowReduction reduce_alg2(const OrderedBoundaryMatrix& delta, bool retain_reduced = false);

/// Both reductions for one filter order. U matrices are indexed by position.
struct ReductionState {
  CellOrder order;
  std::vector<int> dims;  ///< by cell
  Pairing pairing;
  BitMatrix u1;
  BitMatrix u2;
  std::optional<BitMatrix> r1;
  std::optional<BitMatrix> r2;

  const std::vector<BirthDeathPair>& pairs() const noexcept { return pairing.pairs; }
  std::size_t pos(CellIndex c) const { return order.position[c]; }
  /// Index into pairs() of the pair containing c, if any.
  std::optional<std::size_t> pair_of(CellIndex c) const;
  bool is_birth(CellIndex c) const;
  bool is_death(CellIndex c) const;

  std::vector<std::size_t> pair_index_of_cell;  ///< cell -> pair index, npos when essential
};

struct ReductionOptions {
  bool retain_reduced = false;
};

/// Runs both reductions; throws Error(MismatchFound) if they pair differently.
ReductionState reduce(const LefschetzComplex& complex, const CellOrder& order, ReductionOptions options = {});

/// ((x, y), (a, b)) for y != b and u1[y, b] = 1.
PairRelation death_relation(const std::vector<BirthDeathPair>& pairs, const BitMatrix& u1, const CellOrder& order);
/// ((x, y), (a, b)) for x != a and u2[a, x] = 1.
PairRelation birth_relation(const std::vector<BirthDeathPair>& pairs, const BitMatrix& u2, const CellOrder& order);

PairRelation death_relation(const ReductionState& state);
PairRelation birth_relation(const ReductionState& state);

/// Predecessors and successors of one pair in the death (1) and birth (2)
/// relations. Each list is sorted by death position.
struct PredSuccSets {
  std::vector<BirthDeathPair> pred1;
  std::vector<BirthDeathPair> pred2;
  std::vector<BirthDeathPair> succ1;
  std::vector<BirthDeathPair> succ2;
};

/// Throws Error(UnknownPair) if psi is not a pair of the state.
PredSuccSets pred_succ_sets(const ReductionState& state, const BirthDeathPair& psi);

struct PersistenceDiagram {
  int degree = 0;
  std::vector<std::pair<Rational, Rational>> points;  ///< sorted
};

PersistenceDiagram persistence_diagram(const std::vector<BirthDeathPair>& pairs, const Filter& filter, int degree);

}  // namespace depthposet
