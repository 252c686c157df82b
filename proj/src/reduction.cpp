#include "depthposet/reduction.hpp"

#include <algorithm>

#include "depthposet/errors.hpp"

namespace depthposet {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Converts (birth position, death position) pivots into a Pairing.
Pairing make_pairing(const OrderedBoundaryMatrix& delta, const std::vector<std::size_t>& partner) {
  Pairing out;
  const std::size_t n = delta.size();
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t i = partner[j];
    if (i == kNone) {
      out.essential.push_back(delta.order.sequence[j]);
    } else if (i < j) {
      out.pairs.push_back({delta.order.sequence[i], delta.order.sequence[j], delta.dims[i]});
    }
  }
  return out;
}

}  // namespace

OrderedBoundaryMatrix boundary_matrix(const LefschetzComplex& complex, const CellOrder& order) {
  const std::size_t n = complex.size();
  OrderedBoundaryMatrix delta{BitMatrix(n, n), std::vector<int>(n), order};
  for (std::size_t j = 0; j < n; ++j) {
    CellIndex c = order.sequence[j];
    delta.dims[j] = complex.dim(c);
    for (CellIndex f : complex.facets(c)) delta.matrix.set(order.position[f], j);
  }
  return delta;
}

Pairing standard_reduce(const OrderedBoundaryMatrix& delta) {
  const std::size_t n = delta.size();
  BitMatrix r = delta.matrix;
  std::vector<std::size_t> column_with_low(n, kNone);
  std::vector<std::size_t> partner(n, kNone);
  for (std::size_t j = 0; j < n; ++j) {
    auto& col = r.column(j);
    std::size_t low = col.highest();
    while (low != BitVector::npos && column_with_low[low] != kNone) {
      col ^= r.column(column_with_low[low]);
      low = col.highest();
    }
    if (low != BitVector::npos) {
      column_with_low[low] = j;
      partner[low] = j;
      partner[j] = low;
    }
  }
  return make_pairing(delta, partner);
}

ColumnReduction reduce_alg1(const OrderedBoundaryMatrix& delta, bool retain_reduced) {
  const std::size_t n = delta.size();
  BitMatrix r = delta.matrix;
  BitMatrix u = BitMatrix::identity(n);
  std::vector<char> column_deleted(n, 0);
  std::vector<std::size_t> partner(n, kNone);
  std::vector<std::size_t> hits;

  // Column operations never create entries below the current row, so the
  // lowest nonzero row is found by sweeping rows from the bottom up.
  for (std::size_t x = n; x-- > 0;) {
    hits.clear();
    for (std::size_t c = x + 1; c < n; ++c)
      if (!column_deleted[c] && r.get(x, c)) hits.push_back(c);
    if (hits.empty()) continue;
    const std::size_t y = hits.front();
    for (std::size_t k = 1; k < hits.size(); ++k) {
      const std::size_t b = hits[k];
      r.add_column(y, b);
      u.flip(y, b);
    }
    column_deleted[y] = 1;
    partner[x] = y;
    partner[y] = x;
  }

  ColumnReduction out{make_pairing(delta, partner), std::move(u), std::nullopt};
  if (retain_reduced) out.r = std::move(r);
  return out;
}

RowReduction reduce_alg2(const OrderedBoundaryMatrix& delta, bool retain_reduced) {
  const std::size_t n = delta.size();
  // rows.column(i) holds row i of the working matrix
  BitMatrix rows = delta.matrix.transpose();
  BitMatrix u = BitMatrix::identity(n);
  std::vector<char> row_deleted(n, 0);
  std::vector<std::size_t> partner(n, kNone);
  std::vector<std::size_t> hits;

  for (std::size_t y = 0; y < n; ++y) {
    hits.clear();
    for (std::size_t a = y; a-- > 0;)
      if (!row_deleted[a] && rows.get(y, a)) hits.push_back(a);
    if (hits.empty()) continue;
    const std::size_t x = hits.front();  // lowest nonzero entry in column y
    for (std::size_t k = 1; k < hits.size(); ++k) {
      const std::size_t a = hits[k];
      rows.add_column(x, a);
      u.flip(a, x);
    }
    row_deleted[x] = 1;
    partner[x] = y;
    partner[y] = x;
  }

  RowReduction out{make_pairing(delta, partner), std::move(u), std::nullopt};
  if (retain_reduced) out.r = rows.transpose();
  return out;
}

std::optional<std::size_t> ReductionState::pair_of(CellIndex c) const {
  std::size_t i = pair_index_of_cell[c];
  if (i == kNone) return std::nullopt;
  return i;
}

bool ReductionState::is_birth(CellIndex c) const {
  auto i = pair_of(c);
  return i ? pairing.pairs[*i].birth == c : false;
}

bool ReductionState::is_death(CellIndex c) const {
  auto i = pair_of(c);
  return i ? pairing.pairs[*i].death == c : false;
}

ReductionState reduce(const LefschetzComplex& complex, const CellOrder& order, ReductionOptions options) {
  auto delta = boundary_matrix(complex, order);
  auto alg1 = reduce_alg1(delta, options.retain_reduced);
  auto alg2 = reduce_alg2(delta, options.retain_reduced);
  if (!(alg1.pairing == alg2.pairing))
    throw Error(ErrorCode::MismatchFound, "column and row reductions disagree on the pairing");

  ReductionState state;
  state.order = order;
  state.dims.resize(complex.size());
  for (CellIndex c = 0; c < complex.size(); ++c) state.dims[c] = complex.dim(c);
  state.pairing = std::move(alg1.pairing);
  state.u1 = std::move(alg1.u);
  state.u2 = std::move(alg2.u);
  state.r1 = std::move(alg1.r);
  state.r2 = std::move(alg2.r);
  state.pair_index_of_cell.assign(complex.size(), kNone);
  for (std::size_t i = 0; i < state.pairing.pairs.size(); ++i) {
    state.pair_index_of_cell[state.pairing.pairs[i].birth] = i;
    state.pair_index_of_cell[state.pairing.pairs[i].death] = i;
  }
  return state;
}

PairRelation death_relation(const std::vector<BirthDeathPair>& pairs, const BitMatrix& u1, const CellOrder& order) {
  PairRelation rel(pairs);
  for (std::size_t psi = 0; psi < pairs.size(); ++psi) {
    const std::size_t b = order.position[pairs[psi].death];
    for (std::size_t phi = 0; phi < pairs.size(); ++phi) {
      const std::size_t y = order.position[pairs[phi].death];
      if (y != b && u1.get(y, b)) rel.add_arc(phi, psi);
    }
  }
  return rel;
}

PairRelation birth_relation(const std::vector<BirthDeathPair>& pairs, const BitMatrix& u2, const CellOrder& order) {
  PairRelation rel(pairs);
  for (std::size_t psi = 0; psi < pairs.size(); ++psi) {
    const std::size_t a = order.position[pairs[psi].birth];
    for (std::size_t phi = 0; phi < pairs.size(); ++phi) {
      const std::size_t x = order.position[pairs[phi].birth];
      if (x != a && u2.get(a, x)) rel.add_arc(phi, psi);
    }
  }
  return rel;
}

PairRelation death_relation(const ReductionState& state) {
  return death_relation(state.pairs(), state.u1, state.order);
}

PairRelation birth_relation(const ReductionState& state) {
  return birth_relation(state.pairs(), state.u2, state.order);
}

PredSuccSets pred_succ_sets(const ReductionState& state, const BirthDeathPair& psi) {
  if (psi.birth >= state.pair_index_of_cell.size() || psi.death >= state.pair_index_of_cell.size())
    throw Error(ErrorCode::UnknownPair, "cell index out of range");
  auto idx = state.pair_of(psi.birth);
  if (!idx || !(state.pairs()[*idx] == psi))
    throw Error(ErrorCode::UnknownPair, "not a birth-death pair of this filter");
  const std::size_t a = state.pos(psi.birth);
  const std::size_t b = state.pos(psi.death);
  PredSuccSets out;
  for (const auto& phi : state.pairs()) {
    if (phi == psi) continue;
    const std::size_t x = state.pos(phi.birth);
    const std::size_t y = state.pos(phi.death);
    if (state.u1.get(y, b)) out.pred1.push_back(phi);
    if (state.u2.get(a, x)) out.pred2.push_back(phi);
    if (state.u1.get(b, y)) out.succ1.push_back(phi);
    if (state.u2.get(x, a)) out.succ2.push_back(phi);
  }
  return out;
}

PersistenceDiagram persistence_diagram(const std::vector<BirthDeathPair>& pairs, const Filter& filter, int degree) {
  PersistenceDiagram dgm;
  dgm.degree = degree;
  for (const auto& p : pairs)
    if (p.degree == degree) dgm.points.emplace_back(filter.value(p.birth), filter.value(p.death));
  std::sort(dgm.points.begin(), dgm.points.end());
  return dgm;
}

}  // namespace depthposet
