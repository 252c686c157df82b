#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "depthposet/rational.hpp"

namespace depthposet {

/// Dense index of a cell inside one LefschetzComplex. Indices are not stable
/// across cancellation; cell ids are.
using CellIndex = std::size_t;

struct Cell {
  std::string id;
  int dim = 0;  ///< -1 only for the empty cell
};

/// Cells plus a mod-2 facet relation between consecutive dimensions.
///
/// Facet and cofacet lists are kept sorted by cell index. The boundary
/// operator is validated to square to zero on construction.
class LefschetzComplex {
 public:
  LefschetzComplex() = default;

  std::size_t size() const noexcept { return cells_.size(); }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  const Cell& cell(CellIndex i) const { return cells_[i]; }
  int dim(CellIndex i) const { return cells_[i].dim; }

  const std::vector<CellIndex>& facets(CellIndex i) const { return facets_[i]; }
  const std::vector<CellIndex>& cofacets(CellIndex i) const { return cofacets_[i]; }

  bool is_facet(CellIndex facet, CellIndex cofacet) const;

  std::optional<CellIndex> find(const std::string& id) const;
  /// Throws Error(UnknownId).
  CellIndex index_of(const std::string& id) const;

  std::size_t incidence_count() const noexcept;
  int max_dim() const noexcept;

 private:
  friend LefschetzComplex build_complex_unchecked(std::vector<Cell> cells,
                                                  std::vector<std::vector<CellIndex>> facets);

  std::vector<Cell> cells_;
  std::vector<std::vector<CellIndex>> facets_;
  std::vector<std::vector<CellIndex>> cofacets_;
  std::unordered_map<std::string, CellIndex> index_;
};

/// A total order of the cells of one complex.
struct CellOrder {
  std::vector<CellIndex> sequence;   ///< position -> cell
  std::vector<std::size_t> position; ///< cell -> position

  static CellOrder from_sequence(std::vector<CellIndex> sequence);
  std::size_t size() const noexcept { return sequence.size(); }
  friend bool operator==(const CellOrder&, const CellOrder&) = default;
};

/// Injective values, strictly increasing along the facet relation.
struct Filter {
  std::vector<Rational> values;  ///< indexed by CellIndex
  CellOrder order;

  const Rational& value(CellIndex c) const { return values[c]; }
};

struct CellSpec {
  std::string id;
  int dim = 0;
};

/// Validates ids, dimensions and the mod-2 identity of the double boundary.
LefschetzComplex build_complex(const std::vector<CellSpec>& cells,
                               const std::map<std::string, std::vector<std::string>>& facet_lists);

/// Internal constructor: trusts indices, only computes cofacets and the id map.
LefschetzComplex build_complex_unchecked(std::vector<Cell> cells,
                                         std::vector<std::vector<CellIndex>> facets);

/// Throws Error(BoundaryNotSquaredZero) naming an offending cell.
void check_boundary_squared_zero(const LefschetzComplex& complex);

Filter make_filter(const LefschetzComplex& complex, const std::map<std::string, Rational>& values);
Filter make_filter(const LefschetzComplex& complex, std::vector<Rational> values);

/// Throws Error(NotMonotone) unless the order lists every facet before its cofacets.
void check_linear_extension(const LefschetzComplex& complex, const CellOrder& order);

/// a is the last facet of b and b the first cofacet of a. Throws NotIncident.
bool is_shallow_pair(const LefschetzComplex& complex, const CellOrder& order, CellIndex a, CellIndex b);

/// All shallow pairs, sorted by the position of the death-giving cell.
std::vector<std::pair<CellIndex, CellIndex>> shallow_pairs(const LefschetzComplex& complex,
                                                           const CellOrder& order);

struct Cancelled {
  LefschetzComplex complex;
  CellOrder order;
};

/// Removes the shallow pair (a, b), toggling incidence(p, q) for every other
/// facet p of b and cofacet q of a. Throws NotShallow.
Cancelled cancel_shallow_pair(const LefschetzComplex& complex, const CellOrder& order, CellIndex a,
                              CellIndex b);

/// Unit-cube subdivision of (R/nZ)^d with the 2^d extra cells that kill its
/// homology: the empty cell, and for each nonempty axis set S a (|S|+1)-cell
/// bounded by the |S|-cubes of the coordinate sub-torus through the origin.
LefschetzComplex cubical_torus(int n, int d);

/// Id of a torus cube anchored at the given coordinates spanning the axes in
/// mask (bit i = axis i).
std::string torus_cube_id(const std::vector<int>& anchor, unsigned axes_mask);
/// Id of the extra cell attached along the axes in mask; mask 0 is the empty cell.
std::string torus_extra_id(unsigned axes_mask);

}  // namespace depthposet
