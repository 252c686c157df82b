#include "depthposet/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "depthposet/errors.hpp"

namespace depthposet {

bool LefschetzComplex::is_facet(CellIndex facet, CellIndex cofacet) const {
  const auto& f = facets_[cofacet];
  return std::binary_search(f.begin(), f.end(), facet);
}

std::optional<CellIndex> LefschetzComplex::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

CellIndex LefschetzComplex::index_of(const std::string& id) const {
  auto found = find(id);
  if (!found) throw Error(ErrorCode::UnknownId, "no cell '" + id + "'");
  return *found;
}

std::size_t LefschetzComplex::incidence_count() const noexcept {
  std::size_t total = 0;
  for (const auto& f : facets_) total += f.size();
  return total;
}

int LefschetzComplex::max_dim() const noexcept {
  int best = -1;
  for (const auto& c : cells_) best = std::max(best, c.dim);
  return best;
}

LefschetzComplex build_complex_unchecked(std::vector<Cell> cells,
                                         std::vector<std::vector<CellIndex>> facets) {
  LefschetzComplex k;
  k.cells_ = std::move(cells);
  k.facets_ = std::move(facets);
  k.facets_.resize(k.cells_.size());
  k.cofacets_.assign(k.cells_.size(), {});
  for (CellIndex c = 0; c < k.cells_.size(); ++c) {
    std::sort(k.facets_[c].begin(), k.facets_[c].end());
    for (CellIndex f : k.facets_[c]) k.cofacets_[f].push_back(c);
  }
  // cofacets are filled in increasing c, hence already sorted
  k.index_.reserve(k.cells_.size());
  for (CellIndex c = 0; c < k.cells_.size(); ++c) k.index_.emplace(k.cells_[c].id, c);
  return k;
}

void check_boundary_squared_zero(const LefschetzComplex& complex) {
  std::vector<unsigned char> parity(complex.size(), 0);
  std::vector<CellIndex> touched;
  for (CellIndex c = 0; c < complex.size(); ++c) {
    touched.clear();
    for (CellIndex d : complex.facets(c)) {
      for (CellIndex e : complex.facets(d)) {
        if (!parity[e] && std::find(touched.begin(), touched.end(), e) == touched.end()) touched.push_back(e);
        parity[e] ^= 1;
      }
    }
    for (CellIndex e : touched) {
      if (parity[e]) {
        throw Error(ErrorCode::BoundaryNotSquaredZero,
                    "cell '" + complex.cell(c).id + "' reaches '" + complex.cell(e).id +
                        "' an odd number of times");
      }
    }
  }
}

LefschetzComplex build_complex(const std::vector<CellSpec>& cells,
                               const std::map<std::string, std::vector<std::string>>& facet_lists) {
  std::vector<Cell> out_cells;
  std::unordered_map<std::string, CellIndex> index;
  out_cells.reserve(cells.size());
  for (const auto& spec : cells) {
    if (spec.dim < -1)
      throw Error(ErrorCode::DimensionMismatch, "cell '" + spec.id + "' has dimension below -1");
    if (!index.emplace(spec.id, out_cells.size()).second)
      throw Error(ErrorCode::DuplicateId, "cell '" + spec.id + "' declared twice");
    out_cells.push_back({spec.id, spec.dim});
  }

  std::vector<std::vector<CellIndex>> facets(out_cells.size());
  for (const auto& [id, list] : facet_lists) {
    auto it = index.find(id);
    if (it == index.end()) throw Error(ErrorCode::UnknownId, "facet list for unknown cell '" + id + "'");
    CellIndex c = it->second;
    std::set<CellIndex> seen;
    for (const auto& fid : list) {
      auto ft = index.find(fid);
      if (ft == index.end())
        throw Error(ErrorCode::UnknownId, "cell '" + id + "' lists unknown facet '" + fid + "'");
      if (out_cells[ft->second].dim != out_cells[c].dim - 1)
        throw Error(ErrorCode::DimensionMismatch,
                    "facet '" + fid + "' of '" + id + "' does not have dimension " +
                        std::to_string(out_cells[c].dim - 1));
      if (!seen.insert(ft->second).second)
        throw Error(ErrorCode::DuplicateId, "cell '" + id + "' lists facet '" + fid + "' twice");
    }
    facets[c].assign(seen.begin(), seen.end());
  }

  auto complex = build_complex_unchecked(std::move(out_cells), std::move(facets));
  check_boundary_squared_zero(complex);
  return complex;
}

CellOrder CellOrder::from_sequence(std::vector<CellIndex> sequence) {
  CellOrder order;
  order.position.assign(sequence.size(), 0);
  for (std::size_t p = 0; p < sequence.size(); ++p) order.position[sequence[p]] = p;
  order.sequence = std::move(sequence);
  return order;
}

void check_linear_extension(const LefschetzComplex& complex, const CellOrder& order) {
  for (CellIndex c = 0; c < complex.size(); ++c) {
    for (CellIndex f : complex.facets(c)) {
      if (order.position[f] >= order.position[c]) {
        throw Error(ErrorCode::NotMonotone,
                    "facet '" + complex.cell(f).id + "' does not precede '" + complex.cell(c).id + "'");
      }
    }
  }
}

Filter make_filter(const LefschetzComplex& complex, std::vector<Rational> values) {
  if (values.size() != complex.size())
    throw Error(ErrorCode::MissingValue, "filter must assign a value to every cell");
  std::vector<CellIndex> seq(complex.size());
  std::iota(seq.begin(), seq.end(), CellIndex{0});
  std::sort(seq.begin(), seq.end(), [&](CellIndex a, CellIndex b) {
    int c = cmp(values[a], values[b]);
    return c != 0 ? c < 0 : a < b;
  });
  for (std::size_t p = 1; p < seq.size(); ++p) {
    if (values[seq[p - 1]] == values[seq[p]]) {
      throw Error(ErrorCode::NotInjective, "cells '" + complex.cell(seq[p - 1]).id + "' and '" +
                                               complex.cell(seq[p]).id + "' share value " +
                                               format_rational(values[seq[p]]));
    }
  }
  for (CellIndex c = 0; c < complex.size(); ++c) {
    for (CellIndex f : complex.facets(c)) {
      if (values[f] >= values[c]) {
        throw Error(ErrorCode::NotMonotone, "facet '" + complex.cell(f).id + "' has value " +
                                                format_rational(values[f]) + " >= " +
                                                format_rational(values[c]) + " of '" +
                                                complex.cell(c).id + "'");
      }
    }
  }
  Filter filter;
  filter.values = std::move(values);
  filter.order = CellOrder::from_sequence(std::move(seq));
  return filter;
}

Filter make_filter(const LefschetzComplex& complex, const std::map<std::string, Rational>& values) {
  std::vector<Rational> dense(complex.size());
  std::vector<bool> assigned(complex.size(), false);
  for (const auto& [id, v] : values) {
    CellIndex c = complex.index_of(id);
    dense[c] = v;
    assigned[c] = true;
  }
  for (CellIndex c = 0; c < complex.size(); ++c) {
    if (!assigned[c]) throw Error(ErrorCode::MissingValue, "no value for cell '" + complex.cell(c).id + "'");
  }
  return make_filter(complex, std::move(dense));
}

bool is_shallow_pair(const LefschetzComplex& complex, const CellOrder& order, CellIndex a, CellIndex b) {
  if (!complex.is_facet(a, b)) {
    throw Error(ErrorCode::NotIncident,
                "'" + complex.cell(a).id + "' is not a facet of '" + complex.cell(b).id + "'");
  }
  for (CellIndex f : complex.facets(b))
    if (order.position[f] > order.position[a]) return false;
  for (CellIndex q : complex.cofacets(a))
    if (order.position[q] < order.position[b]) return false;
  return true;
}

std::vector<std::pair<CellIndex, CellIndex>> shallow_pairs(const LefschetzComplex& complex,
                                                           const CellOrder& order) {
  std::vector<std::pair<CellIndex, CellIndex>> out;
  for (CellIndex b : order.sequence) {
    const auto& fs = complex.facets(b);
    if (fs.empty()) continue;
    CellIndex last = *std::max_element(fs.begin(), fs.end(), [&](CellIndex x, CellIndex y) {
      return order.position[x] < order.position[y];
    });
    const auto& cs = complex.cofacets(last);
    CellIndex first = *std::min_element(cs.begin(), cs.end(), [&](CellIndex x, CellIndex y) {
      return order.position[x] < order.position[y];
    });
    if (first == b) out.emplace_back(last, b);
  }
  return out;
}

Cancelled cancel_shallow_pair(const LefschetzComplex& complex, const CellOrder& order, CellIndex a,
                              CellIndex b) {
  if (!complex.is_facet(a, b) || !is_shallow_pair(complex, order, a, b)) {
    throw Error(ErrorCode::NotShallow,
                "('" + complex.cell(a).id + "', '" + complex.cell(b).id + "') is not a shallow pair");
  }
  // Toggle every (facet of b) x (cofacet of a) incidence, working on old indices.
  std::vector<std::vector<CellIndex>> facets(complex.size());
  for (CellIndex c = 0; c < complex.size(); ++c) facets[c] = complex.facets(c);
  for (CellIndex q : complex.cofacets(a)) {
    if (q == b) continue;
    std::vector<CellIndex> merged;
    std::set_symmetric_difference(facets[q].begin(), facets[q].end(), complex.facets(b).begin(),
                                  complex.facets(b).end(), std::back_inserter(merged));
    // a lies in both lists and cancels out of the symmetric difference
    facets[q] = std::move(merged);
  }

  std::vector<CellIndex> remap(complex.size(), static_cast<CellIndex>(-1));
  std::vector<Cell> cells;
  cells.reserve(complex.size() - 2);
  for (CellIndex c = 0; c < complex.size(); ++c) {
    if (c == a || c == b) continue;
    remap[c] = cells.size();
    cells.push_back(complex.cell(c));
  }
  std::vector<std::vector<CellIndex>> new_facets(cells.size());
  for (CellIndex c = 0; c < complex.size(); ++c) {
    if (c == a || c == b) continue;
    for (CellIndex f : facets[c])
      if (f != a && f != b) new_facets[remap[c]].push_back(remap[f]);
  }
  std::vector<CellIndex> seq;
  seq.reserve(cells.size());
  for (CellIndex c : order.sequence)
    if (c != a && c != b) seq.push_back(remap[c]);

  return {build_complex_unchecked(std::move(cells), std::move(new_facets)),
          CellOrder::from_sequence(std::move(seq))};
}

namespace {

const char* kAxisNames = "xyz";

std::string axes_name(unsigned mask) {
  std::string s;
  for (int i = 0; i < 3; ++i)
    if (mask & (1u << i)) s += kAxisNames[i];
  return s;
}

}  // namespace

std::string torus_cube_id(const std::vector<int>& anchor, unsigned axes_mask) {
  std::string id = "q";
  for (int c : anchor) id += "_" + std::to_string(c);
  id += "_" + (axes_mask == 0 ? std::string("o") : axes_name(axes_mask));
  return id;
}

std::string torus_extra_id(unsigned axes_mask) {
  return axes_mask == 0 ? std::string("t_empty") : "t_" + axes_name(axes_mask);
}

LefschetzComplex cubical_torus(int n, int d) {
  if (d < 1 || d > 3) throw Error(ErrorCode::UnsupportedDimension, "torus dimension must be 1, 2 or 3");
  if (n < 2) throw Error(ErrorCode::NTooSmall, "torus side length must be at least 2");

  std::size_t vertices = 1;
  for (int i = 0; i < d; ++i) vertices *= static_cast<std::size_t>(n);

  auto anchor_of = [&](std::size_t flat) {
    // lexicographic: axis 0 is the most significant coordinate
    std::vector<int> a(static_cast<std::size_t>(d));
    for (int i = d - 1; i >= 0; --i) {
      a[static_cast<std::size_t>(i)] = static_cast<int>(flat % static_cast<std::size_t>(n));
      flat /= static_cast<std::size_t>(n);
    }
    return a;
  };
  auto flat_of = [&](const std::vector<int>& a) {
    std::size_t flat = 0;
    for (int i = 0; i < d; ++i) flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(a[static_cast<std::size_t>(i)]);
    return flat;
  };

  // Axis masks grouped by popcount, each group sorted by axis name.
  std::vector<std::vector<unsigned>> masks_by_dim(static_cast<std::size_t>(d) + 1);
  for (unsigned m = 0; m < (1u << d); ++m) masks_by_dim[static_cast<std::size_t>(std::popcount(m))].push_back(m);
  for (auto& group : masks_by_dim)
    std::sort(group.begin(), group.end(), [](unsigned x, unsigned y) { return axes_name(x) < axes_name(y); });

  std::vector<Cell> cells;
  std::vector<std::vector<CellIndex>> facets;
  // cube_index[mask][flat anchor]
  std::vector<std::vector<CellIndex>> cube_index(1u << d, std::vector<CellIndex>(vertices));
  std::vector<CellIndex> extra_index(1u << d);

  extra_index[0] = cells.size();
  cells.push_back({torus_extra_id(0), -1});
  facets.emplace_back();

  for (int p = 0; p <= d; ++p) {
    // all p-cubes: anchor-major, axes-minor
    for (std::size_t flat = 0; flat < vertices; ++flat) {
      auto anchor = anchor_of(flat);
      for (unsigned mask : masks_by_dim[static_cast<std::size_t>(p)]) {
        CellIndex idx = cells.size();
        cube_index[mask][flat] = idx;
        cells.push_back({torus_cube_id(anchor, mask), p});
        std::vector<CellIndex> fs;
        if (p == 0) {
          fs.push_back(extra_index[0]);
        } else {
          for (int axis = 0; axis < d; ++axis) {
            if (!(mask & (1u << axis))) continue;
            unsigned sub = mask & ~(1u << axis);
            auto shifted = anchor;
            shifted[static_cast<std::size_t>(axis)] = (shifted[static_cast<std::size_t>(axis)] + 1) % n;
            fs.push_back(cube_index[sub][flat]);
            fs.push_back(cube_index[sub][flat_of(shifted)]);
          }
        }
        facets.push_back(std::move(fs));
      }
    }
    // extra (p+1)-cells for axis sets of size p >= 1, attached along the
    // coordinate sub-torus through the origin
    if (p >= 1) {
      for (unsigned mask : masks_by_dim[static_cast<std::size_t>(p)]) {
        extra_index[mask] = cells.size();
        cells.push_back({torus_extra_id(mask), p + 1});
        std::vector<CellIndex> fs;
        for (std::size_t flat = 0; flat < vertices; ++flat) {
          auto anchor = anchor_of(flat);
          bool on_subtorus = true;
          for (int axis = 0; axis < d; ++axis)
            if (!(mask & (1u << axis)) && anchor[static_cast<std::size_t>(axis)] != 0) on_subtorus = false;
          if (on_subtorus) fs.push_back(cube_index[mask][flat]);
        }
        facets.push_back(std::move(fs));
      }
    }
  }
  // Extra cells of dimension p+1 were appended after the p-cubes; move them
  // behind the (p+1)-cubes so that storage is grouped by dimension.
  std::vector<CellIndex> perm(cells.size());
  std::iota(perm.begin(), perm.end(), CellIndex{0});
  auto is_extra = [&](CellIndex c) { return cells[c].id.front() == 't'; };
  std::stable_sort(perm.begin(), perm.end(), [&](CellIndex x, CellIndex y) {
    if (cells[x].dim != cells[y].dim) return cells[x].dim < cells[y].dim;
    return !is_extra(x) && is_extra(y);
  });
  std::vector<CellIndex> inverse(cells.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inverse[perm[i]] = i;
  std::vector<Cell> sorted_cells;
  std::vector<std::vector<CellIndex>> sorted_facets;
  for (CellIndex old : perm) {
    sorted_cells.push_back(cells[old]);
    std::vector<CellIndex> fs;
    for (CellIndex f : facets[old]) fs.push_back(inverse[f]);
    sorted_facets.push_back(std::move(fs));
  }
  auto complex = build_complex_unchecked(std::move(sorted_cells), std::move(sorted_facets));
  return complex;
}

}  // namespace depthposet
