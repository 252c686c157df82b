#pragma once

// Shared helpers for the unit tests: small random complexes, a naive GF(2)
// product and a few lookups by cell id.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "depthposet/bit_matrix.hpp"
#include "depthposet/complex.hpp"
#include "depthposet/reduction.hpp"

namespace testsupport {

using namespace depthposet;

struct Instance {
  LefschetzComplex complex;
  Filter filter;
};

// Closure of random simplices on a few vertices, optionally with the empty
// cell. The filter adds a random positive step over the largest facet value,
// so dimensions interleave freely.
inline Instance random_simplicial(std::mt19937_64& rng, int vertices = 6, int max_dim = 2, bool with_empty = true) {
  std::set<std::vector<int>> simplices;
  std::uniform_int_distribution<int> coin(0, 2);
  auto add_closure = [&](std::vector<int> s) {
    const int k = static_cast<int>(s.size());
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      std::vector<int> face;
      for (int i = 0; i < k; ++i)
        if (mask >> i & 1u) face.push_back(s[i]);
      simplices.insert(face);
    }
  };
  for (int v = 0; v < vertices; ++v) add_closure({v});
  for (int a = 0; a < vertices; ++a)
    for (int b = a + 1; b < vertices; ++b) {
      if (coin(rng) == 0) add_closure({a, b});
      if (max_dim >= 2)
        for (int c = b + 1; c < vertices; ++c)
          if (std::uniform_int_distribution<int>(0, 7)(rng) == 0) add_closure({a, b, c});
    }

  auto name = [](const std::vector<int>& s) {
    std::string id = "s";
    for (int v : s) id += "_" + std::to_string(v);
    return id;
  };
  std::vector<CellSpec> cells;
  std::map<std::string, std::vector<std::string>> facets;
  if (with_empty) cells.push_back({"empty", -1});
  std::vector<std::vector<int>> sorted(simplices.begin(), simplices.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](auto& l, auto& r) { return l.size() < r.size(); });
  for (const auto& s : sorted) {
    cells.push_back({name(s), static_cast<int>(s.size()) - 1});
    auto& f = facets[name(s)];
    if (s.size() == 1) {
      if (with_empty) f.push_back("empty");
      continue;
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto face = s;
      face.erase(face.begin() + static_cast<long>(i));
      f.push_back(name(face));
    }
  }
  auto complex = build_complex(cells, facets);

  std::uniform_int_distribution<long> step(1, 1000);
  std::vector<Rational> values(complex.size());
  std::set<Rational> used;
  for (CellIndex c = 0; c < complex.size(); ++c) {  // cells are stored by dimension
    Rational top = 0;
    for (CellIndex f : complex.facets(c)) top = std::max(top, values[f]);
    Rational v = top + Rational(step(rng));
    while (used.count(v)) v += 1;
    used.insert(v);
    values[c] = v;
  }
  auto filter = make_filter(complex, values);
  return {std::move(complex), std::move(filter)};
}

// (a * b) over GF(2), entry by entry.
inline BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      bool bit = false;
      for (std::size_t k = 0; k < a.cols(); ++k) bit ^= a.get(i, k) && b.get(k, j);
      if (bit) out.set(i, j);
    }
  return out;
}

inline BirthDeathPair pair_of(const LefschetzComplex& K, const std::string& birth, const std::string& death) {
  return {K.index_of(birth), K.index_of(death), K.dim(K.index_of(birth))};
}

inline std::set<std::pair<std::string, std::string>> pair_names(const LefschetzComplex& K,
                                                                const std::vector<BirthDeathPair>& pairs) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& p : pairs) out.insert({K.cell(p.birth).id, K.cell(p.death).id});
  return out;
}

// Filter from values listed per id.
inline Filter filter_of(const LefschetzComplex& K, const std::map<std::string, long>& values) {
  std::map<std::string, Rational> v;
  for (const auto& [id, x] : values) v[id] = Rational(x);
  return make_filter(K, v);
}

}  // namespace testsupport
