#include <gtest/gtest.h>

#include <map>
#include <random>

#include "depthposet/errors.hpp"
#include "depthposet/fixtures.hpp"
#include "depthposet/poset.hpp"
#include "depthposet/random_models.hpp"
#include "support.hpp"

using namespace depthposet;
using Names = std::set<std::pair<std::string, std::string>>;
using NamedArcs = std::set<std::pair<std::pair<std::string, std::string>, std::pair<std::string, std::string>>>;

namespace {

// Nodes 1..k as abstract pairs of degree 0.
PairRelation make_relation(int k, const std::vector<std::pair<int, int>>& arcs) {
  std::vector<BirthDeathPair> nodes;
  for (int i = 1; i <= k; ++i) nodes.push_back({static_cast<CellIndex>(i), static_cast<CellIndex>(100 + i), 0});
  PairRelation rel(nodes);
  for (auto [u, v] : arcs) rel.add_arc(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1));
  return rel;
}

std::set<std::pair<std::size_t, std::size_t>> arc_set(const PairRelation& rel) {
  auto a = rel.arcs();
  return {a.begin(), a.end()};
}

NamedArcs named_arcs(const LefschetzComplex& K, const PairRelation& rel) {
  NamedArcs out;
  auto name = [&](const BirthDeathPair& p) { return std::pair{K.cell(p.birth).id, K.cell(p.death).id}; };
  for (auto [u, v] : rel.arcs()) out.insert({name(rel.node(u)), name(rel.node(v))});
  return out;
}

// Floyd-Warshall reachability.
std::set<std::pair<std::size_t, std::size_t>> reachability(std::size_t n, const std::set<std::pair<std::size_t, std::size_t>>& arcs) {
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (auto [u, v] : arcs) r[u][v] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (r[i][j]) out.insert({i, j});
  return out;
}

// Explores every sequence of shallow cancellations on the complex itself and
// records, for each pair, which pairs were cancelled before it in all of them.
struct ComplexLevelOracle {
  std::map<std::pair<std::string, std::string>, Names> before;
  std::set<Names> seen;

  void visit(const LefschetzComplex& K, const CellOrder& order, const Names& done) {
    if (!seen.insert(done).second) return;
    for (auto [a, b] : shallow_pairs(K, order)) {
      const std::pair<std::string, std::string> p{K.cell(a).id, K.cell(b).id};
      auto it = before.find(p);
      if (it == before.end()) {
        before[p] = done;
      } else {
        Names keep;
        for (const auto& q : it->second)
          if (done.count(q)) keep.insert(q);
        it->second = std::move(keep);
      }
      auto next = cancel_shallow_pair(K, order, a, b);
      Names after = done;
      after.insert(p);
      visit(next.complex, next.order, after);
    }
  }

  NamedArcs arcs() const {
    NamedArcs out;
    for (const auto& [p, preds] : before)
      for (const auto& q : preds) out.insert({q, p});
    return out;
  }
};

}  // namespace

TEST(TransitiveClosure, Examples) {
  auto c = transitive_closure(make_relation(3, {{1, 2}, {2, 3}}));
  EXPECT_EQ(arc_set(c), (std::set<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}, {0, 2}}));
  EXPECT_TRUE(transitive_closure(c).same_as(c));
  try {
    transitive_closure(make_relation(2, {{1, 2}, {2, 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CyclicInput);
  }
}

TEST(TransitiveReduction, Examples) {
  auto r = transitive_reduction(make_relation(3, {{1, 2}, {2, 3}, {1, 3}}));
  EXPECT_EQ(arc_set(r), (std::set<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}}));
  auto empty = make_relation(4, {});
  EXPECT_EQ(transitive_reduction(empty).arc_count(), 0u);
  EXPECT_THROW(transitive_reduction(make_relation(3, {{1, 2}, {2, 3}, {3, 1}})), Error);
}

TEST(TransitiveReduction, RandomDagsAgainstFloydWarshall) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = std::uniform_int_distribution<int>(1, 14)(rng);
    std::vector<int> perm(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::pair<int, int>> arcs;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) arcs.push_back({perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]});
    auto rel = make_relation(k, arcs);
    auto closure = transitive_closure(rel);
    auto reduction = transitive_reduction(rel);
    const auto expected = reachability(static_cast<std::size_t>(k), arc_set(rel));
    EXPECT_EQ(arc_set(closure), expected);
    EXPECT_EQ(arc_set(transitive_closure(reduction)), expected);
    // no reduction arc is implied by the others
    for (auto arc : arc_set(reduction)) {
      auto others = arc_set(reduction);
      others.erase(arc);
      EXPECT_FALSE(reachability(static_cast<std::size_t>(k), others).count(arc));
    }
  }
}

TEST(PosetStats, DiamondAndAntichain) {
  auto s = poset_stats(make_relation(4, {{1, 2}, {1, 3}, {2, 4}, {3, 4}}));
  ASSERT_EQ(s.per_degree.size(), 1u);
  const auto& d = s.per_degree[0];
  EXPECT_EQ(d.degree, 0);
  EXPECT_EQ(d.nodes, 4u);
  EXPECT_EQ(d.arcs_closure, 5u);
  EXPECT_EQ(d.arcs_reduction, 4u);
  EXPECT_EQ(d.components, 1u);
  EXPECT_EQ(d.cycles, 1);
  EXPECT_EQ(d.height, 2u);
  EXPECT_EQ(d.min_nodes, 1u);
  EXPECT_EQ(d.max_nodes, 1u);
  EXPECT_EQ(minimal_nodes(make_relation(4, {{1, 2}, {1, 3}, {2, 4}, {3, 4}})), std::vector<std::size_t>{0});
  EXPECT_FALSE(s.total.degree.has_value());
  EXPECT_EQ(s.total.nodes, 4u);

  auto a = poset_stats(make_relation(5, {})).total;
  EXPECT_EQ(a.components, 5u);
  EXPECT_EQ(a.cycles, 0);
  EXPECT_EQ(a.height, 0u);
  EXPECT_EQ(a.min_nodes, 5u);
}

TEST(PosetStats, CyclesUseTheChosenArcSet) {
  auto rel = make_relation(4, {{1, 2}, {1, 3}, {2, 4}, {3, 4}});
  auto s = poset_stats(rel, ArcSet::Closure).total;
  EXPECT_EQ(s.cycles, 2);  // 1 + 5 - 4
  EXPECT_THROW(poset_stats(make_relation(2, {{1, 2}, {2, 1}})), Error);
}

TEST(DepthPoset, FreePairsAndFixture) {
  auto K = build_complex({{"v", 0}, {"w", 0}, {"e", 1}, {"g", 1}}, {{"e", {"v"}}, {"g", {"w"}}});
  auto f = testsupport::filter_of(K, {{"v", 0}, {"e", 1}, {"w", 2}, {"g", 3}});
  auto p = depth_poset(K, f);
  EXPECT_EQ(p.size(), 2u);
  EXPECT_EQ(p.arc_count(), 0u);
  auto bf = brute_force_depth_poset(K, f.order);
  EXPECT_EQ(bf.size(), 2u);
  EXPECT_EQ(bf.arc_count(), 0u);

  auto fx = figure_fixture();
  auto arcs = named_arcs(fx.complex, depth_poset(fx.complex, fx.filter));
  EXPECT_TRUE(arcs.count({{"e", "alpha"}, {"d", "gamma"}}));
  EXPECT_FALSE(arcs.count({{"d", "gamma"}, {"beta", "Sigma"}}));
  EXPECT_FALSE(arcs.count({{"beta", "Sigma"}, {"d", "gamma"}}));
  EXPECT_TRUE(depth_poset(fx.complex, fx.filter).same_as(brute_force_depth_poset(fx.complex, fx.filter.order)));
}

TEST(DepthPoset, SingleFreePair) {
  auto K = build_complex({{"v", 0}, {"e", 1}}, {{"e", {"v"}}});
  auto bf = brute_force_depth_poset(K, testsupport::filter_of(K, {{"v", 0}, {"e", 1}}).order);
  EXPECT_EQ(bf.size(), 1u);
  EXPECT_EQ(bf.arc_count(), 0u);
}

TEST(DepthPoset, BruteForceGuard) {
  auto torus = cubical_torus(3, 2);
  try {
    brute_force_depth_poset(torus, random_torus_filter(torus, 1).order);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
}

TEST(DepthPoset, EqualsBruteForceOnTorus) {
  auto torus = cubical_torus(2, 1);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto f = random_torus_filter(torus, seed);
    EXPECT_TRUE(depth_poset(torus, f).same_as(brute_force_depth_poset(torus, f.order))) << "seed " << seed;
  }
}

TEST(DepthPoset, EqualsComplexLevelOracle) {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    auto inst = testsupport::random_simplicial(rng, 5);
    const auto& K = inst.complex;
    if (K.size() > 18) continue;
    ComplexLevelOracle oracle;
    oracle.visit(K, inst.filter.order, {});
    const auto poset = depth_poset(K, inst.filter);
    EXPECT_EQ(named_arcs(K, poset), oracle.arcs());
    EXPECT_EQ(poset.size(), oracle.before.size());
    ++checked;
  }
  EXPECT_GT(checked, 30);
}

TEST(DepthPoset, NestedAndAcyclicAndClosed) {
  for (auto [n, d] : {std::pair{3, 2}, {4, 2}, {2, 3}}) {
    auto torus = cubical_torus(n, d);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto f = random_torus_filter(torus, seed);
      auto p = depth_poset(torus, f);
      EXPECT_TRUE(transitive_closure(p).same_as(p));
      for (auto [u, v] : p.arcs()) {
        const auto& phi = p.node(u);
        const auto& psi = p.node(v);
        EXPECT_EQ(torus.dim(phi.birth), torus.dim(psi.birth));
        EXPECT_EQ(torus.dim(phi.death), torus.dim(psi.death));
        EXPECT_LT(f.value(psi.birth), f.value(phi.birth));
        EXPECT_LT(f.value(phi.birth), f.value(phi.death));
        EXPECT_LT(f.value(phi.death), f.value(psi.death));
      }
    }
  }
}

TEST(DepthPoset, MinimalNodesAreShallowPairs) {
  for (auto [n, d] : {std::pair{3, 1}, {3, 2}, {4, 2}}) {
    auto torus = cubical_torus(n, d);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto f = random_torus_filter(torus, seed);
      auto p = depth_poset(torus, f);
      Names minimal, shallow;
      for (auto i : minimal_nodes(p)) minimal.insert({torus.cell(p.node(i).birth).id, torus.cell(p.node(i).death).id});
      for (auto [a, b] : shallow_pairs(torus, f.order)) shallow.insert({torus.cell(a).id, torus.cell(b).id});
      EXPECT_EQ(minimal, shallow);
    }
  }
}

TEST(DepthPoset, CancellingAShallowPairRestricts) {
  std::mt19937_64 rng(23);
  auto torus = cubical_torus(3, 2);
  for (int trial = 0; trial < 40; ++trial) {
    auto f = random_torus_filter(torus, rng());
    auto p = depth_poset(torus, f);
    auto shallow = shallow_pairs(torus, f.order);
    auto [a, b] = shallow[std::uniform_int_distribution<std::size_t>(0, shallow.size() - 1)(rng)];
    auto next = cancel_shallow_pair(torus, f.order, a, b);
    auto after = named_arcs(next.complex, depth_poset(next.complex, next.order));
    NamedArcs restricted;
    const std::pair<std::string, std::string> gone{torus.cell(a).id, torus.cell(b).id};
    for (const auto& arc : named_arcs(torus, p))
      if (arc.first != gone && arc.second != gone) restricted.insert(arc);
    EXPECT_EQ(after, restricted);
  }
}
