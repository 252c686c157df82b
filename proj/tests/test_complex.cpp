#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "depthposet/cancellation_matrix.hpp"
#include "depthposet/complex.hpp"
#include "depthposet/complex_io.hpp"
#include "depthposet/errors.hpp"
#include "depthposet/fixtures.hpp"
#include "depthposet/random_models.hpp"
#include "depthposet/reduction.hpp"
#include "support.hpp"

using namespace depthposet;
using testsupport::filter_of;

namespace {

LefschetzComplex circle() {
  return build_complex({{"u", 0}, {"v", 0}, {"e1", 1}, {"e2", 1}}, {{"e1", {"u", "v"}}, {"e2", {"u", "v"}}});
}

LefschetzComplex free_pair() { return build_complex({{"v", 0}, {"e", 1}}, {{"e", {"v"}}}); }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::MismatchFound;
}

// mod-2 double boundary of every cell, counted directly from facet lists
bool boundary_squares_to_zero(const LefschetzComplex& K) {
  for (CellIndex c = 0; c < K.size(); ++c) {
    std::map<CellIndex, int> count;
    for (CellIndex f : K.facets(c))
      for (CellIndex g : K.facets(f)) ++count[g];
    for (auto& [g, k] : count)
      if (k % 2) return false;
  }
  return true;
}

}  // namespace

TEST(BuildComplex, CircleIsValid) {
  auto K = circle();
  EXPECT_EQ(K.size(), 4u);
  EXPECT_TRUE(K.is_facet(K.index_of("u"), K.index_of("e1")));
  EXPECT_TRUE(boundary_squares_to_zero(K));
}

TEST(BuildComplex, SandwichedCellIsValid) {
  auto fx = figure_fixture();
  const auto& K = fx.complex;
  auto sigma = K.index_of("Sigma");
  EXPECT_EQ(K.facets(sigma).size(), 2u);
  EXPECT_TRUE(boundary_squares_to_zero(K));
}

TEST(BuildComplex, RejectsOddDoubleBoundary) {
  EXPECT_EQ(code_of([] {
              build_complex({{"u", 0}, {"v", 0}, {"w", 0}, {"e1", 1}, {"e2", 1}, {"t", 2}},
                            {{"e1", {"u", "v"}}, {"e2", {"v", "w"}}, {"t", {"e1", "e2"}}});
            }),
            ErrorCode::BoundaryNotSquaredZero);
}

TEST(BuildComplex, RejectsDuplicatesAndWrongDimensions) {
  EXPECT_EQ(code_of([] { build_complex({{"u", 0}, {"u", 0}}, {}); }), ErrorCode::DuplicateId);
  EXPECT_EQ(code_of([] { build_complex({{"u", 0}, {"t", 2}}, {{"t", {"u"}}}); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { build_complex({{"u", 0}, {"e", 1}}, {{"e", {"w"}}}); }), ErrorCode::UnknownId);
}

TEST(MakeFilter, FreePairAndCircle) {
  auto P = free_pair();
  auto f = filter_of(P, {{"v", 0}, {"e", 1}});
  EXPECT_EQ(f.order.sequence, (std::vector<CellIndex>{P.index_of("v"), P.index_of("e")}));

  auto K = circle();
  auto g = filter_of(K, {{"u", 1}, {"v", 0}, {"e1", 2}, {"e2", 3}});
  std::vector<std::string> ids;
  for (auto c : g.order.sequence) ids.push_back(K.cell(c).id);
  EXPECT_EQ(ids, (std::vector<std::string>{"v", "u", "e1", "e2"}));
}

TEST(MakeFilter, RejectsNonMonotoneAndNonInjective) {
  auto P = free_pair();
  EXPECT_EQ(code_of([&] { filter_of(P, {{"v", 2}, {"e", 1}}); }), ErrorCode::NotMonotone);
  auto K = circle();
  EXPECT_EQ(code_of([&] { filter_of(K, {{"u", 0}, {"v", 0}, {"e1", 2}, {"e2", 3}}); }), ErrorCode::NotInjective);
  EXPECT_EQ(code_of([&] { filter_of(K, {{"u", 0}, {"v", 1}, {"e1", 2}}); }), ErrorCode::MissingValue);
}

TEST(ShallowPairs, Examples) {
  auto P = free_pair();
  auto fp = filter_of(P, {{"v", 0}, {"e", 1}});
  EXPECT_TRUE(is_shallow_pair(P, fp.order, P.index_of("v"), P.index_of("e")));

  auto K = circle();
  auto f = filter_of(K, {{"u", 0}, {"v", 1}, {"e1", 2}, {"e2", 3}});
  const auto v = K.index_of("v"), e1 = K.index_of("e1"), e2 = K.index_of("e2");
  EXPECT_TRUE(is_shallow_pair(K, f.order, v, e1));
  EXPECT_FALSE(is_shallow_pair(K, f.order, v, e2));
  EXPECT_EQ(shallow_pairs(K, f.order), (std::vector<std::pair<CellIndex, CellIndex>>{{v, e1}}));
  EXPECT_EQ(code_of([&] { is_shallow_pair(K, f.order, e1, e2); }), ErrorCode::NotIncident);

  auto fx = figure_fixture();
  EXPECT_FALSE(is_shallow_pair(fx.complex, fx.filter.order, fx.complex.index_of("d"), fx.complex.index_of("gamma")));

  auto empty = build_complex({{"u", 0}, {"v", 0}}, {});
  EXPECT_TRUE(shallow_pairs(empty, filter_of(empty, {{"u", 0}, {"v", 1}}).order).empty());
}

TEST(Cancellation, Examples) {
  auto P = free_pair();
  auto fp = filter_of(P, {{"v", 0}, {"e", 1}});
  auto gone = cancel_shallow_pair(P, fp.order, P.index_of("v"), P.index_of("e"));
  EXPECT_EQ(gone.complex.size(), 0u);

  auto K = circle();
  auto f = filter_of(K, {{"u", 0}, {"v", 1}, {"e1", 2}, {"e2", 3}});
  auto c = cancel_shallow_pair(K, f.order, K.index_of("v"), K.index_of("e1"));
  ASSERT_EQ(c.complex.size(), 2u);
  EXPECT_TRUE(c.complex.facets(c.complex.index_of("e2")).empty());
  EXPECT_EQ(code_of([&] { cancel_shallow_pair(K, f.order, K.index_of("v"), K.index_of("e2")); }),
            ErrorCode::NotShallow);
}

TEST(Cancellation, FixtureDoubleAttachmentVanishes) {
  auto fx = figure_fixture();
  const auto& K = fx.complex;
  auto c = cancel_shallow_pair(K, fx.filter.order, K.index_of("e"), K.index_of("alpha"));
  EXPECT_FALSE(c.complex.is_facet(c.complex.index_of("d"), c.complex.index_of("beta")));
  EXPECT_FALSE(c.complex.find("e").has_value());
  EXPECT_FALSE(c.complex.find("alpha").has_value());
}

TEST(Cancellation, RandomComplexesKeepInvariants) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = testsupport::random_simplicial(rng);
    LefschetzComplex K = inst.complex;
    CellOrder order = inst.filter.order;
    auto pairs = testsupport::pair_names(K, reduce(K, order).pairs());
    while (K.incidence_count() > 0) {
      auto shallow = shallow_pairs(K, order);
      ASSERT_FALSE(shallow.empty());
      auto pick = shallow[std::uniform_int_distribution<std::size_t>(0, shallow.size() - 1)(rng)];
      const std::pair<std::string, std::string> named{K.cell(pick.first).id, K.cell(pick.second).id};
      auto next = cancel_shallow_pair(K, order, pick.first, pick.second);
      K = std::move(next.complex);
      order = std::move(next.order);
      EXPECT_TRUE(boundary_squares_to_zero(K));
      check_linear_extension(K, order);
      // the remaining pairs are the old ones minus the cancelled pair
      ASSERT_EQ(pairs.erase(named), 1u);
      EXPECT_EQ(testsupport::pair_names(K, reduce(K, order).pairs()), pairs);
    }
    EXPECT_TRUE(pairs.empty());
  }
}

TEST(Cancellation, OrderOfPreparatoryCancellationsDoesNotMatter) {
  // cancel every pair with pivot below a row or left of a column, once taking
  // the first available shallow pair and once the last
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    auto torus = cubical_torus(3, 2);
    auto f = random_torus_filter(torus, rng());
    auto delta = boundary_matrix(torus, f.order);
    auto state = reduce(torus, f.order);
    const std::size_t n = torus.size();
    const std::size_t row = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    const std::size_t col = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    std::set<CancellationMatrix::PositionPair> todo;
    for (const auto& p : state.pairs()) {
      auto r = state.pos(p.birth), c = state.pos(p.death);
      if (r > row || c < col) todo.insert({r, c});
    }
    auto run = [&](bool first) {
      CancellationMatrix m(delta.matrix);
      auto left = todo;
      while (!left.empty()) {
        std::vector<CancellationMatrix::PositionPair> ready;
        for (const auto& p : left)
          if (m.is_shallow(p.first, p.second)) ready.push_back(p);
        if (ready.empty()) return std::optional<BitMatrix>{};
        auto p = first ? ready.front() : ready.back();
        m.cancel(p.first, p.second);
        left.erase(p);
      }
      return std::optional<BitMatrix>{m.matrix()};
    };
    auto a = run(true), b = run(false);
    ASSERT_TRUE(a && b);
    EXPECT_EQ(*a, *b);
  }
}

TEST(CubicalTorus, CellCounts) {
  EXPECT_EQ(cubical_torus(2, 1).size(), 6u);
  EXPECT_EQ(cubical_torus(4, 2).size(), 68u);
  EXPECT_EQ(cubical_torus(3, 3).size(), 27u * 8u + 8u);
  EXPECT_EQ(code_of([] { cubical_torus(1, 1); }), ErrorCode::NTooSmall);
  EXPECT_EQ(code_of([] { cubical_torus(3, 4); }), ErrorCode::UnsupportedDimension);
}

TEST(CubicalTorus, BoundarySquaresToZero) {
  for (int d = 1; d <= 3; ++d)
    for (int n = 2; n <= 4; ++n) EXPECT_TRUE(boundary_squares_to_zero(cubical_torus(n, d))) << n << " " << d;
}

TEST(CubicalTorus, IdsAreCanonical) {
  auto K = cubical_torus(3, 2);
  EXPECT_TRUE(K.find(torus_cube_id({1, 2}, 0b01)).has_value());
  EXPECT_TRUE(K.find(torus_extra_id(0)).has_value());
  EXPECT_EQ(K.dim(K.index_of(torus_extra_id(0))), -1);
  EXPECT_EQ(K.dim(K.index_of(torus_extra_id(0b11))), 3);
}

TEST(ComplexIo, RoundTrip) {
  auto fx = figure_fixture();
  std::stringstream cs, fs;
  write_complex(cs, fx.complex);
  auto K = read_complex(cs);
  write_filter(fs, fx.complex, fx.filter);
  auto f = read_filter(fs, K);
  ASSERT_EQ(K.size(), fx.complex.size());
  for (CellIndex c = 0; c < K.size(); ++c) {
    EXPECT_EQ(K.cell(c).id, fx.complex.cell(c).id);
    EXPECT_EQ(f.value(c), fx.filter.value(c));
  }
}

TEST(ComplexIo, RejectsMalformedInput) {
  std::stringstream bad("lefschetz v2\n");
  EXPECT_EQ(code_of([&] { read_complex(bad); }), ErrorCode::ParseError);
  std::stringstream cs("lefschetz v1\ncell u 0\ncell e 1\nfacets e : u\n");
  auto K = read_complex(cs);
  std::stringstream fs("filter v1\nu 1/2\ne x/3\n");
  EXPECT_EQ(code_of([&] { read_filter(fs, K); }), ErrorCode::ParseError);
}
