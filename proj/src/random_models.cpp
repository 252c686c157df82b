#include "depthposet/random_models.hpp"

#include <set>
#include <vector>

namespace depthposet {

namespace {

constexpr unsigned kBits = 53;
constexpr std::uint64_t kTagSingle = 0;
constexpr std::uint64_t kTagFirst = 1;
constexpr std::uint64_t kTagSecond = 2;

bool is_extra(const Cell& c) { return c.id.rfind("t_", 0) == 0; }

Filter draw(const LefschetzComplex& torus, std::mt19937_64& gen) {
  const std::size_t n = torus.size();
  std::vector<Rational> values(n);
  std::set<Rational> used;
  std::vector<std::int64_t> extras_seen(torus.max_dim() + 2, 0);
  for (CellIndex c = 0; c < n; ++c) {
    const Cell& cell = torus.cell(c);
    if (cell.dim < 0) {
      values[c] = 0;
    } else if (is_extra(cell)) {
      values[c] = Rational(cell.dim + 1) - dyadic(extras_seen[cell.dim]++, kBits);
    } else {
      continue;
    }
    used.insert(values[c]);
  }
  for (CellIndex c = 0; c < n; ++c) {
    const Cell& cell = torus.cell(c);
    if (cell.dim < 0 || is_extra(cell)) continue;
    for (;;) {
      const auto r = static_cast<std::int64_t>(gen() >> (64 - kBits));
      if (r == 0) continue;
      Rational v = Rational(cell.dim) + dyadic(r, kBits);
      if (used.insert(v).second) {
        values[c] = std::move(v);
        break;
      }
    }
  }
  return make_filter(torus, std::move(values));
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  for (auto t : tags) {
    words.push_back(static_cast<std::uint32_t>(t));
    words.push_back(static_cast<std::uint32_t>(t >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

std::mt19937_64 make_generator(std::uint64_t seed, std::uint64_t tag) {
  return std::mt19937_64(derive_seed(seed, {tag}));
}

Filter random_torus_filter(const LefschetzComplex& torus, std::uint64_t seed) {
  auto gen = make_generator(seed, kTagSingle);
  return draw(torus, gen);
}

Filter random_torus_filter(int n, int d, std::uint64_t seed) {
  return random_torus_filter(cubical_torus(n, d), seed);
}

std::pair<Filter, Filter> random_filter_pair(const LefschetzComplex& torus, std::uint64_t seed) {
  auto g0 = make_generator(seed, kTagFirst);
  auto g1 = make_generator(seed, kTagSecond);
  Filter f0 = draw(torus, g0);
  Filter f1 = draw(torus, g1);
  return {std::move(f0), std::move(f1)};
}

std::pair<Filter, Filter> random_filter_pair(int n, int d, std::uint64_t seed) {
  return random_filter_pair(cubical_torus(n, d), seed);
}

}  // namespace depthposet
