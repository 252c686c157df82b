#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>

#include "depthposet/complex.hpp"

namespace depthposet {

/// Deterministic child seed of (seed, tags...) through std::seed_seq, whose
/// mixing is fixed by the C++ standard.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

/// std::mt19937_64 seeded from derive_seed(seed, {tag}).
std::mt19937_64 make_generator(std::uint64_t seed, std::uint64_t tag);

/// Random filter on a torus built by cubical_torus: a p-cube gets
/// p + r / 2^53 with r uniform in [1, 2^53), an extra p-cell gets
/// p + 1 - k / 2^53 where k counts earlier extra p-cells, the empty cell gets 0.
/// Colliding cube values are redrawn.
Filter random_torus_filter(const LefschetzComplex& torus, std::uint64_t seed);
/// Builds K(n, d) and draws a filter on it. Throws like cubical_torus.
Filter random_torus_filter(int n, int d, std::uint64_t seed);

/// Two independent filters drawn from derived sub-seeds.
std::pair<Filter, Filter> random_filter_pair(const LefschetzComplex& torus, std::uint64_t seed);
std::pair<Filter, Filter> random_filter_pair(int n, int d, std::uint64_t seed);

}  // namespace depthposet
