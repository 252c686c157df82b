#pragma once

#include "depthposet/complex.hpp"

namespace depthposet {

/// Small complex with vertices A-D, edges a-e, triangles alpha, beta, gamma
/// and a 3-cell Sigma sandwiched between alpha and beta. Cell ids are the
/// ASCII names "A".."D", "a".."e", "alpha", "beta", "gamma", "Sigma".
struct FigureFixture {
  LefschetzComplex complex;
  Filter filter;
};

FigureFixture figure_fixture();

}  // namespace depthposet
