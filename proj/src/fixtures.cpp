#include "depthposet/fixtures.hpp"

#include <map>
#include <string>
#include <vector>

namespace depthposet {

FigureFixture figure_fixture() {
  const std::vector<CellSpec> cells = {
      {"A", 0}, {"B", 0}, {"C", 0}, {"D", 0}, {"a", 1}, {"b", 1}, {"c", 1},
      {"d", 1}, {"e", 1}, {"alpha", 2}, {"beta", 2}, {"gamma", 2}, {"Sigma", 3},
  };
  // a square ABCD split by the diagonal d = AC; alpha and beta both fill ABC
  const std::map<std::string, std::vector<std::string>> facets = {
      {"a", {"A", "B"}},          {"b", {"A", "D"}},          {"c", {"C", "D"}},
      {"d", {"A", "C"}},          {"e", {"B", "C"}},          {"alpha", {"a", "d", "e"}},
      {"beta", {"a", "d", "e"}},  {"gamma", {"b", "c", "d"}}, {"Sigma", {"alpha", "beta"}},
  };
  FigureFixture out{build_complex(cells, facets), {}};
  std::map<std::string, Rational> values;
  for (std::size_t i = 0; i < cells.size(); ++i) values[cells[i].id] = Rational(static_cast<long>(i + 1));
  out.filter = make_filter(out.complex, values);
  return out;
}

}  // namespace depthposet
