#include "depthposet/complex_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "depthposet/errors.hpp"

namespace depthposet {

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) return true;
  }
  return false;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + what);
}

void expect_header(std::istream& in, const std::string& magic, std::size_t& line_no) {
  std::string line;
  if (!next_content_line(in, line, line_no)) parse_fail(line_no, "missing '" + magic + "' header");
  std::istringstream ss(line);
  std::string a, b, extra;
  ss >> a >> b;
  if (a + " " + b != magic || (ss >> extra)) parse_fail(line_no, "expected '" + magic + "'");
}

}  // namespace

LefschetzComplex read_complex(std::istream& in) {
  std::size_t line_no = 0;
  expect_header(in, "lefschetz v1", line_no);

  std::vector<CellSpec> cells;
  std::map<std::string, std::vector<std::string>> facets;
  std::string line;
  bool in_facets = false;
  while (next_content_line(in, line, line_no)) {
    std::istringstream ss(line);
    std::string keyword;
    ss >> keyword;
    if (keyword == "cell") {
      if (in_facets) parse_fail(line_no, "cell line after facets lines");
      CellSpec spec;
      std::string dim_text, extra;
      if (!(ss >> spec.id >> dim_text) || (ss >> extra)) parse_fail(line_no, "expected 'cell <id> <dim>'");
      try {
        std::size_t used = 0;
        spec.dim = std::stoi(dim_text, &used);
        if (used != dim_text.size()) throw std::invalid_argument(dim_text);
      } catch (const std::exception&) {
        parse_fail(line_no, "bad dimension '" + dim_text + "'");
      }
      cells.push_back(std::move(spec));
    } else if (keyword == "facets") {
      in_facets = true;
      std::string id, colon;
      if (!(ss >> id >> colon) || colon != ":") parse_fail(line_no, "expected 'facets <id> : ...'");
      if (facets.count(id)) throw Error(ErrorCode::DuplicateId, "facets of '" + id + "' listed twice");
      auto& list = facets[id];
      std::string fid;
      while (ss >> fid) list.push_back(fid);
    } else {
      parse_fail(line_no, "unknown keyword '" + keyword + "'");
    }
  }
  return build_complex(cells, facets);
}

void write_complex(std::ostream& out, const LefschetzComplex& complex) {
  out << "lefschetz v1\n";
  for (const auto& c : complex.cells()) out << "cell " << c.id << ' ' << c.dim << '\n';
  for (CellIndex c = 0; c < complex.size(); ++c) {
    if (complex.facets(c).empty()) continue;
    out << "facets " << complex.cell(c).id << " :";
    for (CellIndex f : complex.facets(c)) out << ' ' << complex.cell(f).id;
    out << '\n';
  }
}

Filter read_filter(std::istream& in, const LefschetzComplex& complex) {
  std::size_t line_no = 0;
  expect_header(in, "filter v1", line_no);
  std::map<std::string, Rational> values;
  std::string line;
  while (next_content_line(in, line, line_no)) {
    std::istringstream ss(line);
    std::string id, value, extra;
    if (!(ss >> id >> value) || (ss >> extra)) parse_fail(line_no, "expected '<id> <num>/<den>'");
    if (!values.emplace(id, parse_rational(value)).second)
      throw Error(ErrorCode::DuplicateId, "value for '" + id + "' given twice");
  }
  return make_filter(complex, values);
}

void write_filter(std::ostream& out, const LefschetzComplex& complex, const Filter& filter) {
  out << "filter v1\n";
  for (CellIndex c = 0; c < complex.size(); ++c)
    out << complex.cell(c).id << ' ' << format_rational(filter.value(c)) << '\n';
}

LefschetzComplex load_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  return read_complex(in);
}

Filter load_filter(const std::string& path, const LefschetzComplex& complex) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  return read_filter(in, complex);
}

void save_complex(const std::string& path, const LefschetzComplex& complex) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  write_complex(out, complex);
}

void save_filter(const std::string& path, const LefschetzComplex& complex, const Filter& filter) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  write_filter(out, complex, filter);
}

}  // namespace depthposet
