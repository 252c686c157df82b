#pragma once

#include <iosfwd>
#include <string>

#include "depthposet/complex.hpp"

namespace depthposet {

// Text formats.
//
//   lefschetz v1
//   cell <id> <dim>
//   ...
//   facets <id> : <id> <id> ...
//
//   filter v1
//   <id> <numerator>/<denominator>
//
// Blank lines are ignored. Cells are written in storage order; a cell without
// facets gets no facets line.

LefschetzComplex read_complex(std::istream& in);
void write_complex(std::ostream& out, const LefschetzComplex& complex);

Filter read_filter(std::istream& in, const LefschetzComplex& complex);
void write_filter(std::ostream& out, const LefschetzComplex& complex, const Filter& filter);

LefschetzComplex load_complex(const std::string& path);
Filter load_filter(const std::string& path, const LefschetzComplex& complex);
void save_complex(const std::string& path, const LefschetzComplex& complex);
void save_filter(const std::string& path, const LefschetzComplex& complex, const Filter& filter);

}  // namespace depthposet
