#pragma once

#include <iosfwd>
#include <string>

#include "btiepi/lp.hpp"

namespace btiepi {

/// Writes the model in LP text format (objective, constraint rows, bounds, binary and
/// general sections). Deterministic: rows and columns in index order, full-precision
/// numbers, so identical models produce byte-identical files.
void write_lp(std::ostream& out, const LinearProgram& lp);
std::string write_lp_string(const LinearProgram& lp);

/// Parses the subset of the LP format produced by write_lp: named constraints,
/// Bounds / Binary / General sections, `free` keyword, infinities.
LinearProgram parse_lp(std::istream& in);
LinearProgram parse_lp_string(const std::string& text);

}  // namespace btiepi
