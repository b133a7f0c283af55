#pragma once

#include <iosfwd>
#include <string>

#include "schurlab/regularity.hpp"
#include "schurlab/sets.hpp"

namespace schurlab {

/// One integer per line; blank lines and '#' comments are skipped. The result is sorted
/// and must not repeat. Errors are ParseError with the offending line.
IntSet parse_set(std::istream& in);
IntSet read_set_file(const std::string& path);
void write_set(std::ostream& out, const IntSet& set);

/// Header "k=<int> N0=<int>", then "p c" for every prime p <= N0 in increasing order.
Colouring parse_colouring(std::istream& in);
Colouring read_colouring_file(const std::string& path);
void write_colouring(std::ostream& out, const Colouring& c);

}  // namespace schurlab
