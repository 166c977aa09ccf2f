#pragma once

#include <iosfwd>

#include "vdw/theory.hpp"

namespace vdw {

/// DIMACS CNF: "p cnf <vars> <clauses>" then one clause per line,
/// signed literals terminated by 0. Reader skips "c" comment lines and
/// accepts clauses spanning lines.
void write_dimacs(const CnfTheory& theory, std::ostream& out);
CnfTheory read_dimacs(std::istream& in);

/// Extended format: "p ccnf <vars> <clauses>". A clause mixes literal
/// tokens with cardinality groups "[ lo hi n v1 ... vn ]" (bound "-" =
/// absent, "![" opens a negated group) and ends with 0.
void write_xdimacs(const CTheory& theory, std::ostream& out);
CTheory read_xdimacs(std::istream& in);

}  // namespace vdw
