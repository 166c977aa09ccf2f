#pragma once

#include <string>
#include <utility>

#include "vdw/theory.hpp"
#include "vdw/types.hpp"

namespace vdw {

/// Optional clauses thinning out block-permutation-equivalent models.
/// none: the pure theory. fix_first: pin element 1 to block 1.
/// lex: additionally require blocks to be opened in first-use order,
/// via auxiliary prefix-use variables appended after the primaries.
enum class SymmetryMode { none, fix_first, lex };

SymmetryMode symmetry_from_string(const std::string& s);
std::string to_string(SymmetryMode mode);

/// in_block(i, b) for element i in 1..m, block b in 1..k.
/// Element-major: one element's block variables are contiguous.
inline Var var_of(int i, int b, const Params& p) {
  return static_cast<Var>((i - 1) * p.k + b);
}

/// Inverse of var_of: variable id back to (element, block).
std::pair<int, int> var_unmap(Var v, const Params& p);

/// Plain CNF theory vdW(k,l,m). Clause order: at-most-one per element,
/// at-least-one per element, all-negative progression clauses
/// (ap_enumerate order, blocks inner), then symmetry clauses.
CnfTheory encode_cnf(const Params& p, SymmetryMode mode = SymmetryMode::none);

/// Cardinality-extended theory vdW'(k,l,m): one exactly-one c-atom per
/// element replacing both plain families, then the same progression
/// clauses, then the same symmetry clauses as plain c-clauses.
CTheory encode_ps(const Params& p, SymmetryMode mode = SymmetryMode::none);

}  // namespace vdw
