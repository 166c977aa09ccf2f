#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "vdw/types.hpp"

namespace vdw {

/// Variables are positive integers; a literal is a signed variable,
/// negative meaning negated (the DIMACS convention).
using Var = std::int32_t;
using Lit = std::int32_t;

constexpr Var var_of_lit(Lit l) { return l < 0 ? -l : l; }
constexpr bool lit_negated(Lit l) { return l < 0; }

using Clause = std::vector<Lit>;

struct CnfTheory {
  int num_vars = 0;
  std::vector<Clause> clauses;

  bool operator==(const CnfTheory&) const = default;
};

/// Cardinality atom lo{v1,...,vn}hi: satisfied when the number of true
/// member variables lies in [lo, hi]; an absent bound is unconstrained.
/// `negated` records negation at the clause position.
struct CAtom {
  std::optional<int> lower;
  std::optional<int> upper;
  std::vector<Var> vars;
  bool negated = false;

  bool operator==(const CAtom&) const = default;
};

/// One disjunct of a c-clause: a plain literal or a cardinality atom.
using CElem = std::variant<Lit, CAtom>;

struct CClause {
  std::vector<CElem> elems;

  bool operator==(const CClause&) const = default;
};

struct CTheory {
  int num_vars = 0;
  std::vector<CClause> cclauses;

  bool operator==(const CTheory&) const = default;
};

/// Total truth valuation over variables 1..num_vars.
struct Assignment {
  std::vector<std::uint8_t> values;

  Assignment() = default;
  explicit Assignment(int num_vars) : values(static_cast<std::size_t>(num_vars), 0) {}

  int num_vars() const { return static_cast<int>(values.size()); }
  bool value(Var v) const { return values[static_cast<std::size_t>(v) - 1] != 0; }
  void set(Var v, bool t) { values[static_cast<std::size_t>(v) - 1] = t ? 1 : 0; }
  bool lit_true(Lit l) const { return l > 0 ? value(l) : !value(-l); }

  bool operator==(const Assignment&) const = default;
};

bool satisfies(const CnfTheory& theory, const Assignment& a);
bool satisfies(const CTheory& theory, const Assignment& a);
bool elem_satisfied(const CElem& e, const Assignment& a);

/// Plain clauses viewed as c-clauses of unit literals.
CTheory to_ctheory(const CnfTheory& cnf);

}  // namespace vdw
