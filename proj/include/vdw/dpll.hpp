#pragma once

#include <cstdint>
#include <optional>

#include "vdw/theory.hpp"

namespace vdw {

/// Either limit absent means unlimited.
struct ResourceBudget {
  std::optional<double> seconds;
  std::optional<std::int64_t> max_decisions;
};

enum class Verdict { sat, unsat, unknown };

struct SolveStats {
  std::int64_t decisions = 0;
  std::int64_t propagations = 0;
  int max_depth = 0;
};

struct SolveResult {
  Verdict verdict = Verdict::unknown;
  std::optional<Assignment> model;  // set iff verdict == sat; total
  SolveStats stats;
};

/// Complete DPLL search: two-watched-literal unit propagation,
/// chronological backtracking, branching on the variable occurring most
/// often in the shortest unsatisfied clauses (ties to the lowest index,
/// false tried first). Sat models are re-evaluated against the theory
/// before being returned. Deterministic for equal inputs.
SolveResult solve_complete(const CnfTheory& theory, const ResourceBudget& budget = {});

struct EnumerateResult {
  std::vector<Assignment> models;
  bool truncated = false;  // limit or budget cut the enumeration short
  SolveStats stats;
};

/// All total models in deterministic search order, each found model
/// excluded from the rest of the search by a blocking clause. The
/// budget spans the whole enumeration.
EnumerateResult enumerate_models(const CnfTheory& theory, std::int64_t limit,
                                 const ResourceBudget& budget = {});

}  // namespace vdw
