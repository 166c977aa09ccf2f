#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>

#include "vdw/dpll.hpp"
#include "vdw/rng.hpp"
#include "vdw/theory.hpp"

namespace vdw {

/// A step of local search: make set_true true and/or set_false false
/// (either may be 0 = absent). Block reassignment of an element is the
/// compound move {new block var, old block var}.
struct Move {
  Var set_true = 0;
  Var set_false = 0;

  bool operator==(const Move&) const = default;
};

struct WalkConfig {
  enum class Neighborhood { flip, block_move };

  double noise = 0.3;
  std::int64_t max_flips = 2'000'000;
  int restarts = 20;
  std::uint64_t seed = 1;
  Neighborhood neighborhood = Neighborhood::block_move;
  int jobs = 1;
  std::optional<double> timeout_seconds;
  /// Tried as the initial assignment of the first restart; groups it
  /// leaves without exactly one true member are randomized.
  std::optional<Assignment> warm_start;
  std::ostream* progress = nullptr;  // one "#"-prefixed line per restart
};

struct WalkResult {
  Verdict verdict = Verdict::unknown;
  std::optional<Assignment> model;   // set iff sat, re-verified
  std::uint64_t winning_seed = 0;    // derived seed of the restart that won
  std::int64_t flips = 0;            // flips used by the winning restart
  int restarts_tried = 0;
  std::optional<Assignment> final_state;  // last assignment seen (any verdict)
};

/// Number of currently satisfied c-clauses the move would unsatisfy,
/// recomputed from scratch. The incremental engine agrees with this.
int breakcount(const CTheory& theory, const Assignment& current, const Move& move);

/// Incremental evaluation state: per-clause satisfied-disjunct counts,
/// per-atom true-member counts, and the unsatisfied-clause set, all
/// maintained under moves. Exposed so equivalence with from-scratch
/// recomputation is testable.
class WalkState {
 public:
  WalkState(const CTheory& theory, WalkConfig::Neighborhood neighborhood);

  /// Fresh random assignment: one uniform block per group (block-move)
  /// or uniform bits. A warm-start assignment is taken as-is, except
  /// that groups without exactly one true member get a uniform member.
  void random_init(Rng& rng, const Assignment* warm_start);
  void reset(const Assignment& a);

  const Assignment& assignment() const { return assign_; }
  int unsat_count() const { return static_cast<int>(unsat_.size()); }
  int unsat_clause(int idx) const { return unsat_[static_cast<std::size_t>(idx)]; }

  int breakcount(const Move& move) const;
  void apply(const Move& move);

  /// Candidate moves of one unsatisfied clause, in element order: flip
  /// the literal's variable (as a block reassignment when grouped), or
  /// flip cardinality-atom members toward the violated bound.
  void candidates(int clause, std::vector<Move>* out) const;

 private:
  void flip(Var v, bool to);
  bool atom_in_range(int elem, int count) const;
  void bump_clause(int clause, int delta);
  void add_clause_delta(int clause, int delta) const;

  WalkConfig::Neighborhood neighborhood_;
  int num_vars_;
  int num_clauses_;

  // Flattened clause elements; parallel arrays indexed by element id.
  std::vector<int> clause_begin_;   // clause -> first element id
  std::vector<Lit> elem_lit_;       // 0 when the element is an atom
  std::vector<int> elem_clause_;
  std::vector<int> elem_lo_, elem_hi_;  // INT_MIN/INT_MAX when absent
  std::vector<std::uint8_t> elem_neg_;
  std::vector<int> mem_begin_, mem_end_;  // into members_
  std::vector<Var> members_;

  struct Occurrence {
    int elem;
  };
  std::vector<std::vector<Occurrence>> occ_;  // by variable

  // Exactly-one groups (block-move only).
  std::vector<std::vector<Var>> groups_;
  std::vector<int> group_of_;  // by variable, -1 when ungrouped
  std::vector<Var> group_true_;

  Assignment assign_;
  std::vector<std::uint8_t> elem_sat_;
  std::vector<int> elem_true_;       // atom elements: true member count
  std::vector<int> clause_sat_;      // satisfied element count
  std::vector<int> unsat_;
  std::vector<int> unsat_pos_;       // clause -> index in unsat_, -1 if sat

  // Scratch for breakcount evaluation (logically const).
  mutable std::uint64_t epoch_ = 0;
  mutable std::vector<std::uint64_t> elem_stamp_, clause_stamp_;
  mutable std::vector<int> elem_delta_, clause_delta_;
  mutable std::vector<int> touched_elems_, touched_clauses_;
};

/// Walksat-style search: pick a random unsatisfied clause; with
/// probability noise take a random candidate move, otherwise a
/// minimum-breakcount candidate (ties uniform). Restart r runs on
/// derived seed (seed + r); the first restart may be warm-started.
/// Never returns Unsat; Sat models are verified before returning.
WalkResult solve_local(const CTheory& theory, const WalkConfig& config);

}  // namespace vdw
