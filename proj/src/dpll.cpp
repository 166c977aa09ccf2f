#include "vdw/dpll.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace vdw {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t lit_index(Lit l) {
  return 2 * static_cast<std::size_t>(var_of_lit(l) - 1) + (l < 0 ? 1 : 0);
}

/// Backtracking search state. Lives for one solve() call; enumeration
/// restarts it with the blocking clauses appended.
class Solver {
 public:
  Solver(const CnfTheory& theory, const std::vector<Clause>& extra)
      : num_vars_(theory.num_vars) {
    clauses_.reserve(theory.clauses.size() + extra.size());
    for (const Clause& c : theory.clauses) clauses_.push_back(c);
    for (const Clause& c : extra) clauses_.push_back(c);
    values_.assign(static_cast<std::size_t>(num_vars_) + 1, 0);
    watches_.assign(2 * static_cast<std::size_t>(num_vars_), {});
    trail_.reserve(static_cast<std::size_t>(num_vars_));
  }

  /// total_models: keep deciding free variables after all clauses are
  /// satisfied, so every Sat leaf is a total assignment and backtracking
  /// enumerates all of them.
  SolveResult solve(const ResourceBudget& budget, bool total_models, SolveStats carry) {
    SolveResult result;
    result.stats = carry;
    std::optional<Clock::time_point> deadline;
    if (budget.seconds) {
      deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(*budget.seconds));
    }

    for (const Clause& c : clauses_) {
      if (c.empty()) {
        result.verdict = Verdict::unsat;
        return result;
      }
    }
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
      const Clause& c = clauses_[ci];
      if (c.size() == 1) continue;  // enqueued below, never watched
      watches_[lit_index(c[0])].push_back(static_cast<int>(ci));
      watches_[lit_index(c[1])].push_back(static_cast<int>(ci));
    }
    for (const Clause& c : clauses_) {
      if (c.size() != 1) continue;
      if (!enqueue(c[0], result.stats)) {
        result.verdict = Verdict::unsat;
        return result;
      }
    }
    if (!propagate(result.stats)) {
      result.verdict = Verdict::unsat;
      return result;
    }

    for (;;) {
      Var branch = pick_branch_variable(total_models);
      if (branch == 0) {
        finish_sat(result);
        return result;
      }

      ++result.stats.decisions;
      if (budget.max_decisions && result.stats.decisions > *budget.max_decisions) {
        result.verdict = Verdict::unknown;
        return result;
      }
      if (deadline && (result.stats.decisions & 63) == 0 && Clock::now() > *deadline) {
        result.verdict = Verdict::unknown;
        return result;
      }

      levels_.push_back({trail_.size(), -branch, false});
      result.stats.max_depth =
          std::max(result.stats.max_depth, static_cast<int>(levels_.size()));
      enqueue(-branch, result.stats);

      while (!propagate(result.stats)) {
        while (!levels_.empty() && levels_.back().tried_second) pop_level();
        if (levels_.empty()) {
          result.verdict = Verdict::unsat;
          return result;
        }
        Lit flipped = -levels_.back().decision;
        unwind(levels_.back().trail_mark);
        levels_.back().decision = flipped;
        levels_.back().tried_second = true;
        enqueue(flipped, result.stats);
      }
    }
  }

 private:
  struct Level {
    std::size_t trail_mark;
    Lit decision;
    bool tried_second;
  };

  int value_of(Lit l) const {  // +1 true, -1 false, 0 unassigned
    int v = values_[static_cast<std::size_t>(var_of_lit(l))];
    return l < 0 ? -v : v;
  }

  bool enqueue(Lit l, SolveStats& stats) {
    int v = value_of(l);
    if (v > 0) return true;
    if (v < 0) return false;
    values_[static_cast<std::size_t>(var_of_lit(l))] = l > 0 ? 1 : -1;
    trail_.push_back(l);
    ++stats.propagations;
    return true;
  }

  /// Two-watched-literal fixpoint; false on conflict.
  bool propagate(SolveStats& stats) {
    while (qhead_ < trail_.size()) {
      Lit assigned = trail_[qhead_++];
      std::vector<int>& watch = watches_[lit_index(-assigned)];
      std::size_t keep = 0;
      for (std::size_t wi = 0; wi < watch.size(); ++wi) {
        int ci = watch[wi];
        Clause& c = clauses_[static_cast<std::size_t>(ci)];
        if (c[0] == -assigned) std::swap(c[0], c[1]);
        if (value_of(c[0]) > 0) {
          watch[keep++] = ci;
          continue;
        }
        bool moved = false;
        for (std::size_t j = 2; j < c.size(); ++j) {
          if (value_of(c[j]) >= 0) {
            std::swap(c[1], c[j]);
            watches_[lit_index(c[1])].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        watch[keep++] = ci;
        if (!enqueue(c[0], stats)) {
          for (++wi; wi < watch.size(); ++wi) watch[keep++] = watch[wi];
          watch.resize(keep);
          return false;
        }
      }
      watch.resize(keep);
    }
    return true;
  }

  void unwind(std::size_t mark) {
    while (trail_.size() > mark) {
      values_[static_cast<std::size_t>(var_of_lit(trail_.back()))] = 0;
      trail_.pop_back();
    }
    qhead_ = trail_.size();
  }

  void pop_level() {
    unwind(levels_.back().trail_mark);
    levels_.pop_back();
  }

  /// Most occurrences in the shortest unsatisfied clauses; ties go to
  /// the lowest variable index. 0 when nothing is left to branch on.
  Var pick_branch_variable(bool total_models) {
    std::size_t min_width = SIZE_MAX;
    for (const Clause& c : clauses_) {
      std::size_t width = 0;
      bool sat = false;
      for (Lit l : c) {
        int v = value_of(l);
        if (v > 0) {
          sat = true;
          break;
        }
        if (v == 0) ++width;
      }
      if (sat) continue;
      min_width = std::min(min_width, width);
    }
    if (min_width == SIZE_MAX) {
      if (!total_models) return 0;
      for (Var v = 1; v <= num_vars_; ++v) {
        if (values_[static_cast<std::size_t>(v)] == 0) return v;
      }
      return 0;
    }

    ++epoch_;
    if (count_stamp_.size() != static_cast<std::size_t>(num_vars_) + 1) {
      count_stamp_.assign(static_cast<std::size_t>(num_vars_) + 1, 0);
      counts_.assign(static_cast<std::size_t>(num_vars_) + 1, 0);
    }
    Var best = 0;
    int best_count = -1;
    for (const Clause& c : clauses_) {
      std::size_t width = 0;
      bool sat = false;
      for (Lit l : c) {
        int v = value_of(l);
        if (v > 0) {
          sat = true;
          break;
        }
        if (v == 0) ++width;
      }
      if (sat || width != min_width) continue;
      for (Lit l : c) {
        if (value_of(l) != 0) continue;
        Var var = var_of_lit(l);
        if (count_stamp_[static_cast<std::size_t>(var)] != epoch_) {
          count_stamp_[static_cast<std::size_t>(var)] = epoch_;
          counts_[static_cast<std::size_t>(var)] = 0;
        }
        int count = ++counts_[static_cast<std::size_t>(var)];
        if (count > best_count || (count == best_count && var < best)) {
          best_count = count;
          best = var;
        }
      }
    }
    return best;
  }

  void finish_sat(SolveResult& result) {
    Assignment model(num_vars_);
    for (Var v = 1; v <= num_vars_; ++v) {
      model.set(v, values_[static_cast<std::size_t>(v)] > 0);
    }
    for (const Clause& c : clauses_) {
      bool sat = false;
      for (Lit l : c) {
        if (model.lit_true(l)) {
          sat = true;
          break;
        }
      }
      if (!sat) throw std::logic_error("search state inconsistent with theory");
    }
    result.verdict = Verdict::sat;
    result.model = std::move(model);
  }

  int num_vars_;
  std::vector<Clause> clauses_;
  std::vector<std::vector<int>> watches_;
  std::vector<std::int8_t> values_;
  std::vector<Lit> trail_;
  std::size_t qhead_ = 0;
  std::vector<Level> levels_;
  std::vector<std::uint64_t> count_stamp_;
  std::vector<int> counts_;
  std::uint64_t epoch_ = 0;
};

}  // namespace

SolveResult solve_complete(const CnfTheory& theory, const ResourceBudget& budget) {
  Solver solver(theory, {});
  return solver.solve(budget, false, {});
}

EnumerateResult enumerate_models(const CnfTheory& theory, std::int64_t limit,
                                 const ResourceBudget& budget) {
  EnumerateResult out;
  std::vector<Clause> blocking;
  const auto start = Clock::now();
  SolveStats used;
  while (static_cast<std::int64_t>(out.models.size()) < limit) {
    ResourceBudget remaining;
    if (budget.seconds) {
      double left = *budget.seconds -
                    std::chrono::duration<double>(Clock::now() - start).count();
      if (left <= 0) {
        out.truncated = true;
        break;
      }
      remaining.seconds = left;
    }
    if (budget.max_decisions) {
      std::int64_t left = *budget.max_decisions - used.decisions;
      if (left <= 0) {
        out.truncated = true;
        break;
      }
      remaining.max_decisions = left;
    }
    Solver solver(theory, blocking);
    SolveResult r = solver.solve(remaining, true, {});
    used.decisions += r.stats.decisions;
    used.propagations += r.stats.propagations;
    used.max_depth = std::max(used.max_depth, r.stats.max_depth);
    if (r.verdict == Verdict::unknown) {
      out.truncated = true;
      break;
    }
    if (r.verdict == Verdict::unsat) break;
    const Assignment& model = *r.model;
    Clause block;
    block.reserve(static_cast<std::size_t>(theory.num_vars));
    for (Var v = 1; v <= theory.num_vars; ++v) {
      block.push_back(model.value(v) ? -v : v);
    }
    blocking.push_back(std::move(block));
    out.models.push_back(model);
  }
  if (static_cast<std::int64_t>(out.models.size()) == limit && !out.truncated) {
    out.truncated = true;  // stopped by the limit, more may exist
  }
  out.stats = used;
  return out;
}

}  // namespace vdw
