#include "vdw/walk.hpp"

#include <atomic>
#include <chrono>
#include <climits>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace vdw {

namespace {

using Clock = std::chrono::steady_clock;

bool cclause_satisfied(const CClause& c, const Assignment& a) {
  for (const CElem& e : c.elems) {
    if (elem_satisfied(e, a)) return true;
  }
  return false;
}

}  // namespace

int breakcount(const CTheory& theory, const Assignment& current, const Move& move) {
  if (move.set_true != 0 && current.value(move.set_true)) {
    throw std::invalid_argument("move sets an already-true variable");
  }
  if (move.set_false != 0 && !current.value(move.set_false)) {
    throw std::invalid_argument("move clears an already-false variable");
  }
  Assignment after = current;
  if (move.set_true != 0) after.set(move.set_true, true);
  if (move.set_false != 0) after.set(move.set_false, false);
  int broken = 0;
  for (const CClause& c : theory.cclauses) {
    if (cclause_satisfied(c, current) && !cclause_satisfied(c, after)) ++broken;
  }
  return broken;
}

WalkState::WalkState(const CTheory& theory, WalkConfig::Neighborhood neighborhood)
    : neighborhood_(neighborhood),
      num_vars_(theory.num_vars),
      num_clauses_(static_cast<int>(theory.cclauses.size())) {
  occ_.resize(static_cast<std::size_t>(num_vars_) + 1);
  group_of_.assign(static_cast<std::size_t>(num_vars_) + 1, -1);

  clause_begin_.reserve(static_cast<std::size_t>(num_clauses_) + 1);
  for (int ci = 0; ci < num_clauses_; ++ci) {
    clause_begin_.push_back(static_cast<int>(elem_lit_.size()));
    const CClause& c = theory.cclauses[static_cast<std::size_t>(ci)];
    for (const CElem& e : c.elems) {
      int id = static_cast<int>(elem_lit_.size());
      elem_clause_.push_back(ci);
      if (const Lit* l = std::get_if<Lit>(&e)) {
        elem_lit_.push_back(*l);
        elem_lo_.push_back(0);
        elem_hi_.push_back(0);
        elem_neg_.push_back(0);
        mem_begin_.push_back(0);
        mem_end_.push_back(0);
        occ_[static_cast<std::size_t>(var_of_lit(*l))].push_back({id});
      } else {
        const CAtom& atom = std::get<CAtom>(e);
        elem_lit_.push_back(0);
        elem_lo_.push_back(atom.lower ? *atom.lower : INT_MIN);
        elem_hi_.push_back(atom.upper ? *atom.upper : INT_MAX);
        elem_neg_.push_back(atom.negated ? 1 : 0);
        mem_begin_.push_back(static_cast<int>(members_.size()));
        for (Var v : atom.vars) {
          members_.push_back(v);
          occ_[static_cast<std::size_t>(v)].push_back({id});
        }
        mem_end_.push_back(static_cast<int>(members_.size()));
      }
    }
  }
  clause_begin_.push_back(static_cast<int>(elem_lit_.size()));

  if (neighborhood_ == WalkConfig::Neighborhood::block_move) {
    for (const CClause& c : theory.cclauses) {
      if (c.elems.size() != 1) continue;
      const CAtom* atom = std::get_if<CAtom>(&c.elems[0]);
      if (!atom || atom->negated) continue;
      if (!atom->lower || !atom->upper || *atom->lower != 1 || *atom->upper != 1) continue;
      bool fresh = true;
      for (Var v : atom->vars) {
        if (group_of_[static_cast<std::size_t>(v)] != -1) fresh = false;
      }
      if (!fresh) continue;
      int g = static_cast<int>(groups_.size());
      for (Var v : atom->vars) group_of_[static_cast<std::size_t>(v)] = g;
      groups_.push_back(atom->vars);
    }
  }
  group_true_.assign(groups_.size(), 0);

  const std::size_t n_elems = elem_lit_.size();
  elem_sat_.assign(n_elems, 0);
  elem_true_.assign(n_elems, 0);
  clause_sat_.assign(static_cast<std::size_t>(num_clauses_), 0);
  unsat_pos_.assign(static_cast<std::size_t>(num_clauses_), -1);
  elem_stamp_.assign(n_elems, 0);
  elem_delta_.assign(n_elems, 0);
  clause_stamp_.assign(static_cast<std::size_t>(num_clauses_), 0);
  clause_delta_.assign(static_cast<std::size_t>(num_clauses_), 0);
}

void WalkState::random_init(Rng& rng, const Assignment* warm_start) {
  Assignment a(num_vars_);
  const bool warm = warm_start != nullptr && warm_start->num_vars() == num_vars_;
  if (warm) a = *warm_start;

  if (neighborhood_ == WalkConfig::Neighborhood::flip) {
    if (!warm) {
      for (Var v = 1; v <= num_vars_; ++v) a.set(v, rng.below(2) == 1);
    }
    reset(a);
    return;
  }

  for (const std::vector<Var>& group : groups_) {
    int true_count = 0;
    for (Var v : group) true_count += a.value(v) ? 1 : 0;
    if (warm && true_count == 1) continue;
    for (Var v : group) a.set(v, false);
    a.set(group[rng.below(group.size())], true);
  }
  for (Var v = 1; v <= num_vars_; ++v) {
    if (group_of_[static_cast<std::size_t>(v)] == -1 && !warm) {
      a.set(v, rng.below(2) == 1);
    }
  }
  reset(a);
}

void WalkState::reset(const Assignment& a) {
  if (a.num_vars() != num_vars_) throw std::invalid_argument("assignment width mismatch");
  assign_ = a;
  unsat_.clear();
  std::fill(unsat_pos_.begin(), unsat_pos_.end(), -1);

  for (std::size_t e = 0; e < elem_lit_.size(); ++e) {
    if (elem_lit_[e] != 0) {
      elem_sat_[e] = assign_.lit_true(elem_lit_[e]) ? 1 : 0;
    } else {
      int count = 0;
      for (int j = mem_begin_[e]; j < mem_end_[e]; ++j) {
        count += assign_.value(members_[static_cast<std::size_t>(j)]) ? 1 : 0;
      }
      elem_true_[e] = count;
      elem_sat_[e] = atom_in_range(static_cast<int>(e), count) ? 1 : 0;
    }
  }
  for (int c = 0; c < num_clauses_; ++c) {
    int sat = 0;
    for (int e = clause_begin_[c]; e < clause_begin_[c + 1]; ++e) {
      sat += elem_sat_[static_cast<std::size_t>(e)];
    }
    clause_sat_[static_cast<std::size_t>(c)] = sat;
    if (sat == 0) {
      unsat_pos_[static_cast<std::size_t>(c)] = static_cast<int>(unsat_.size());
      unsat_.push_back(c);
    }
  }
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    group_true_[g] = 0;
    for (Var v : groups_[g]) {
      if (assign_.value(v)) group_true_[g] = v;
    }
  }
}

bool WalkState::atom_in_range(int elem, int count) const {
  bool inside = count >= elem_lo_[static_cast<std::size_t>(elem)] &&
                count <= elem_hi_[static_cast<std::size_t>(elem)];
  return elem_neg_[static_cast<std::size_t>(elem)] ? !inside : inside;
}

void WalkState::bump_clause(int clause, int delta) {
  int& sat = clause_sat_[static_cast<std::size_t>(clause)];
  int before = sat;
  sat += delta;
  if (before > 0 && sat == 0) {
    unsat_pos_[static_cast<std::size_t>(clause)] = static_cast<int>(unsat_.size());
    unsat_.push_back(clause);
  } else if (before == 0 && sat > 0) {
    int pos = unsat_pos_[static_cast<std::size_t>(clause)];
    int moved = unsat_.back();
    unsat_[static_cast<std::size_t>(pos)] = moved;
    unsat_pos_[static_cast<std::size_t>(moved)] = pos;
    unsat_.pop_back();
    unsat_pos_[static_cast<std::size_t>(clause)] = -1;
  }
}

void WalkState::flip(Var v, bool to) {
  if (assign_.value(v) == to) {
    throw std::logic_error("flip to the current value");
  }
  assign_.set(v, to);
  for (const Occurrence& occ : occ_[static_cast<std::size_t>(v)]) {
    const std::size_t e = static_cast<std::size_t>(occ.elem);
    std::uint8_t news;
    if (elem_lit_[e] != 0) {
      news = (elem_lit_[e] > 0) == to ? 1 : 0;
    } else {
      elem_true_[e] += to ? 1 : -1;
      news = atom_in_range(occ.elem, elem_true_[e]) ? 1 : 0;
    }
    if (news != elem_sat_[e]) {
      elem_sat_[e] = news;
      bump_clause(elem_clause_[e], news ? 1 : -1);
    }
  }
}

void WalkState::apply(const Move& move) {
  if (move.set_false != 0) {
    flip(move.set_false, false);
    int g = group_of_[static_cast<std::size_t>(move.set_false)];
    if (g >= 0 && group_true_[static_cast<std::size_t>(g)] == move.set_false) {
      group_true_[static_cast<std::size_t>(g)] = 0;
    }
  }
  if (move.set_true != 0) {
    flip(move.set_true, true);
    int g = group_of_[static_cast<std::size_t>(move.set_true)];
    if (g >= 0) group_true_[static_cast<std::size_t>(g)] = move.set_true;
  }
}

void WalkState::add_clause_delta(int clause, int delta) const {
  const std::size_t c = static_cast<std::size_t>(clause);
  if (clause_stamp_[c] != epoch_) {
    clause_stamp_[c] = epoch_;
    clause_delta_[c] = 0;
    touched_clauses_.push_back(clause);
  }
  clause_delta_[c] += delta;
}

int WalkState::breakcount(const Move& move) const {
  ++epoch_;
  touched_elems_.clear();
  touched_clauses_.clear();

  auto visit = [&](Var v, bool to) {
    if (v == 0) return;
    for (const Occurrence& occ : occ_[static_cast<std::size_t>(v)]) {
      const std::size_t e = static_cast<std::size_t>(occ.elem);
      if (elem_lit_[e] != 0) {
        int news = (elem_lit_[e] > 0) == to ? 1 : 0;
        int delta = news - elem_sat_[e];
        if (delta != 0) add_clause_delta(elem_clause_[e], delta);
      } else {
        if (elem_stamp_[e] != epoch_) {
          elem_stamp_[e] = epoch_;
          elem_delta_[e] = 0;
          touched_elems_.push_back(occ.elem);
        }
        elem_delta_[e] += to ? 1 : -1;
      }
    }
  };
  visit(move.set_false, false);
  visit(move.set_true, true);

  for (int elem : touched_elems_) {
    const std::size_t e = static_cast<std::size_t>(elem);
    int news = atom_in_range(elem, elem_true_[e] + elem_delta_[e]) ? 1 : 0;
    int delta = news - elem_sat_[e];
    if (delta != 0) add_clause_delta(elem_clause_[e], delta);
  }
  int broken = 0;
  for (int clause : touched_clauses_) {
    const std::size_t c = static_cast<std::size_t>(clause);
    if (clause_sat_[c] > 0 && clause_sat_[c] + clause_delta_[c] == 0) ++broken;
  }
  return broken;
}

void WalkState::candidates(int clause, std::vector<Move>* out) const {
  out->clear();
  auto make_true = [&](Var v) {
    int g = group_of_[static_cast<std::size_t>(v)];
    if (g >= 0) {
      Var cur = group_true_[static_cast<std::size_t>(g)];
      if (cur == v) return;
      out->push_back({v, cur});
    } else {
      out->push_back({v, 0});
    }
  };
  auto make_false = [&](Var v) {
    int g = group_of_[static_cast<std::size_t>(v)];
    if (g >= 0) {
      for (Var w : groups_[static_cast<std::size_t>(g)]) {
        if (w != v) out->push_back({w, v});
      }
    } else {
      out->push_back({0, v});
    }
  };

  for (int e = clause_begin_[clause]; e < clause_begin_[clause + 1]; ++e) {
    const std::size_t eu = static_cast<std::size_t>(e);
    if (elem_lit_[eu] != 0) {
      Var v = var_of_lit(elem_lit_[eu]);
      if (elem_lit_[eu] > 0 && !assign_.value(v)) make_true(v);
      else if (elem_lit_[eu] < 0 && assign_.value(v)) make_false(v);
      continue;
    }
    int count = elem_true_[eu];
    if (!elem_neg_[eu]) {
      if (count < elem_lo_[eu]) {
        for (int j = mem_begin_[eu]; j < mem_end_[eu]; ++j) {
          Var v = members_[static_cast<std::size_t>(j)];
          if (!assign_.value(v)) make_true(v);
        }
      } else if (count > elem_hi_[eu]) {
        for (int j = mem_begin_[eu]; j < mem_end_[eu]; ++j) {
          Var v = members_[static_cast<std::size_t>(j)];
          if (assign_.value(v)) make_false(v);
        }
      }
    } else {
      for (int j = mem_begin_[eu]; j < mem_end_[eu]; ++j) {
        Var v = members_[static_cast<std::size_t>(j)];
        if (assign_.value(v)) make_false(v);
        else make_true(v);
      }
    }
  }
}

namespace {

struct RestartOutcome {
  bool solved = false;
  Assignment final_state;
  std::int64_t flips = 0;
  int best_unsat = 0;
};

/// One restart: at most max_flips steps, stopping early on success,
/// deadline, or an external stop request.
RestartOutcome run_restart(WalkState& state, Rng& rng, const WalkConfig& config,
                           const std::optional<Clock::time_point>& deadline,
                           const std::atomic<bool>* stop) {
  RestartOutcome outcome;
  outcome.best_unsat = state.unsat_count();
  std::vector<Move> cands;
  std::vector<int> mins;
  std::int64_t flip = 0;
  while (flip < config.max_flips && state.unsat_count() > 0) {
    ++flip;
    if ((flip & 4095) == 0) {
      if (stop && stop->load(std::memory_order_relaxed)) break;
      if (deadline && Clock::now() > *deadline) break;
    }
    int clause = state.unsat_clause(
        static_cast<int>(rng.below(static_cast<std::uint64_t>(state.unsat_count()))));
    state.candidates(clause, &cands);
    if (cands.empty()) continue;
    Move chosen;
    if (rng.unit() < config.noise) {
      chosen = cands[rng.below(cands.size())];
    } else {
      mins.clear();
      int best = INT_MAX;
      for (std::size_t j = 0; j < cands.size(); ++j) {
        int bc = state.breakcount(cands[j]);
        if (bc < best) {
          best = bc;
          mins.clear();
        }
        if (bc == best) mins.push_back(static_cast<int>(j));
      }
      chosen = cands[static_cast<std::size_t>(mins[rng.below(mins.size())])];
    }
    state.apply(chosen);
    outcome.best_unsat = std::min(outcome.best_unsat, state.unsat_count());
  }
  outcome.solved = state.unsat_count() == 0;
  outcome.best_unsat = std::min(outcome.best_unsat, state.unsat_count());
  outcome.flips = flip;
  outcome.final_state = state.assignment();
  return outcome;
}

}  // namespace

WalkResult solve_local(const CTheory& theory, const WalkConfig& config) {
  if (config.noise < 0.0 || config.noise > 1.0) {
    throw std::invalid_argument("noise must lie in [0,1]");
  }
  if (config.max_flips < 1 || config.restarts < 1 || config.jobs < 1) {
    throw std::invalid_argument("max_flips, restarts and jobs must be positive");
  }

  std::optional<Clock::time_point> deadline;
  if (config.timeout_seconds) {
    deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                  std::chrono::duration<double>(*config.timeout_seconds));
  }

  WalkResult result;
  std::mutex mu;
  std::atomic<bool> stop{false};
  std::atomic<int> next_restart{0};
  std::atomic<int> restarts_done{0};

  auto worker = [&]() {
    WalkState state(theory, config.neighborhood);
    for (;;) {
      int r = next_restart.fetch_add(1);
      if (r >= config.restarts || stop.load()) return;
      Rng rng(config.seed + static_cast<std::uint64_t>(r));
      const Assignment* warm =
          (r == 0 && config.warm_start) ? &*config.warm_start : nullptr;
      state.random_init(rng, warm);
      RestartOutcome outcome = run_restart(state, rng, config, deadline, &stop);
      restarts_done.fetch_add(1);

      std::lock_guard<std::mutex> lock(mu);
      if (config.progress) {
        *config.progress << "# restart=" << r << " seed=" << config.seed + static_cast<std::uint64_t>(r)
                         << " best_unsat=" << outcome.best_unsat
                         << " flips=" << outcome.flips << '\n';
      }
      if (!result.final_state || outcome.solved) {
        result.final_state = outcome.final_state;
      }
      if (outcome.solved && result.verdict != Verdict::sat) {
        if (!satisfies(theory, outcome.final_state)) {
          throw std::logic_error("incremental state diverged from the theory");
        }
        result.verdict = Verdict::sat;
        result.model = outcome.final_state;
        result.winning_seed = config.seed + static_cast<std::uint64_t>(r);
        result.flips = outcome.flips;
        stop.store(true);
      }
      if (deadline && Clock::now() > *deadline) stop.store(true);
    }
  };

  int jobs = std::min(config.jobs, config.restarts);
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  result.restarts_tried = restarts_done.load();
  return result;
}

}  // namespace vdw
