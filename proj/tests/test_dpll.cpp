#include "doctest.h"
#include "oracles.hpp"
#include "vdw/certify.hpp"
#include "vdw/dpll.hpp"
#include "vdw/encoder.hpp"

using namespace vdw;

TEST_SUITE_BEGIN("dpll");

TEST_CASE("degenerate theories") {
  CnfTheory empty;
  empty.num_vars = 3;
  SolveResult r = solve_complete(empty);
  CHECK(r.verdict == Verdict::sat);
  REQUIRE(r.model.has_value());
  CHECK(r.model->num_vars() == 3);

  CnfTheory contradiction;
  contradiction.num_vars = 1;
  contradiction.clauses = {{1}, {-1}};
  CHECK(solve_complete(contradiction).verdict == Verdict::unsat);
  CHECK(solve_complete(contradiction).stats.decisions == 0);

  CnfTheory empty_clause;
  empty_clause.num_vars = 2;
  empty_clause.clauses = {{}};
  CHECK(solve_complete(empty_clause).verdict == Verdict::unsat);
}

TEST_CASE("one-block instances pin down the shortest interesting pair") {
  // A single block of [m] must itself avoid progressions of length 2,
  // so only m=1 works.
  SolveResult sat = solve_complete(encode_cnf(Params(1, 2, 1)));
  CHECK(sat.verdict == Verdict::sat);
  REQUIRE(sat.model.has_value());
  CHECK(sat.model->value(1));

  CHECK(solve_complete(encode_cnf(Params(1, 2, 2))).verdict == Verdict::unsat);
}

TEST_CASE("two blocks, length three: satisfiable exactly below 9") {
  SolveResult sat = solve_complete(encode_cnf(Params(2, 3, 8)));
  REQUIRE(sat.verdict == Verdict::sat);
  REQUIRE(sat.model.has_value());
  Partition part = decode_model(*sat.model, Params(2, 3, 8));
  CHECK(verify({Params(2, 3, 8), part, ""}).valid);

  CHECK(solve_complete(encode_cnf(Params(2, 3, 9))).verdict == Verdict::unsat);
}

TEST_CASE("symmetry-broken encodings keep the verdicts") {
  for (SymmetryMode mode : {SymmetryMode::fix_first, SymmetryMode::lex}) {
    SolveResult sat = solve_complete(encode_cnf(Params(2, 3, 8), mode));
    REQUIRE(sat.verdict == Verdict::sat);
    Partition part = decode_model(*sat.model, Params(2, 3, 8));
    CHECK(verify({Params(2, 3, 8), part, ""}).valid);
    CHECK(part.blocks[0].front() == 1);  // element 1 pinned to block 1
    CHECK(solve_complete(encode_cnf(Params(2, 3, 9), mode)).verdict == Verdict::unsat);
  }
}

TEST_CASE("verdicts agree with the truth table on random theories") {
  std::mt19937_64 gen(2026);
  for (int trial = 0; trial < 200; ++trial) {
    int num_vars = 1 + static_cast<int>(gen() % 16);
    int num_clauses = 1 + static_cast<int>(gen() % 40);
    CnfTheory t = oracle::random_cnf(gen, num_vars, num_clauses);
    SolveResult r = solve_complete(t);
    INFO("trial ", trial, ": ", num_vars, " vars, ", num_clauses, " clauses");
    REQUIRE(r.verdict != Verdict::unknown);
    CHECK((r.verdict == Verdict::sat) == oracle::tt_satisfiable(t));
    if (r.verdict == Verdict::sat) {
      CHECK(oracle::eval_theory(t, oracle::to_vals(*r.model)));
    }
  }
}

TEST_CASE("repeat runs are bit-identical") {
  CnfTheory t = encode_cnf(Params(3, 3, 20));
  SolveResult a = solve_complete(t);
  SolveResult b = solve_complete(t);
  CHECK(a.verdict == b.verdict);
  REQUIRE((a.model.has_value() && b.model.has_value()));
  CHECK(*a.model == *b.model);
  CHECK(a.stats.decisions == b.stats.decisions);
  CHECK(a.stats.propagations == b.stats.propagations);
  CHECK(a.stats.max_depth == b.stats.max_depth);
}

TEST_CASE("decision budget turns a hard instance into unknown") {
  ResourceBudget budget;
  budget.max_decisions = 5;
  SolveResult r = solve_complete(encode_cnf(Params(2, 3, 9)), budget);
  CHECK(r.verdict == Verdict::unknown);
  CHECK_FALSE(r.model.has_value());
  CHECK(r.stats.decisions <= 6);
}

TEST_CASE("time budget of zero gives up") {
  // 200 independent binary clauses force one decision each, so the
  // periodic clock check is reached long before a model is.
  CnfTheory t;
  t.num_vars = 400;
  for (Var v = 1; v <= 400; v += 2) t.clauses.push_back({v, v + 1});
  ResourceBudget budget;
  budget.seconds = 0.0;
  SolveResult r = solve_complete(t, budget);
  CHECK(r.verdict == Verdict::unknown);
  CHECK(solve_complete(t).verdict == Verdict::sat);
}

TEST_CASE("enumeration on toy theories") {
  CnfTheory unit;
  unit.num_vars = 1;
  unit.clauses = {{1}};
  EnumerateResult r = enumerate_models(unit, 10);
  CHECK_FALSE(r.truncated);
  REQUIRE(r.models.size() == 1);
  CHECK(r.models[0].value(1));

  CnfTheory free_var;  // clause over var 1 only; var 2 free
  free_var.num_vars = 2;
  free_var.clauses = {{1}};
  CHECK(enumerate_models(free_var, 10).models.size() == 2);
}

TEST_CASE("enumeration matches the truth table on random theories") {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 50; ++trial) {
    int num_vars = 1 + static_cast<int>(gen() % 8);
    CnfTheory t = oracle::random_cnf(gen, num_vars, 1 + static_cast<int>(gen() % 12));
    EnumerateResult r = enumerate_models(t, 1 << 10);
    CHECK_FALSE(r.truncated);
    std::vector<std::vector<bool>> expected = oracle::tt_models(t);
    REQUIRE(r.models.size() == expected.size());
    std::set<std::vector<bool>> got;
    for (const Assignment& a : r.models) got.insert(oracle::to_vals(a));
    for (const auto& vals : expected) CHECK(got.count(vals) == 1);
  }
}

TEST_CASE("model counts of the coloring theory") {
  // Models of the plain encoding are exactly the AP-free colorings, so
  // the counts must line up with direct enumeration of colorings.
  std::size_t colorings = oracle::ap_free_colorings(2, 3, 8).size();
  EnumerateResult r = enumerate_models(encode_cnf(Params(2, 3, 8)), 1 << 20);
  CHECK_FALSE(r.truncated);
  CHECK(r.models.size() == colorings);
  // Swapping the two blocks pairs the models up, so the count is even.
  CHECK(r.models.size() % 2 == 0);
  CHECK(r.models.size() > 0);

  CHECK(enumerate_models(encode_cnf(Params(2, 3, 9)), 1 << 20).models.empty());
}

TEST_CASE("enumeration limit truncates") {
  EnumerateResult r = enumerate_models(encode_cnf(Params(2, 3, 8)), 3);
  CHECK(r.truncated);
  CHECK(r.models.size() == 3);
}

TEST_CASE("enumeration is deterministic, duplicates never appear") {
  CnfTheory t = encode_cnf(Params(2, 3, 6));
  EnumerateResult a = enumerate_models(t, 1 << 20);
  EnumerateResult b = enumerate_models(t, 1 << 20);
  REQUIRE(a.models.size() == b.models.size());
  for (std::size_t i = 0; i < a.models.size(); ++i) CHECK(a.models[i] == b.models[i]);
  std::set<std::vector<bool>> seen;
  for (const Assignment& m : a.models) CHECK(seen.insert(oracle::to_vals(m)).second);
}

TEST_CASE("stats are populated") {
  SolveResult r = solve_complete(encode_cnf(Params(2, 3, 8)));
  CHECK(r.stats.propagations > 0);
  CHECK(r.stats.max_depth >= 1);
  CHECK(r.stats.max_depth <= 16);
}

TEST_SUITE_END();
