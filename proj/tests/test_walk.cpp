#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "vdw/certify.hpp"
#include "vdw/encoder.hpp"
#include "vdw/walk.hpp"

using namespace vdw;

namespace {

CTheory exactly_one_pair() {
  CAtom atom;
  atom.lower = 1;
  atom.upper = 1;
  atom.vars = {1, 2};
  CTheory t;
  t.num_vars = 2;
  t.cclauses.push_back({{atom}});
  return t;
}

}  // namespace

TEST_SUITE_BEGIN("walk");

TEST_CASE("breakcount on the exactly-one pair") {
  CTheory t = exactly_one_pair();
  Assignment a(2);
  a.set(1, true);
  // The atom holds (count 1); raising the count to 2 breaks it.
  CHECK(breakcount(t, a, Move{2, 0}) == 1);
  // Moving the one true member sideways keeps it satisfied.
  CHECK(breakcount(t, a, Move{2, 1}) == 0);
  // On an unsatisfied clause there is nothing to break.
  Assignment none(2);
  CHECK(breakcount(t, none, Move{1, 0}) == 0);
}

TEST_CASE("breakcount rejects inapplicable moves") {
  CTheory t = exactly_one_pair();
  Assignment a(2);
  a.set(1, true);
  CHECK_THROWS_AS(breakcount(t, a, Move{1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(breakcount(t, a, Move{0, 2}), std::invalid_argument);
}

TEST_CASE("incremental state agrees with from-scratch recomputation") {
  std::mt19937_64 gen(501);
  Rng rng(502);
  int comparisons = 0;
  int theories = 0;
  while (comparisons < 1000 && theories < 400) {
    ++theories;
    int num_vars = 2 + static_cast<int>(gen() % 11);  // up to 12
    CTheory t = oracle::random_ctheory(gen, num_vars, 2 + static_cast<int>(gen() % 10));
    WalkState state(t, WalkConfig::Neighborhood::flip);
    state.random_init(rng, nullptr);
    std::vector<Move> cands;
    for (int step = 0; step < 40; ++step) {
      CHECK(state.unsat_count() == oracle::unsat_count(t, state.assignment()));
      if (state.unsat_count() == 0) break;
      int clause = state.unsat_clause(
          static_cast<int>(rng.below(static_cast<std::uint64_t>(state.unsat_count()))));
      state.candidates(clause, &cands);
      REQUIRE(!cands.empty());
      for (const Move& mv : cands) {
        int inc = state.breakcount(mv);
        int scratch = oracle::breakcount(t, state.assignment(), mv);
        CHECK(inc == scratch);
        CHECK(breakcount(t, state.assignment(), mv) == scratch);
        ++comparisons;
      }
      state.apply(cands[rng.below(cands.size())]);
    }
  }
  CHECK(comparisons >= 1000);
}

TEST_CASE("block moves keep the incremental state consistent too") {
  CTheory t = encode_ps(Params(3, 3, 15));
  Rng rng(9);
  WalkState state(t, WalkConfig::Neighborhood::block_move);
  state.random_init(rng, nullptr);
  std::vector<Move> cands;
  for (int step = 0; step < 200 && state.unsat_count() > 0; ++step) {
    CHECK(state.unsat_count() == oracle::unsat_count(t, state.assignment()));
    int clause = state.unsat_clause(
        static_cast<int>(rng.below(static_cast<std::uint64_t>(state.unsat_count()))));
    state.candidates(clause, &cands);
    for (const Move& mv : cands) {
      CHECK(state.breakcount(mv) == oracle::breakcount(t, state.assignment(), mv));
    }
    if (!cands.empty()) state.apply(cands[rng.below(cands.size())]);
    // Exactly-one per element survives every block move.
    CHECK_NOTHROW(decode_model(state.assignment(), Params(3, 3, 15)));
  }
}

TEST_CASE("local search solves easy satisfiable instances") {
  WalkConfig config;
  config.seed = 1;
  WalkResult r = solve_local(encode_ps(Params(2, 3, 8)), config);
  REQUIRE(r.verdict == Verdict::sat);
  REQUIRE(r.model.has_value());
  Partition part = decode_model(*r.model, Params(2, 3, 8));
  CHECK(verify({Params(2, 3, 8), part, ""}).valid);
}

TEST_CASE("local search reaches the known boundary instances") {
  WalkConfig config;
  config.seed = 1;
  SUBCASE("three blocks, length 3, m=26") {
    WalkResult r = solve_local(encode_ps(Params(3, 3, 26)), config);
    REQUIRE(r.verdict == Verdict::sat);
    Partition part = decode_model(*r.model, Params(3, 3, 26));
    CHECK(verify({Params(3, 3, 26), part, ""}).valid);
  }
  SUBCASE("two blocks, length 4, m=34") {
    WalkResult r = solve_local(encode_ps(Params(2, 4, 34)), config);
    REQUIRE(r.verdict == Verdict::sat);
    Partition part = decode_model(*r.model, Params(2, 4, 34));
    CHECK(verify({Params(2, 4, 34), part, ""}).valid);
  }
}

TEST_CASE("unsatisfiable input comes back unknown, never unsat") {
  WalkConfig config;
  config.seed = 3;
  config.max_flips = 4000;
  config.restarts = 3;
  std::ostringstream progress;
  config.progress = &progress;
  WalkResult r = solve_local(encode_ps(Params(2, 3, 9)), config);
  CHECK(r.verdict == Verdict::unknown);
  CHECK_FALSE(r.model.has_value());
  CHECK(r.restarts_tried == 3);

  // The walk never abandons the exactly-one structure.
  REQUIRE(r.final_state.has_value());
  CHECK_NOTHROW(decode_model(*r.final_state, Params(2, 3, 9)));

  // One diagnostic line per restart, each "#"-prefixed.
  std::istringstream lines(progress.str());
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    REQUIRE(line.rfind("# ", 0) == 0);
    CHECK(line.find("restart=") != std::string::npos);
    CHECK(line.find("best_unsat=") != std::string::npos);
    ++count;
  }
  CHECK(count == 3);
}

TEST_CASE("fixed seeds reproduce runs exactly") {
  CTheory t = encode_ps(Params(2, 3, 8));
  WalkConfig config;
  config.seed = 12;
  WalkResult a = solve_local(t, config);
  WalkResult b = solve_local(t, config);
  CHECK(a.verdict == b.verdict);
  CHECK(a.flips == b.flips);
  CHECK(a.winning_seed == b.winning_seed);
  CHECK(a.restarts_tried == b.restarts_tried);
  REQUIRE((a.model.has_value() && b.model.has_value()));
  CHECK(*a.model == *b.model);
}

TEST_CASE("a warm start that already satisfies the theory wins with zero flips") {
  CTheory t = encode_ps(Params(2, 3, 8));
  WalkConfig config;
  config.seed = 12;
  WalkResult first = solve_local(t, config);
  REQUIRE(first.verdict == Verdict::sat);

  config.warm_start = first.model;
  config.seed = 99;
  WalkResult warm = solve_local(t, config);
  CHECK(warm.verdict == Verdict::sat);
  CHECK(warm.flips == 0);
  CHECK(warm.winning_seed == 99);
  CHECK(*warm.model == *first.model);
}

TEST_CASE("a warm start with a hole gets its group randomized") {
  // Satisfying assignment for m=8, then clear element 8's block bits:
  // the engine must re-seat element 8 and may search from there.
  CTheory t = encode_ps(Params(2, 3, 8));
  WalkConfig config;
  config.seed = 12;
  WalkResult first = solve_local(t, config);
  REQUIRE(first.verdict == Verdict::sat);
  Assignment dented = *first.model;
  dented.set(var_of(8, 1, Params(2, 3, 8)), false);
  dented.set(var_of(8, 2, Params(2, 3, 8)), false);
  config.warm_start = dented;
  WalkResult warm = solve_local(t, config);
  CHECK(warm.verdict == Verdict::sat);
  CHECK_NOTHROW(decode_model(*warm.model, Params(2, 3, 8)));
}

TEST_CASE("parallel restarts still return a verified model") {
  CTheory t = encode_ps(Params(2, 3, 8));
  WalkConfig config;
  config.seed = 4;
  config.jobs = 4;
  WalkResult r = solve_local(t, config);
  REQUIRE(r.verdict == Verdict::sat);
  CHECK(verify({Params(2, 3, 8), decode_model(*r.model, Params(2, 3, 8)), ""}).valid);
  CHECK(r.winning_seed >= 4);
  CHECK(r.winning_seed < 4 + 20);
}

TEST_CASE("configuration is validated") {
  CTheory t = exactly_one_pair();
  WalkConfig config;
  config.noise = -0.1;
  CHECK_THROWS_AS(solve_local(t, config), std::invalid_argument);
  config.noise = 1.1;
  CHECK_THROWS_AS(solve_local(t, config), std::invalid_argument);
  config = {};
  config.max_flips = 0;
  CHECK_THROWS_AS(solve_local(t, config), std::invalid_argument);
  config = {};
  config.restarts = 0;
  CHECK_THROWS_AS(solve_local(t, config), std::invalid_argument);
  config = {};
  config.jobs = 0;
  CHECK_THROWS_AS(solve_local(t, config), std::invalid_argument);
}

TEST_SUITE_END();
