#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "vdw/dimacs.hpp"
#include "vdw/encoder.hpp"

using namespace vdw;

namespace {

std::string dump(const CnfTheory& t) {
  std::ostringstream out;
  write_dimacs(t, out);
  return out.str();
}

std::string dump(const CTheory& t) {
  std::ostringstream out;
  write_xdimacs(t, out);
  return out.str();
}

}  // namespace

TEST_SUITE_BEGIN("dimacs");

TEST_CASE("golden single-clause output") {
  CnfTheory t;
  t.num_vars = 1;
  t.clauses = {{1}};
  CHECK(dump(t) == "p cnf 1 1\n1 0\n");
}

TEST_CASE("headers carry the encoder sizes") {
  CHECK(dump(encode_cnf(Params(2, 3, 9), SymmetryMode::none)).starts_with("p cnf 18 50\n"));
  CHECK(dump(encode_ps(Params(2, 3, 9), SymmetryMode::none)).starts_with("p ccnf 18 41\n"));
}

TEST_CASE("cardinality groups print with bounds, size and members") {
  CTheory t;
  t.num_vars = 4;
  CAtom atom;
  atom.lower = 1;
  atom.upper = 1;
  atom.vars = {1, 2};
  CClause c1;
  c1.elems.emplace_back(atom);
  CAtom open;
  open.upper = 2;
  open.vars = {3, 4};
  open.negated = true;
  CClause c2;
  c2.elems.emplace_back(Lit{-3});
  c2.elems.emplace_back(open);
  t.cclauses = {c1, c2};
  CHECK(dump(t) == "p ccnf 4 2\n[ 1 1 2 1 2 ] 0\n-3 ![ - 2 2 3 4 ] 0\n");
}

TEST_CASE("write then read reproduces the theory exactly") {
  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 50; ++trial) {
    CnfTheory t = oracle::random_cnf(gen, 1 + static_cast<int>(gen() % 12),
                                     static_cast<int>(gen() % 20));
    std::istringstream in(dump(t));
    CHECK(read_dimacs(in) == t);
  }
  for (int trial = 0; trial < 50; ++trial) {
    CTheory t = oracle::random_ctheory(gen, 1 + static_cast<int>(gen() % 10),
                                       static_cast<int>(gen() % 15));
    std::istringstream in(dump(t));
    CHECK(read_xdimacs(in) == t);
  }
}

TEST_CASE("round-trip on the vdW theories") {
  CnfTheory cnf = encode_cnf(Params(3, 3, 12), SymmetryMode::lex);
  std::istringstream in1(dump(cnf));
  CHECK(read_dimacs(in1) == cnf);
  CTheory ps = encode_ps(Params(3, 4, 15), SymmetryMode::none);
  std::istringstream in2(dump(ps));
  CHECK(read_xdimacs(in2) == ps);
}

TEST_CASE("comments and multi-line clauses are accepted") {
  std::istringstream in("c header comment\np cnf 3 2\nc inner\n1 -2\n3 0\n-1 0\n");
  CnfTheory t = read_dimacs(in);
  REQUIRE(t.clauses.size() == 2);
  CHECK(t.clauses[0] == Clause{1, -2, 3});
  CHECK(t.clauses[1] == Clause{-1});
}

TEST_CASE("parse errors carry the line number") {
  auto line_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_dimacs(in);
    } catch (const ParseError& e) {
      return e.line;
    }
    return -1;
  };
  CHECK(line_of("p dnf 1 1\n1 0\n") == 1);
  CHECK(line_of("p cnf 1 1\n2 0\n") == 2);
  CHECK(line_of("p cnf 1 2\n1 0\n") == 2);       // missing second clause
  CHECK(line_of("p cnf 1 1\n1 0\n-1 0\n") == 3);  // trailing clause
  CHECK(line_of("p cnf one 1\n1 0\n") == 1);
}

TEST_CASE("xdimacs parse errors") {
  auto fails = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_xdimacs(in);
    } catch (const ParseError&) {
      return true;
    }
    return false;
  };
  CHECK(fails("p cnf 1 1\n1 0\n"));                     // wrong format tag
  CHECK(fails("p ccnf 2 1\n[ 1 1 2 1 ] 0\n"));          // group shorter than n
  CHECK(fails("p ccnf 2 1\n[ 1 1 1 3 ] 0\n"));          // member out of range
  CHECK(fails("p ccnf 2 1\n[ x 1 1 1 ] 0\n"));          // bad bound token
  CHECK_FALSE(fails("p ccnf 2 1\n![ - - 1 2 ] 0\n"));   // negated, open bounds
}

TEST_SUITE_END();
