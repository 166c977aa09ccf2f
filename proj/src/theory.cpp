#include "vdw/theory.hpp"

namespace vdw {

bool elem_satisfied(const CElem& e, const Assignment& a) {
  if (const Lit* l = std::get_if<Lit>(&e)) {
    return a.lit_true(*l);
  }
  const CAtom& atom = std::get<CAtom>(e);
  int count = 0;
  for (Var v : atom.vars) {
    if (a.value(v)) ++count;
  }
  bool inside = true;
  if (atom.lower && count < *atom.lower) inside = false;
  if (atom.upper && count > *atom.upper) inside = false;
  return atom.negated ? !inside : inside;
}

bool satisfies(const CnfTheory& theory, const Assignment& a) {
  for (const Clause& c : theory.clauses) {
    bool sat = false;
    for (Lit l : c) {
      if (a.lit_true(l)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

bool satisfies(const CTheory& theory, const Assignment& a) {
  for (const CClause& c : theory.cclauses) {
    bool sat = false;
    for (const CElem& e : c.elems) {
      if (elem_satisfied(e, a)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

CTheory to_ctheory(const CnfTheory& cnf) {
  CTheory out;
  out.num_vars = cnf.num_vars;
  out.cclauses.reserve(cnf.clauses.size());
  for (const Clause& c : cnf.clauses) {
    CClause cc;
    cc.elems.reserve(c.size());
    for (Lit l : c) cc.elems.emplace_back(l);
    out.cclauses.push_back(std::move(cc));
  }
  return out;
}

}  // namespace vdw
