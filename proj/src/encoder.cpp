#include "vdw/encoder.hpp"

#include <stdexcept>

#include "vdw/ap.hpp"

namespace vdw {

SymmetryMode symmetry_from_string(const std::string& s) {
  if (s == "none") return SymmetryMode::none;
  if (s == "fix-first") return SymmetryMode::fix_first;
  if (s == "lex") return SymmetryMode::lex;
  throw std::invalid_argument("unknown symmetry mode: " + s);
}

std::string to_string(SymmetryMode mode) {
  switch (mode) {
    case SymmetryMode::none: return "none";
    case SymmetryMode::fix_first: return "fix-first";
    case SymmetryMode::lex: return "lex";
  }
  throw std::logic_error("unreachable");
}

std::pair<int, int> var_unmap(Var v, const Params& p) {
  if (v < 1 || v > p.m * p.k) {
    throw std::invalid_argument("variable id out of range: " + std::to_string(v));
  }
  int i = (v - 1) / p.k + 1;
  int b = (v - 1) % p.k + 1;
  return {i, b};
}

namespace {

/// Symmetry clauses shared by both encodings, as plain clauses.
/// For lex, u(i,b) = "some element <= i lies in block b" lives at
/// variable m*k + (i-1)*k + b, and the clauses assert
/// u(i,b) <-> x(i,b) | u(i-1,b) plus x(i,b+1) -> u(i-1,b).
std::vector<Clause> symmetry_clauses(const Params& p, SymmetryMode mode,
                                     int* num_vars) {
  std::vector<Clause> out;
  *num_vars = p.m * p.k;
  if (mode == SymmetryMode::none) return out;

  out.push_back({var_of(1, 1, p)});
  if (mode == SymmetryMode::fix_first) return out;

  const int base = p.m * p.k;
  *num_vars = 2 * p.m * p.k;
  auto u = [&](int i, int b) { return static_cast<Var>(base + (i - 1) * p.k + b); };

  for (int i = 1; i <= p.m; ++i) {
    for (int b = 1; b <= p.k; ++b) {
      out.push_back({-var_of(i, b, p), u(i, b)});
      if (i >= 2) {
        out.push_back({-u(i - 1, b), u(i, b)});
        out.push_back({-u(i, b), var_of(i, b, p), u(i - 1, b)});
      } else {
        out.push_back({-u(1, b), var_of(1, b, p)});
      }
    }
  }
  for (int i = 1; i <= p.m; ++i) {
    for (int b = 1; b + 1 <= p.k; ++b) {
      if (i >= 2) {
        out.push_back({-var_of(i, b + 1, p), u(i - 1, b)});
      } else {
        out.push_back({-var_of(1, b + 1, p)});
      }
    }
  }
  return out;
}

std::vector<Clause> progression_clauses(const Params& p) {
  std::vector<Clause> out;
  const auto aps = ap_enumerate(p.m, p.l);
  out.reserve(aps.size() * static_cast<std::size_t>(p.k));
  for (const Progression& ap : aps) {
    for (int b = 1; b <= p.k; ++b) {
      Clause c;
      c.reserve(static_cast<std::size_t>(p.l));
      for (int t = 0; t < p.l; ++t) {
        c.push_back(-var_of(ap.term(t), b, p));
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace

CnfTheory encode_cnf(const Params& p, SymmetryMode mode) {
  CnfTheory theory;
  for (int i = 1; i <= p.m; ++i) {
    for (int b = 1; b <= p.k; ++b) {
      for (int b2 = b + 1; b2 <= p.k; ++b2) {
        theory.clauses.push_back({-var_of(i, b, p), -var_of(i, b2, p)});
      }
    }
  }
  for (int i = 1; i <= p.m; ++i) {
    Clause c;
    c.reserve(static_cast<std::size_t>(p.k));
    for (int b = 1; b <= p.k; ++b) c.push_back(var_of(i, b, p));
    theory.clauses.push_back(std::move(c));
  }
  for (Clause& c : progression_clauses(p)) theory.clauses.push_back(std::move(c));
  for (Clause& c : symmetry_clauses(p, mode, &theory.num_vars)) {
    theory.clauses.push_back(std::move(c));
  }
  return theory;
}

CTheory encode_ps(const Params& p, SymmetryMode mode) {
  CTheory theory;
  for (int i = 1; i <= p.m; ++i) {
    CAtom atom;
    atom.lower = 1;
    atom.upper = 1;
    atom.vars.reserve(static_cast<std::size_t>(p.k));
    for (int b = 1; b <= p.k; ++b) atom.vars.push_back(var_of(i, b, p));
    CClause cc;
    cc.elems.emplace_back(std::move(atom));
    theory.cclauses.push_back(std::move(cc));
  }
  for (Clause& c : progression_clauses(p)) {
    CClause cc;
    cc.elems.reserve(c.size());
    for (Lit l : c) cc.elems.emplace_back(l);
    theory.cclauses.push_back(std::move(cc));
  }
  for (Clause& c : symmetry_clauses(p, mode, &theory.num_vars)) {
    CClause cc;
    cc.elems.reserve(c.size());
    for (Lit l : c) cc.elems.emplace_back(l);
    theory.cclauses.push_back(std::move(cc));
  }
  return theory;
}

}  // namespace vdw
