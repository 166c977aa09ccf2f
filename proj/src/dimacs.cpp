#include "vdw/dimacs.hpp"

#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <string>

#include "vdw/types.hpp"

namespace vdw {

void write_dimacs(const CnfTheory& theory, std::ostream& out) {
  out << "p cnf " << theory.num_vars << ' ' << theory.clauses.size() << '\n';
  for (const Clause& c : theory.clauses) {
    for (Lit l : c) out << l << ' ';
    out << "0\n";
  }
}

void write_xdimacs(const CTheory& theory, std::ostream& out) {
  out << "p ccnf " << theory.num_vars << ' ' << theory.cclauses.size() << '\n';
  for (const CClause& c : theory.cclauses) {
    for (const CElem& e : c.elems) {
      if (const Lit* l = std::get_if<Lit>(&e)) {
        out << *l << ' ';
        continue;
      }
      const CAtom& atom = std::get<CAtom>(e);
      out << (atom.negated ? "![ " : "[ ");
      if (atom.lower) out << *atom.lower << ' ';
      else out << "- ";
      if (atom.upper) out << *atom.upper << ' ';
      else out << "- ";
      out << atom.vars.size() << ' ';
      for (Var v : atom.vars) out << v << ' ';
      out << "] ";
    }
    out << "0\n";
  }
}

namespace {

/// Whitespace tokenizer that remembers each token's position for
/// error messages.
class Tokenizer {
 public:
  explicit Tokenizer(std::istream& in) : in_(in) {}

  /// Next token, or empty string at end of input. Lines starting with
  /// 'c' are comments and skipped whole.
  std::string next() {
    for (;;) {
      if (pos_ >= line_.size()) {
        if (!std::getline(in_, line_)) return {};
        ++line_no_;
        pos_ = 0;
        if (!line_.empty() && line_[0] == 'c') {
          pos_ = line_.size();
          continue;
        }
      }
      while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) {
        ++pos_;
      }
      if (pos_ >= line_.size()) continue;
      std::size_t start = pos_;
      while (pos_ < line_.size() && !std::isspace(static_cast<unsigned char>(line_[pos_]))) {
        ++pos_;
      }
      token_col_ = static_cast<int>(start) + 1;
      return line_.substr(start, pos_ - start);
    }
  }

  int line() const { return line_no_; }
  int column() const { return token_col_; }

 private:
  std::istream& in_;
  std::string line_;
  std::size_t pos_ = 0;
  int line_no_ = 0;
  int token_col_ = 0;
};

[[noreturn]] void fail(const Tokenizer& tok, const std::string& msg) {
  throw ParseError(msg, tok.line(), tok.column());
}

long long parse_int(Tokenizer& tok, const std::string& token, const std::string& what) {
  long long value = 0;
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    fail(tok, "expected " + what + ", got '" + token + "'");
  }
  return value;
}

struct Header {
  int num_vars;
  long long num_clauses;
};

Header read_header(Tokenizer& tok, const std::string& format) {
  std::string t = tok.next();
  if (t != "p") fail(tok, "expected 'p' header, got '" + t + "'");
  t = tok.next();
  if (t != format) fail(tok, "expected format '" + format + "', got '" + t + "'");
  long long vars = parse_int(tok, tok.next(), "variable count");
  long long clauses = parse_int(tok, tok.next(), "clause count");
  if (vars < 0 || vars > INT32_MAX) fail(tok, "variable count out of range");
  if (clauses < 0) fail(tok, "clause count out of range");
  return {static_cast<int>(vars), clauses};
}

Lit parse_lit(Tokenizer& tok, const std::string& token, int num_vars) {
  long long v = parse_int(tok, token, "literal");
  if (v == 0 || v > num_vars || v < -static_cast<long long>(num_vars)) {
    fail(tok, "literal out of range: " + token);
  }
  return static_cast<Lit>(v);
}

std::optional<int> parse_bound(Tokenizer& tok, const std::string& token) {
  if (token == "-") return std::nullopt;
  long long v = parse_int(tok, token, "cardinality bound");
  if (v < 0 || v > INT32_MAX) fail(tok, "cardinality bound out of range");
  return static_cast<int>(v);
}

CAtom parse_catom(Tokenizer& tok, bool negated, int num_vars) {
  CAtom atom;
  atom.negated = negated;
  atom.lower = parse_bound(tok, tok.next());
  atom.upper = parse_bound(tok, tok.next());
  long long n = parse_int(tok, tok.next(), "group size");
  if (n < 0) fail(tok, "negative group size");
  atom.vars.reserve(static_cast<std::size_t>(n));
  for (long long j = 0; j < n; ++j) {
    long long v = parse_int(tok, tok.next(), "variable id");
    if (v < 1 || v > num_vars) fail(tok, "variable id out of range: " + std::to_string(v));
    atom.vars.push_back(static_cast<Var>(v));
  }
  std::string close = tok.next();
  if (close != "]") fail(tok, "expected ']', got '" + close + "'");
  return atom;
}

}  // namespace

CnfTheory read_dimacs(std::istream& in) {
  Tokenizer tok(in);
  Header h = read_header(tok, "cnf");
  CnfTheory theory;
  theory.num_vars = h.num_vars;
  theory.clauses.reserve(static_cast<std::size_t>(h.num_clauses));
  Clause current;
  while (static_cast<long long>(theory.clauses.size()) < h.num_clauses) {
    std::string t = tok.next();
    if (t.empty()) fail(tok, "unexpected end of input inside clause list");
    if (t == "0") {
      theory.clauses.push_back(current);
      current.clear();
      continue;
    }
    current.push_back(parse_lit(tok, t, h.num_vars));
  }
  if (!tok.next().empty()) fail(tok, "trailing tokens after final clause");
  return theory;
}

CTheory read_xdimacs(std::istream& in) {
  Tokenizer tok(in);
  Header h = read_header(tok, "ccnf");
  CTheory theory;
  theory.num_vars = h.num_vars;
  theory.cclauses.reserve(static_cast<std::size_t>(h.num_clauses));
  CClause current;
  while (static_cast<long long>(theory.cclauses.size()) < h.num_clauses) {
    std::string t = tok.next();
    if (t.empty()) fail(tok, "unexpected end of input inside clause list");
    if (t == "0") {
      theory.cclauses.push_back(current);
      current.elems.clear();
      continue;
    }
    if (t == "[") {
      current.elems.emplace_back(parse_catom(tok, false, h.num_vars));
    } else if (t == "![") {
      current.elems.emplace_back(parse_catom(tok, true, h.num_vars));
    } else {
      current.elems.emplace_back(parse_lit(tok, t, h.num_vars));
    }
  }
  if (!tok.next().empty()) fail(tok, "trailing tokens after final clause");
  return theory;
}

}  // namespace vdw
