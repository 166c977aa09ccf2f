#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace vdw {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Text input could not be parsed; line/column are 1-based.
struct ParseError : Error {
  int line;
  int column;
  ParseError(const std::string& msg, int line_, int column_ = 0)
      : Error(msg + " (line " + std::to_string(line_) + ")"),
        line(line_),
        column(column_) {}
};

/// An element lies outside the segment [m].
struct RangeError : ParseError {
  using ParseError::ParseError;
};

/// An element appears more than once.
struct DuplicateError : ParseError {
  using ParseError::ParseError;
};

/// A model does not assign exactly one block to every element.
struct MalformedModelError : Error {
  using Error::Error;
};

/// Instance triple: partition [m] into k blocks, none containing an
/// arithmetic progression of length l.
struct Params {
  int k;  // number of blocks, >= 1
  int l;  // progression length, >= 2
  int m;  // segment length, >= 1

  Params(int k_, int l_, int m_) : k(k_), l(l_), m(m_) {
    if (k < 1) throw std::invalid_argument("Params: k must be >= 1");
    if (l < 2) throw std::invalid_argument("Params: l must be >= 2");
    if (m < 1) throw std::invalid_argument("Params: m must be >= 1");
  }

  bool operator==(const Params&) const = default;
};

/// Arithmetic progression start, start+step, ..., start+(length-1)*step.
struct Progression {
  int start;
  int step;
  int length;

  int term(int idx) const { return start + idx * step; }
  int last() const { return term(length - 1); }

  bool operator==(const Progression&) const = default;
};

/// A k-coloring of [m]: blocks are 1-based element sets, kept sorted.
/// Blocks may be empty; validity (disjoint, covering [m]) is established
/// by verify(), not by construction.
struct Partition {
  int m = 0;
  std::vector<std::vector<int>> blocks;

  int num_blocks() const { return static_cast<int>(blocks.size()); }

  bool operator==(const Partition&) const = default;
};

/// A partition witnessing W(k,l) > m, plus free-text provenance.
struct Certificate {
  Params params;
  Partition partition;
  std::string origin;
};

}  // namespace vdw
