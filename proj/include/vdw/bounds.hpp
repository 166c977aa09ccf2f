#pragma once

#include <optional>
#include <string>

#include "vdw/certify.hpp"
#include "vdw/dpll.hpp"
#include "vdw/encoder.hpp"
#include "vdw/walk.hpp"

namespace vdw {

/// Where a search drops its manifest and witness files (out_dir empty =
/// nothing written) and where "#"-prefixed progress lines go.
struct SearchIO {
  std::string out_dir;
  std::ostream* diagnostics = nullptr;
};

struct ExactResult {
  std::optional<int> value;  // W(k,l); absent when the budget ran out
  int lower_bound = 0;       // largest m with a verified witness
  std::optional<Certificate> witness;  // for lower_bound
  std::string witness_path;
  std::string manifest_path;

  bool complete() const { return value.has_value(); }
};

/// The incremental algorithm: test m = k+1, k+2, ... with the complete
/// engine until the first Unsat, verifying every witness along the way.
/// The first Unsat m is W(k,l); its predecessor's certificate is kept
/// (the singleton partition of [k] when m = k+1 is already Unsat).
/// gallop = probe with doubling gaps, then binary search; same answer,
/// fewer solves on long satisfiable runs. The budget applies per m.
ExactResult search_exact(int k, int l, SymmetryMode symmetry,
                         const ResourceBudget& budget = {}, const SearchIO& io = {},
                         bool gallop = false);

struct LowerBoundResult {
  int start_m = 0;
  std::optional<int> best_m;  // largest verified m: W(k,l) > best_m
  std::optional<Certificate> witness;
  std::string witness_path;
  std::string manifest_path;
};

/// Walks m upward from start_m while the local engine keeps finding
/// verified witnesses; each witness warm-starts the next m. Stops at
/// the first Unknown.
LowerBoundResult search_lower_bound(int k, int l, int start_m, const WalkConfig& config,
                                    const SearchIO& io = {});

struct TheoreticalBounds {
  double erdos_rado_value = 0.0;  // sqrt(2(l-1)k^(l-1)), a strict lower bound
  std::int64_t erdos_rado = 0;    // its floor
  std::optional<std::int64_t> berlekamp;  // (l-1)*2^(l-1), k=2 and l-1 prime
};

TheoreticalBounds theoretical_bounds(int k, int l);

}  // namespace vdw
