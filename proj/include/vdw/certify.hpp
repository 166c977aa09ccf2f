#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "vdw/theory.hpp"
#include "vdw/types.hpp"

namespace vdw {

/// Reads the partition off a model: block b collects the elements whose
/// in_block(i,b) variable is true. Throws MalformedModelError unless
/// every element has exactly one true block variable. The assignment
/// may be wider than m*k (symmetry auxiliaries are ignored).
Partition decode_model(const Assignment& a, const Params& p);

/// Inverse of decode_model over valid partitions; the result satisfies
/// the one-block-per-element clause families by construction.
Assignment encode_partition(const Partition& partition, const Params& p);

struct VerifyReport {
  Params params;
  bool valid = false;
  std::vector<int> missing;     // elements of [m] in no block
  std::vector<int> duplicated;  // elements in more than one block
  std::vector<int> out_of_range;
  // (block, progression) pairs, progression-major in enumeration order.
  std::vector<std::pair<int, Progression>> violations;
  bool violations_truncated = false;
  std::vector<std::string> warnings;

  std::string summary() const;  // "VALID k=.. l=.. m=.." / "INVALID ..."
  void render(std::ostream& out) const;
};

/// Checks the witness condition: blocks partition [m] and each block is
/// AP-free at length l. Coverage is re-derived from the elements, never
/// trusted from the header. At most 10 violating progressions are
/// listed; emptiness of a block is a warning, not a failure.
VerifyReport verify(const Certificate& cert);

/// Blocks reordered so the image's block pi[b] is the original block b
/// (pi is 0-based over block indices). Throws std::invalid_argument
/// unless pi is a permutation of the block indices.
Partition permute_blocks(const Partition& partition, const std::vector<int>& pi);

/// Element-wise mirror i -> m+1-i inside each block.
Partition reflect(const Partition& partition);

/// Certificate text: optional "#" origin comments, then "k=", "l=",
/// "m=" headers, then "Block <b>: <elements>" with free line wrapping
/// inside the number list. Parse errors carry line/column; elements
/// outside [m] raise RangeError, repeats raise DuplicateError. Missing
/// coverage is left for verify to report.
Certificate parse_certificate(std::istream& in);
void write_certificate(const Certificate& cert, std::ostream& out);

}  // namespace vdw
