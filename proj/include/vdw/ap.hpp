#pragma once

#include <cstdint>
#include <vector>

#include "vdw/types.hpp"

namespace vdw {

/// All arithmetic progressions of exactly length l inside [m], step >= 1,
/// ordered by ascending step, then ascending start.
std::vector<Progression> ap_enumerate(int m, int l);

/// |ap_enumerate(m, l)| in closed form: with q = (m-1)/(l-1),
/// q*m - (l-1)*q*(q+1)/2.
std::int64_t ap_count(int m, int l);

/// True iff no length-l progression lies entirely inside the block.
/// Elements must be in [m].
bool is_ap_free(const std::vector<int>& block, int m, int l);

}  // namespace vdw
