#include "vdw/ap.hpp"

#include <stdexcept>

namespace vdw {

static void check_args(int m, int l) {
  if (m < 1) throw std::invalid_argument("ap: m must be >= 1");
  if (l < 2) throw std::invalid_argument("ap: l must be >= 2");
}

std::vector<Progression> ap_enumerate(int m, int l) {
  check_args(m, l);
  std::vector<Progression> out;
  out.reserve(static_cast<std::size_t>(ap_count(m, l)));
  const int max_step = (m - 1) / (l - 1);
  for (int step = 1; step <= max_step; ++step) {
    const int max_start = m - (l - 1) * step;
    for (int start = 1; start <= max_start; ++start) {
      out.push_back(Progression{start, step, l});
    }
  }
  return out;
}

std::int64_t ap_count(int m, int l) {
  check_args(m, l);
  const std::int64_t q = (m - 1) / (l - 1);
  return q * m - static_cast<std::int64_t>(l - 1) * q * (q + 1) / 2;
}

bool is_ap_free(const std::vector<int>& block, int m, int l) {
  check_args(m, l);
  std::vector<std::uint8_t> in(static_cast<std::size_t>(m) + 1, 0);
  for (int e : block) {
    if (e < 1 || e > m) throw std::invalid_argument("is_ap_free: element outside [m]");
    in[e] = 1;
  }
  const int max_step = (m - 1) / (l - 1);
  for (int step = 1; step <= max_step; ++step) {
    const int max_start = m - (l - 1) * step;
    for (int start = 1; start <= max_start; ++start) {
      if (!in[start]) continue;
      bool all = true;
      for (int j = 1; j < l; ++j) {
        if (!in[start + j * step]) {
          all = false;
          break;
        }
      }
      if (all) return false;
    }
  }
  return true;
}

}  // namespace vdw
