#include "morphnet/rng.hpp"

#include <numeric>
#include <unordered_set>

namespace morphnet {

std::vector<std::uint64_t> sample_indices(std::uint64_t total, std::uint64_t n, RandomStream& rng) {
  std::vector<std::uint64_t> out;
  if (total == 0) return out;
  if (n >= total) {
    out.resize(static_cast<std::size_t>(total));
    std::iota(out.begin(), out.end(), std::uint64_t{0});
    return out;
  }
  if (total <= (std::uint64_t{1} << 22)) {
    // partial Fisher-Yates: the first n slots end up a uniform sample
    std::vector<std::uint64_t> pool(static_cast<std::size_t>(total));
    std::iota(pool.begin(), pool.end(), std::uint64_t{0});
    for (std::uint64_t i = 0; i < n; ++i) {
      std::uint64_t j = i + rng.next_below(total - i);
      std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    out.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
    return out;
  }
  // huge neighborhoods: rejection keeps memory flat, n is tiny next to total
  std::unordered_set<std::uint64_t> seen;
  out.reserve(static_cast<std::size_t>(n));
  while (out.size() < n) {
    std::uint64_t v = rng.next_below(total);
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

}  // namespace morphnet
