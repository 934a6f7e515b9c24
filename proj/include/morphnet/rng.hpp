#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace morphnet {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  return splitmix64(splitmix64(seed) ^ splitmix64(~tag));
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// One master seed fans out into fixed named streams so that shuffling,
// neighbor sampling, tie breaking and initialization never read from each
// other's sequence.  Parallel candidate evaluation therefore cannot perturb
// any random draw.
enum class StreamId : std::uint64_t {
  BatchShuffle = 1,
  NeighborSample = 2,
  TieBreak = 3,
  Init = 4,
  WinBatchShuffle = 5,
  WinNeighborSample = 6,
  WinTieBreak = 7,
  GenLayout = 8,
  GenNoise = 9,
};

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, n), masked rejection so every value is equally likely.
  std::uint64_t next_below(std::uint64_t n) {
    assert(n > 0);
    if (n == 1) return 0;
    std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(n - 1);
    for (;;) {
      std::uint64_t v = next_u64() & mask;
      if (v < n) return v;
    }
  }

  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

inline RandomStream make_stream(std::uint64_t seed, StreamId id) {
  return RandomStream(mix_seed(seed, static_cast<std::uint64_t>(id)));
}

template <typename T>
void fisher_yates(std::vector<T>& items, RandomStream& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(items[i - 1], items[j]);
  }
}

// n distinct values from [0, total), uniform without replacement.  Returns
// the whole range in ascending order when n >= total.
std::vector<std::uint64_t> sample_indices(std::uint64_t total, std::uint64_t n, RandomStream& rng);

}  // namespace morphnet
