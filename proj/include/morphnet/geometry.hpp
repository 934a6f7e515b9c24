#pragma once

#include <compare>
#include <span>
#include <vector>

namespace morphnet {

// Signed pixel offset relative to the origin o = (0,0).  The lexicographic
// (row, col) order fixes the point order of windows and, through it, the bit
// order of local patterns and truth tables.
struct PixelOffset {
  int row = 0;
  int col = 0;

  friend constexpr auto operator<=>(const PixelOffset&, const PixelOffset&) = default;
};

constexpr PixelOffset operator+(PixelOffset a, PixelOffset b) {
  return {a.row + b.row, a.col + b.col};
}

constexpr PixelOffset operator-(PixelOffset a) { return {-a.row, -a.col}; }

// Chebyshev distance 1, i.e. 8-adjacency: diagonal neighbors count.
constexpr bool adjacent8(PixelOffset a, PixelOffset b) {
  int dr = a.row - b.row;
  int dc = a.col - b.col;
  if (dr < 0) dr = -dr;
  if (dc < 0) dc = -dc;
  return (dr | dc) != 0 && dr <= 1 && dc <= 1;
}

// True iff the set is nonempty and every point reaches every other through
// member points at Chebyshev distance 1.
bool is_connected(std::span<const PixelOffset> points);

std::vector<PixelOffset> sorted_unique(std::vector<PixelOffset> points);

// Sorted, deduplicated {p + q : p in a, q in b}.
std::vector<PixelOffset> minkowski_sum(std::span<const PixelOffset> a,
                                       std::span<const PixelOffset> b);

std::vector<PixelOffset> reflect(std::span<const PixelOffset> points);

}  // namespace morphnet
