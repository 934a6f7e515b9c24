#pragma once

#include <cstddef>
#include <vector>

#include "morphnet/geometry.hpp"

namespace morphnet {

// A connected set of offsets inside the d x d square F_d centered at the
// origin.  Points are stored sorted lexicographically; the position of a
// point in that order is its pattern bit index.
class Window {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  // Throws std::invalid_argument if side is even or < 3, the set is empty,
  // has duplicates, leaves F_d, or is not 8-connected.
  Window(int side, std::vector<PixelOffset> points);

  int side() const { return side_; }
  int radius() const { return (side_ - 1) / 2; }
  const std::vector<PixelOffset>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

  bool contains(PixelOffset p) const;
  // Position of p among the sorted points, or npos.
  std::size_t index_of(PixelOffset p) const;
  bool in_frame(PixelOffset p) const;

  friend bool operator==(const Window&, const Window&) = default;

  // The five point cross {o, (0,1), (0,-1), (1,0), (-1,0)}.
  static Window cross(int side);

 private:
  int side_;
  std::vector<PixelOffset> points_;
};

}  // namespace morphnet
