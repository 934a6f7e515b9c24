#include "morphnet/window.hpp"

#include <algorithm>
#include <stdexcept>

namespace morphnet {

Window::Window(int side, std::vector<PixelOffset> points)
    : side_(side), points_(std::move(points)) {
  if (side_ < 3 || side_ % 2 == 0)
    throw std::invalid_argument("window side must be an odd integer >= 3");
  if (points_.empty()) throw std::invalid_argument("window must be nonempty");
  std::sort(points_.begin(), points_.end());
  if (std::adjacent_find(points_.begin(), points_.end()) != points_.end())
    throw std::invalid_argument("window points must be distinct");
  for (PixelOffset p : points_)
    if (!in_frame(p)) throw std::invalid_argument("window point outside F_d");
  if (!is_connected(points_)) throw std::invalid_argument("window must be connected");
}

bool Window::contains(PixelOffset p) const { return index_of(p) != npos; }

std::size_t Window::index_of(PixelOffset p) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), p);
  if (it == points_.end() || !(*it == p)) return npos;
  return static_cast<std::size_t>(it - points_.begin());
}

bool Window::in_frame(PixelOffset p) const {
  int r = radius();
  return p.row >= -r && p.row <= r && p.col >= -r && p.col <= r;
}

Window Window::cross(int side) {
  return Window(side, {{0, 0}, {0, 1}, {0, -1}, {1, 0}, {-1, 0}});
}

}  // namespace morphnet
