#include "morphnet/geometry.hpp"

#include <algorithm>

namespace morphnet {

bool is_connected(std::span<const PixelOffset> points) {
  if (points.empty()) return false;
  std::vector<PixelOffset> member(points.begin(), points.end());
  std::sort(member.begin(), member.end());
  member.erase(std::unique(member.begin(), member.end()), member.end());

  auto find = [&](PixelOffset p) {
    auto it = std::lower_bound(member.begin(), member.end(), p);
    return it != member.end() && *it == p ? static_cast<std::size_t>(it - member.begin())
                                          : member.size();
  };

  std::vector<bool> seen(member.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    PixelOffset p = member[stack.back()];
    stack.pop_back();
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        if (dr == 0 && dc == 0) continue;
        std::size_t idx = find({p.row + dr, p.col + dc});
        if (idx < member.size() && !seen[idx]) {
          seen[idx] = true;
          ++reached;
          stack.push_back(idx);
        }
      }
    }
  }
  return reached == member.size();
}

std::vector<PixelOffset> sorted_unique(std::vector<PixelOffset> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

std::vector<PixelOffset> minkowski_sum(std::span<const PixelOffset> a,
                                       std::span<const PixelOffset> b) {
  std::vector<PixelOffset> sum;
  sum.reserve(a.size() * b.size());
  for (PixelOffset p : a)
    for (PixelOffset q : b) sum.push_back(p + q);
  return sorted_unique(std::move(sum));
}

std::vector<PixelOffset> reflect(std::span<const PixelOffset> points) {
  std::vector<PixelOffset> out;
  out.reserve(points.size());
  for (PixelOffset p : points) out.push_back(-p);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace morphnet
