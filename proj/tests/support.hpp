#pragma once

// Shared generators and small oracles for the unit, property and acceptance
// suites.

#include <string>
#include <vector>

#include "morphnet/image.hpp"
#include "morphnet/loss.hpp"
#include "morphnet/network.hpp"
#include "morphnet/operator_eval.hpp"
#include "morphnet/rng.hpp"

namespace morphnet::testing {

inline BinaryImage random_image(int height, int width, RandomStream& rng, double density = 0.5) {
  BinaryImage img(height, width);
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c)
      if (rng.next_unit() < density) img.set(r, c, true);
  return img;
}

// Random connected window: grow from a random start point by repeatedly
// attaching an adjacent in-frame point.
inline Window random_window(int side, std::size_t num_points, RandomStream& rng) {
  int rad = (side - 1) / 2;
  auto random_cell = [&] {
    return PixelOffset{static_cast<int>(rng.next_below(2 * rad + 1)) - rad,
                       static_cast<int>(rng.next_below(2 * rad + 1)) - rad};
  };
  std::vector<PixelOffset> points{random_cell()};
  while (points.size() < num_points) {
    PixelOffset base = points[rng.next_below(points.size())];
    PixelOffset cand{base.row + static_cast<int>(rng.next_below(3)) - 1,
                     base.col + static_cast<int>(rng.next_below(3)) - 1};
    if (cand.row < -rad || cand.row > rad || cand.col < -rad || cand.col > rad) continue;
    bool present = false;
    for (PixelOffset p : points) present = present || p == cand;
    if (!present) points.push_back(cand);
  }
  return Window(side, std::move(points));
}

inline Layer random_layer(int side, std::size_t num_points, RandomStream& rng) {
  Window w = random_window(side, num_points, rng);
  TruthTable t = TruthTable::random(w.size(), rng);
  return Layer(std::move(w), std::move(t));
}

// f = 1 only on the all-ones pattern: the erosion by the window itself.
inline TruthTable erosion_table(const Window& w) {
  TruthTable t(w.size());
  t.set_bit(t.size() - 1, true);
  return t;
}

// f = 0 only on the empty pattern: the dilation by the window itself.
inline TruthTable dilation_table(const Window& w) {
  TruthTable t(w.size());
  for (std::uint64_t p = 1; p < t.size(); ++p) t.set_bit(p, true);
  return t;
}

inline Layer identity_layer() {
  Window w(3, {{0, 0}});
  TruthTable t(1);
  t.set_bit(1, true);
  return Layer(std::move(w), std::move(t));
}

// Sample pairs whose targets come from applying `truth` to random inputs.
inline SampleSet generated_samples(const Layer& truth, int count, int height, int width,
                                   RandomStream& rng, SampleRole role = SampleRole::Train) {
  SampleSet set;
  set.role = role;
  for (int i = 0; i < count; ++i) {
    BinaryImage input = random_image(height, width, rng);
    BinaryImage target = apply_layer(truth, input);
    set.pairs.emplace_back(std::move(input), std::move(target));
  }
  return set;
}

}  // namespace morphnet::testing
