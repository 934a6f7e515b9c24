#include "morphnet/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "morphnet/operator_eval.hpp"

namespace morphnet {

namespace {

// Set-builder pattern extraction: materialize X_{-x} ∩ W and fold it back
// into an index through point lookups.  Deliberately avoids the bit loop the
// main path uses.
std::uint64_t subset_pattern(const BinaryImage& image, const Window& window, int row, int col) {
  std::vector<PixelOffset> hit;
  for (PixelOffset w : window.points())
    if (image.at(row + w.row, col + w.col)) hit.push_back(w);
  std::uint64_t pattern = 0;
  for (PixelOffset w : hit) pattern |= std::uint64_t{1} << window.index_of(w);
  return pattern;
}

}  // namespace

BinaryImage naive_apply(const Layer& layer, const BinaryImage& image) {
  BinaryImage out(image.height(), image.width());
  for (int r = 0; r < image.height(); ++r)
    for (int c = 0; c < image.width(); ++c)
      out.set(r, c, layer.table.bit(subset_pattern(image, layer.window, r, c)));
  return out;
}

ExhaustiveResult exhaustive_single_layer(const Window& window, const SampleSet& train) {
  if (window.size() > 4)
    throw std::invalid_argument("exhaustive search supports at most 4 window points");
  if (train.pairs.empty()) throw std::invalid_argument("training sample must be nonempty");

  const std::size_t n_patterns = std::size_t{1} << window.size();
  const std::size_t n_images = train.pairs.size();

  // Per image and pattern: how many pixels show that pattern and are (or are
  // not) foreground in the target.  A table is then scored from counts alone.
  std::vector<std::vector<std::uint64_t>> target_hits(n_images,
                                                      std::vector<std::uint64_t>(n_patterns, 0));
  std::vector<std::vector<std::uint64_t>> target_misses(n_images,
                                                        std::vector<std::uint64_t>(n_patterns, 0));
  std::vector<std::uint64_t> target_size(n_images, 0);
  for (std::size_t k = 0; k < n_images; ++k) {
    const SamplePair& pair = train.pairs[k];
    target_size[k] = pair.target.count();
    for (int r = 0; r < pair.input.height(); ++r) {
      for (int c = 0; c < pair.input.width(); ++c) {
        std::uint64_t p = subset_pattern(pair.input, window, r, c);
        if (pair.target.get(r, c))
          ++target_hits[k][p];
        else
          ++target_misses[k][p];
      }
    }
  }

  const std::uint64_t n_tables = std::uint64_t{1} << n_patterns;
  ExhaustiveResult result;
  result.tables_examined = n_tables;
  result.min_loss = 2.0;
  std::vector<std::uint64_t> best_bits;

  for (std::uint64_t f = 0; f < n_tables; ++f) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n_images; ++k) {
      std::uint64_t inter = 0;
      std::uint64_t uni = target_size[k];
      for (std::size_t p = 0; p < n_patterns; ++p) {
        if ((f >> p) & 1) {
          inter += target_hits[k][p];
          uni += target_misses[k][p];
        }
      }
      acc += uni == 0 ? 0.0 : 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
    }
    double loss = acc / static_cast<double>(n_images);
    if (loss < result.min_loss) {
      result.min_loss = loss;
      best_bits.clear();
    }
    if (loss == result.min_loss) best_bits.push_back(f);
  }

  result.best_tables.reserve(best_bits.size());
  for (std::uint64_t f : best_bits) {
    TruthTable t(window.size());
    for (std::size_t p = 0; p < n_patterns; ++p)
      if ((f >> p) & 1) t.set_bit(p, true);
    result.best_tables.push_back(std::move(t));
  }
  return result;
}

bool is_local_min(const NetworkParams& params, const SampleSet& train) {
  double here = mean_loss(params, train.pairs);
  for (std::size_t i = 0; i < params.depth(); ++i) {
    for (std::uint64_t p = 0; p < params.layer(i).table.size(); ++p) {
      NeighborDescriptor d{MoveKind::FunctionFlip, i, p, {}};
      if (mean_loss(apply_function_flip(params, d), train.pairs) < here) return false;
    }
  }
  return true;
}

std::vector<std::vector<PixelOffset>> connected_subsets(int side, std::size_t max_points) {
  if (side < 3 || side % 2 == 0)
    throw std::invalid_argument("frame side must be an odd integer >= 3");
  if (max_points < 1) throw std::invalid_argument("max_points must be >= 1");
  int rad = (side - 1) / 2;
  std::vector<PixelOffset> cells;
  for (int r = -rad; r <= rad; ++r)
    for (int c = -rad; c <= rad; ++c) cells.push_back({r, c});

  std::vector<std::vector<PixelOffset>> out;
  std::vector<PixelOffset> chosen;
  // plain combination enumeration; connectivity filters the result
  auto recurse = [&](auto&& self, std::size_t start) -> void {
    if (!chosen.empty() && is_connected(chosen)) out.push_back(chosen);
    if (chosen.size() == max_points) return;
    for (std::size_t i = start; i < cells.size(); ++i) {
      chosen.push_back(cells[i]);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  recurse(recurse, 0);
  return out;
}

}  // namespace morphnet
