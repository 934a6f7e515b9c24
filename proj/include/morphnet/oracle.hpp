#pragma once

#include <cstdint>
#include <vector>

#include "morphnet/loss.hpp"
#include "morphnet/network.hpp"

namespace morphnet {

struct ExhaustiveResult {
  std::vector<TruthTable> best_tables;  // every minimizer, ascending bit-vector order
  double min_loss = 0.0;
  std::uint64_t tables_examined = 0;  // 2^(2^|W|)
};

// Evaluates every truth table on the window against the sample.  Refuses
// windows above 4 points (65536 tables is the ceiling worth enumerating).
ExhaustiveResult exhaustive_single_layer(const Window& window, const SampleSet& train);

// True iff no single table-bit flip lowers the full-sample training loss.
bool is_local_min(const NetworkParams& params, const SampleSet& train);

// Second, independent evaluation path: per pixel it materializes the subset
// of window points landing on foreground and evaluates the function on that
// set.  Differential reference for apply_layer.
BinaryImage naive_apply(const Layer& layer, const BinaryImage& image);

// Every connected subset of F_side with at most max_points points.
std::vector<std::vector<PixelOffset>> connected_subsets(int side, std::size_t max_points);

}  // namespace morphnet
