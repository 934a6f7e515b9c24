#pragma once

#include <span>
#include <vector>

#include "morphnet/image.hpp"
#include "morphnet/network.hpp"

namespace morphnet {

// One (input, target) observation.  Throws std::invalid_argument when the
// two frames differ.
struct SamplePair {
  SamplePair(BinaryImage in, BinaryImage tgt);

  BinaryImage input;
  BinaryImage target;
};

enum class SampleRole { Train, Validation };

struct SampleSet {
  std::vector<SamplePair> pairs;
  SampleRole role = SampleRole::Train;
};

// 1 - |pred AND target| / |pred OR target|; 0 when both are empty.
double iou_error(const BinaryImage& pred, const BinaryImage& target);

// Mean IoU error of the network over the pairs, summed in list order.
double mean_loss(const NetworkParams& params, std::span<const SamplePair> pairs);

}  // namespace morphnet
