#pragma once

#include <functional>
#include <span>
#include <vector>

#include "morphnet/image.hpp"
#include "morphnet/network.hpp"

namespace morphnet {

// Input image followed by the output of each layer, depth + 1 stages.
struct LayerTrace {
  std::vector<BinaryImage> stages;
};

// Pattern index seen through the window at (row, col): bit j is the image
// value at (row, col) + w_j, zero where the window leaves the frame.
// Throws std::out_of_range when (row, col) itself is outside the frame.
std::uint64_t local_pattern(const BinaryImage& image, const Window& window, int row, int col);

// One W-operator application: output pixel = table bit at the local pattern.
// Output frame equals the input frame.
BinaryImage apply_layer(const Layer& layer, const BinaryImage& image);

// Left-to-right composition, first layer applied first.
BinaryImage forward(const NetworkParams& params, const BinaryImage& image);

LayerTrace forward_trace(const NetworkParams& params, const BinaryImage& image);

using ImageOp = std::function<BinaryImage(const BinaryImage&)>;

// Characteristic function of a translation-invariant operator locally
// defined within `window`: evaluates op on every subset of the window laid
// out on a minimal centered frame and reads the bit at the origin.
TruthTable char_fn_of(const ImageOp& op, const Window& window);

// Output pixel x is 1 iff every x + s with s in se is foreground.
BinaryImage reference_erosion(const BinaryImage& image, std::span<const PixelOffset> se);

// Output pixel x is 1 iff some x + s with s in se is foreground.
BinaryImage reference_dilation(const BinaryImage& image, std::span<const PixelOffset> se);

}  // namespace morphnet
