#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "morphnet/truth_table.hpp"
#include "morphnet/window.hpp"

namespace morphnet {

class RandomStream;

// One W-operator: a window plus the characteristic function on its subsets.
struct Layer {
  Layer(Window w, TruthTable t);

  Window window;
  TruthTable table;

  friend bool operator==(const Layer&, const Layer&) = default;
};

// An ordered sequence of windows, one per layer.
class WindowVector {
 public:
  WindowVector() = default;
  explicit WindowVector(std::vector<Window> windows);

  std::size_t depth() const { return windows_.size(); }
  const Window& window(std::size_t i) const { return windows_[i]; }
  const std::vector<Window>& windows() const { return windows_; }

  friend bool operator==(const WindowVector&, const WindowVector&) = default;

 private:
  std::vector<Window> windows_;
};

// The full parameter point: a sequence of layers applied first-to-last.
class NetworkParams {
 public:
  NetworkParams() = default;
  explicit NetworkParams(std::vector<Layer> layers);

  std::size_t depth() const { return layers_.size(); }
  const Layer& layer(std::size_t i) const { return layers_[i]; }
  const std::vector<Layer>& layers() const { return layers_; }
  WindowVector window_vector() const;

  friend bool operator==(const NetworkParams&, const NetworkParams&) = default;

 private:
  std::vector<Layer> layers_;
};

enum class MoveKind { FunctionFlip, WindowAdd, WindowRemove };

// Compact encoding of one distance-1 move in either lattice.
struct NeighborDescriptor {
  MoveKind kind = MoveKind::FunctionFlip;
  std::size_t layer_index = 0;
  std::uint64_t pattern = 0;  // FunctionFlip
  PixelOffset point;          // WindowAdd / WindowRemove

  friend bool operator==(const NeighborDescriptor&, const NeighborDescriptor&) = default;
};

// Effective window of the composed network: the Minkowski sum of all layer
// windows.
std::vector<PixelOffset> network_window(const NetworkParams& params);

// Number of single-bit flips available across all layer tables, sum of 2^|W_i|.
std::uint64_t function_neighborhood_size(const NetworkParams& params);

// n flip moves drawn uniformly without replacement from the union of all
// layers' flips; the complete neighborhood (canonical order) when n covers it.
std::vector<NeighborDescriptor> sample_function_neighbors(const NetworkParams& params,
                                                          std::uint64_t n, RandomStream& rng);

// Copy of params with exactly one table bit inverted.
NetworkParams apply_function_flip(const NetworkParams& params, const NeighborDescriptor& d);

TruthTable random_truth_table(const Window& window, RandomStream& rng);

// Every valid single-point edit of one window: additions stay inside F_d and
// connected, removals keep the window nonempty and connected.  Canonical
// order: by layer, additions in F_d scan order, then removals in point order.
std::vector<NeighborDescriptor> window_moves(const WindowVector& wv);

WindowVector apply_window_move(const WindowVector& wv, const NeighborDescriptor& move);

std::vector<WindowVector> window_neighbors(const WindowVector& wv);

std::vector<WindowVector> sample_window_neighbors(const WindowVector& wv, std::uint64_t n,
                                                  RandomStream& rng);

// Same sample as sample_window_neighbors but keeping the move that produced
// each neighbor; the window search needs the changed layer for warm starts.
std::vector<std::pair<NeighborDescriptor, WindowVector>> sample_window_moves(
    const WindowVector& wv, std::uint64_t n, RandomStream& rng);

}  // namespace morphnet
