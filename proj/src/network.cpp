#include "morphnet/network.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "morphnet/rng.hpp"

namespace morphnet {

Layer::Layer(Window w, TruthTable t) : window(std::move(w)), table(std::move(t)) {
  if (table.num_points() != window.size())
    throw std::invalid_argument("truth table length must be 2^|window|");
}

WindowVector::WindowVector(std::vector<Window> windows) : windows_(std::move(windows)) {
  if (windows_.empty()) throw std::invalid_argument("window vector must have depth >= 1");
}

NetworkParams::NetworkParams(std::vector<Layer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw std::invalid_argument("network must have depth >= 1");
}

WindowVector NetworkParams::window_vector() const {
  std::vector<Window> ws;
  ws.reserve(layers_.size());
  for (const Layer& l : layers_) ws.push_back(l.window);
  return WindowVector(std::move(ws));
}

std::vector<PixelOffset> network_window(const NetworkParams& params) {
  std::vector<PixelOffset> acc = params.layer(0).window.points();
  for (std::size_t i = 1; i < params.depth(); ++i)
    acc = minkowski_sum(acc, params.layer(i).window.points());
  return acc;
}

std::uint64_t function_neighborhood_size(const NetworkParams& params) {
  std::uint64_t total = 0;
  for (const Layer& l : params.layers()) total += l.table.size();
  return total;
}

std::vector<NeighborDescriptor> sample_function_neighbors(const NetworkParams& params,
                                                          std::uint64_t n, RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("neighbor sample count must be >= 1");
  std::uint64_t total = function_neighborhood_size(params);
  std::vector<std::uint64_t> picks = sample_indices(total, n, rng);

  std::vector<NeighborDescriptor> out;
  out.reserve(picks.size());
  for (std::uint64_t g : picks) {
    NeighborDescriptor d;
    d.kind = MoveKind::FunctionFlip;
    d.layer_index = 0;
    while (g >= params.layer(d.layer_index).table.size()) {
      g -= params.layer(d.layer_index).table.size();
      ++d.layer_index;
    }
    d.pattern = g;
    out.push_back(d);
  }
  return out;
}

NetworkParams apply_function_flip(const NetworkParams& params, const NeighborDescriptor& d) {
  if (d.kind != MoveKind::FunctionFlip)
    throw std::invalid_argument("descriptor is not a function flip");
  if (d.layer_index >= params.depth() ||
      d.pattern >= params.layer(d.layer_index).table.size())
    throw std::invalid_argument("flip descriptor out of range");
  std::vector<Layer> layers = params.layers();
  layers[d.layer_index].table.flip_bit(d.pattern);
  return NetworkParams(std::move(layers));
}

TruthTable random_truth_table(const Window& window, RandomStream& rng) {
  return TruthTable::random(window.size(), rng);
}

std::vector<NeighborDescriptor> window_moves(const WindowVector& wv) {
  std::vector<NeighborDescriptor> moves;
  for (std::size_t i = 0; i < wv.depth(); ++i) {
    const Window& w = wv.window(i);
    int rad = w.radius();
    for (int r = -rad; r <= rad; ++r) {
      for (int c = -rad; c <= rad; ++c) {
        PixelOffset p{r, c};
        if (w.contains(p)) continue;
        std::vector<PixelOffset> grown = w.points();
        grown.push_back(p);
        if (is_connected(grown)) moves.push_back({MoveKind::WindowAdd, i, 0, p});
      }
    }
    if (w.size() > 1) {
      for (PixelOffset p : w.points()) {
        std::vector<PixelOffset> shrunk;
        shrunk.reserve(w.size() - 1);
        for (PixelOffset q : w.points())
          if (!(q == p)) shrunk.push_back(q);
        if (is_connected(shrunk)) moves.push_back({MoveKind::WindowRemove, i, 0, p});
      }
    }
  }
  return moves;
}

WindowVector apply_window_move(const WindowVector& wv, const NeighborDescriptor& move) {
  if (move.layer_index >= wv.depth())
    throw std::invalid_argument("window move layer out of range");
  const Window& w = wv.window(move.layer_index);
  std::vector<PixelOffset> points = w.points();
  if (move.kind == MoveKind::WindowAdd) {
    points.push_back(move.point);
  } else if (move.kind == MoveKind::WindowRemove) {
    auto it = std::find(points.begin(), points.end(), move.point);
    if (it == points.end()) throw std::invalid_argument("window move removes a missing point");
    points.erase(it);
  } else {
    throw std::invalid_argument("descriptor is not a window move");
  }
  std::vector<Window> windows = wv.windows();
  windows[move.layer_index] = Window(w.side(), std::move(points));
  return WindowVector(std::move(windows));
}

std::vector<WindowVector> window_neighbors(const WindowVector& wv) {
  std::vector<WindowVector> out;
  for (const NeighborDescriptor& m : window_moves(wv)) out.push_back(apply_window_move(wv, m));
  return out;
}

std::vector<std::pair<NeighborDescriptor, WindowVector>> sample_window_moves(
    const WindowVector& wv, std::uint64_t n, RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("neighbor sample count must be >= 1");
  std::vector<NeighborDescriptor> moves = window_moves(wv);
  std::vector<std::uint64_t> picks = sample_indices(moves.size(), n, rng);
  std::vector<std::pair<NeighborDescriptor, WindowVector>> out;
  out.reserve(picks.size());
  for (std::uint64_t idx : picks) {
    const NeighborDescriptor& m = moves[static_cast<std::size_t>(idx)];
    out.emplace_back(m, apply_window_move(wv, m));
  }
  return out;
}

std::vector<WindowVector> sample_window_neighbors(const WindowVector& wv, std::uint64_t n,
                                                  RandomStream& rng) {
  std::vector<WindowVector> out;
  for (auto& [m, neighbor] : sample_window_moves(wv, n, rng)) out.push_back(std::move(neighbor));
  return out;
}

}  // namespace morphnet
