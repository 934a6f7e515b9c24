#include "morphnet/operator_eval.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace morphnet {

std::uint64_t local_pattern(const BinaryImage& image, const Window& window, int row, int col) {
  if (!image.in_frame(row, col))
    throw std::out_of_range("local_pattern: location outside the image frame");
  std::uint64_t p = 0;
  const auto& pts = window.points();
  for (std::size_t j = 0; j < pts.size(); ++j)
    if (image.at(row + pts[j].row, col + pts[j].col)) p |= std::uint64_t{1} << j;
  return p;
}

namespace {

// Single-word rows let one shift fetch a whole row of window-point bits:
// bit c of the shifted word is the image value at (r + dr, c + dc).
BinaryImage apply_layer_narrow(const Layer& layer, const BinaryImage& in) {
  const auto& pts = layer.window.points();
  const std::size_t k = pts.size();
  BinaryImage out(in.height(), in.width());
  std::array<std::uint64_t, TruthTable::kMaxPoints> shifted{};
  for (int r = 0; r < in.height(); ++r) {
    for (std::size_t j = 0; j < k; ++j) {
      int rr = r + pts[j].row;
      if (rr < 0 || rr >= in.height()) {
        shifted[j] = 0;
        continue;
      }
      std::uint64_t row = in.row_word(rr);
      int dc = pts[j].col;
      shifted[j] = dc >= 0 ? row >> dc : row << -dc;
    }
    std::uint64_t out_row = 0;
    for (int c = 0; c < in.width(); ++c) {
      std::uint64_t p = 0;
      for (std::size_t j = 0; j < k; ++j) p |= ((shifted[j] >> c) & 1) << j;
      if (layer.table.bit(p)) out_row |= std::uint64_t{1} << c;
    }
    out.set_row_word(r, out_row);
  }
  return out;
}

BinaryImage apply_layer_wide(const Layer& layer, const BinaryImage& in) {
  BinaryImage out(in.height(), in.width());
  for (int r = 0; r < in.height(); ++r)
    for (int c = 0; c < in.width(); ++c)
      out.set(r, c, layer.table.bit(local_pattern(in, layer.window, r, c)));
  return out;
}

}  // namespace

BinaryImage apply_layer(const Layer& layer, const BinaryImage& image) {
  if (image.words_per_row() == 1 && layer.window.radius() < 64)
    return apply_layer_narrow(layer, image);
  return apply_layer_wide(layer, image);
}

BinaryImage forward(const NetworkParams& params, const BinaryImage& image) {
  BinaryImage current = image;
  for (const Layer& l : params.layers()) current = apply_layer(l, current);
  return current;
}

LayerTrace forward_trace(const NetworkParams& params, const BinaryImage& image) {
  LayerTrace trace;
  trace.stages.reserve(params.depth() + 1);
  trace.stages.push_back(image);
  for (const Layer& l : params.layers()) trace.stages.push_back(apply_layer(l, trace.stages.back()));
  return trace;
}

TruthTable char_fn_of(const ImageOp& op, const Window& window) {
  const auto& pts = window.points();
  int rad = 0;
  for (PixelOffset p : pts)
    rad = std::max({rad, p.row < 0 ? -p.row : p.row, p.col < 0 ? -p.col : p.col});
  int side = 2 * rad + 1;
  TruthTable table(pts.size());
  for (std::uint64_t pattern = 0; pattern < table.size(); ++pattern) {
    BinaryImage config(side, side);
    for (std::size_t j = 0; j < pts.size(); ++j)
      if ((pattern >> j) & 1) config.set(rad + pts[j].row, rad + pts[j].col, true);
    BinaryImage result = op(config);
    if (result.at(rad, rad)) table.set_bit(pattern, true);
  }
  return table;
}

BinaryImage reference_erosion(const BinaryImage& image, std::span<const PixelOffset> se) {
  BinaryImage out(image.height(), image.width());
  for (int r = 0; r < image.height(); ++r) {
    for (int c = 0; c < image.width(); ++c) {
      bool all = true;
      for (PixelOffset s : se) {
        if (!image.at(r + s.row, c + s.col)) {
          all = false;
          break;
        }
      }
      out.set(r, c, all);
    }
  }
  return out;
}

BinaryImage reference_dilation(const BinaryImage& image, std::span<const PixelOffset> se) {
  BinaryImage out(image.height(), image.width());
  for (int r = 0; r < image.height(); ++r) {
    for (int c = 0; c < image.width(); ++c) {
      bool any = false;
      for (PixelOffset s : se) {
        if (image.at(r + s.row, c + s.col)) {
          any = true;
          break;
        }
      }
      out.set(r, c, any);
    }
  }
  return out;
}

}  // namespace morphnet
