#include "morphnet/image.hpp"

#include <bit>
#include <stdexcept>

namespace morphnet {

BinaryImage::BinaryImage(int height, int width) : height_(height), width_(width) {
  if (height <= 0 || width <= 0)
    throw std::invalid_argument("image dimensions must be positive");
  words_per_row_ = static_cast<std::size_t>((width + 63) / 64);
  words_.assign(static_cast<std::size_t>(height) * words_per_row_, 0);
}

BinaryImage BinaryImage::filled(int height, int width, bool value) {
  BinaryImage img(height, width);
  if (value) {
    for (int r = 0; r < height; ++r)
      for (int c = 0; c < width; ++c) img.set(r, c, true);
  }
  return img;
}

std::uint64_t BinaryImage::count() const {
  std::uint64_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
  return n;
}

BinaryImage BinaryImage::complemented() const {
  BinaryImage out(height_, width_);
  int tail_bits = width_ & 63;
  std::uint64_t tail_mask = tail_bits == 0 ? ~std::uint64_t{0}
                                           : (std::uint64_t{1} << tail_bits) - 1;
  for (int r = 0; r < height_; ++r) {
    for (std::size_t w = 0; w < words_per_row_; ++w) {
      std::size_t idx = static_cast<std::size_t>(r) * words_per_row_ + w;
      std::uint64_t v = ~words_[idx];
      if (w + 1 == words_per_row_) v &= tail_mask;
      out.words_[idx] = v;
    }
  }
  return out;
}

}  // namespace morphnet
