#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace morphnet {

// Row-major bit grid with foreground = 1.  Everything outside the frame
// reads as background 0, the constant-0 embedding of a finite image into the
// plane.  Rows are packed into 64-bit words, least significant bit first;
// padding bits past the width are kept zero so word-level comparisons and
// popcounts are safe.
class BinaryImage {
 public:
  BinaryImage() = default;
  BinaryImage(int height, int width);

  static BinaryImage filled(int height, int width, bool value);

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t words_per_row() const { return words_per_row_; }

  // In-frame read.
  bool get(int r, int c) const {
    assert(in_frame(r, c));
    return (words_[static_cast<std::size_t>(r) * words_per_row_ + static_cast<std::size_t>(c >> 6)] >>
            (c & 63)) & 1;
  }

  // Read with background-0 outside the frame.
  bool at(int r, int c) const { return in_frame(r, c) && get(r, c); }

  void set(int r, int c, bool v) {
    assert(in_frame(r, c));
    std::uint64_t& w =
        words_[static_cast<std::size_t>(r) * words_per_row_ + static_cast<std::size_t>(c >> 6)];
    std::uint64_t mask = std::uint64_t{1} << (c & 63);
    if (v)
      w |= mask;
    else
      w &= ~mask;
  }

  bool in_frame(int r, int c) const { return r >= 0 && r < height_ && c >= 0 && c < width_; }

  std::uint64_t count() const;  // foreground pixels
  bool empty_frame() const { return height_ == 0 || width_ == 0; }

  BinaryImage complemented() const;  // flips within the frame only

  const std::vector<std::uint64_t>& words() const { return words_; }

  // Whole-row access for the single-word fast path (width <= 64).
  std::uint64_t row_word(int r) const {
    assert(words_per_row_ == 1 && r >= 0 && r < height_);
    return words_[static_cast<std::size_t>(r)];
  }
  void set_row_word(int r, std::uint64_t w) {
    assert(words_per_row_ == 1 && r >= 0 && r < height_);
    words_[static_cast<std::size_t>(r)] = w;
  }

  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace morphnet
