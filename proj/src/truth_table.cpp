#include "morphnet/truth_table.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>

#include "morphnet/rng.hpp"

namespace morphnet {

namespace {

std::size_t word_count(std::size_t num_points) {
  std::uint64_t bits = std::uint64_t{1} << num_points;
  return static_cast<std::size_t>((bits + 63) / 64);
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

}  // namespace

TruthTable::TruthTable(std::size_t num_points) : num_points_(num_points) {
  if (num_points_ > kMaxPoints)
    throw std::invalid_argument("truth table would exceed the supported window size");
  words_.assign(word_count(num_points_), 0);
}

TruthTable TruthTable::random(std::size_t num_points, RandomStream& rng) {
  TruthTable t(num_points);
  for (auto& w : t.words_) w = rng.next_u64();
  // keep padding past 2^k zero so equality and serialization stay canonical
  std::uint64_t bits = t.size();
  if (bits % 64 != 0) t.words_.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
  return t;
}

bool TruthTable::bit(std::uint64_t pattern) const {
  assert(pattern < size());
  return (words_[static_cast<std::size_t>(pattern >> 6)] >> (pattern & 63)) & 1;
}

void TruthTable::set_bit(std::uint64_t pattern, bool value) {
  assert(pattern < size());
  std::uint64_t mask = std::uint64_t{1} << (pattern & 63);
  if (value)
    words_[static_cast<std::size_t>(pattern >> 6)] |= mask;
  else
    words_[static_cast<std::size_t>(pattern >> 6)] &= ~mask;
}

void TruthTable::flip_bit(std::uint64_t pattern) {
  assert(pattern < size());
  words_[static_cast<std::size_t>(pattern >> 6)] ^= std::uint64_t{1} << (pattern & 63);
}

std::uint64_t TruthTable::count() const {
  std::uint64_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
  return n;
}

std::string TruthTable::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::uint64_t bits = size();
  std::size_t ndigits = static_cast<std::size_t>((bits + 3) / 4);
  std::string out(ndigits, '0');
  for (std::size_t g = 0; g < ndigits; ++g) {
    int v = 0;
    for (int j = 0; j < 4; ++j) {
      std::uint64_t idx = 4 * static_cast<std::uint64_t>(g) + static_cast<std::uint64_t>(j);
      if (idx < bits && bit(idx)) v |= 1 << j;
    }
    out[g] = digits[v];
  }
  return out;
}

TruthTable TruthTable::from_hex(std::size_t num_points, const std::string& hex) {
  TruthTable t(num_points);
  std::uint64_t bits = t.size();
  std::size_t ndigits = static_cast<std::size_t>((bits + 3) / 4);
  if (hex.size() != ndigits)
    throw std::invalid_argument("truth table hex has wrong length for the window size");
  for (std::size_t g = 0; g < ndigits; ++g) {
    int v = hex_value(hex[g]);
    if (v < 0) throw std::invalid_argument("truth table hex contains a non-hex character");
    for (int j = 0; j < 4; ++j) {
      if (!((v >> j) & 1)) continue;
      std::uint64_t idx = 4 * static_cast<std::uint64_t>(g) + static_cast<std::uint64_t>(j);
      if (idx >= bits) throw std::invalid_argument("truth table hex sets bits past 2^k");
      t.set_bit(idx, true);
    }
  }
  return t;
}

}  // namespace morphnet
