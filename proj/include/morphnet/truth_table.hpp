#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace morphnet {

class RandomStream;

// Boolean function on the subsets of a k-point window, stored as a flat bit
// vector of length 2^k.  Pattern index encoding: bit j of a pattern is 1 iff
// the j-th window point (sorted order) belongs to the subset, so the table
// bit at index p is the function value on the subset p encodes.
class TruthTable {
 public:
  // Tables above this many window points would not fit in memory.
  static constexpr std::size_t kMaxPoints = 26;

  TruthTable() = default;
  explicit TruthTable(std::size_t num_points);  // all-zero table

  // 2^k independent fair coin bits drawn from the stream.
  static TruthTable random(std::size_t num_points, RandomStream& rng);

  std::size_t num_points() const { return num_points_; }
  std::uint64_t size() const { return std::uint64_t{1} << num_points_; }

  bool bit(std::uint64_t pattern) const;
  void set_bit(std::uint64_t pattern, bool value);
  void flip_bit(std::uint64_t pattern);
  std::uint64_t count() const;  // Hamming weight

  // Lowercase hex, little-endian digit groups: pattern 0 is the least
  // significant bit of the first digit, pattern 4 of the second, and so on.
  // The table [0,1] on one point serializes as "2".
  std::string to_hex() const;
  // Throws std::invalid_argument on wrong length, non-hex characters, or
  // set bits beyond 2^k.
  static TruthTable from_hex(std::size_t num_points, const std::string& hex);

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  std::size_t num_points_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace morphnet
