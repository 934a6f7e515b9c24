#include "morphnet/loss.hpp"

#include <bit>
#include <stdexcept>

#include "morphnet/operator_eval.hpp"

namespace morphnet {

SamplePair::SamplePair(BinaryImage in, BinaryImage tgt)
    : input(std::move(in)), target(std::move(tgt)) {
  if (input.height() != target.height() || input.width() != target.width())
    throw std::invalid_argument("sample pair images must share dimensions");
}

double iou_error(const BinaryImage& pred, const BinaryImage& target) {
  if (pred.height() != target.height() || pred.width() != target.width())
    throw std::invalid_argument("iou_error: dimension mismatch");
  std::uint64_t inter = 0;
  std::uint64_t uni = 0;
  const auto& a = pred.words();
  const auto& b = target.words();
  for (std::size_t i = 0; i < a.size(); ++i) {
    inter += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    uni += static_cast<std::uint64_t>(std::popcount(a[i] | b[i]));
  }
  if (uni == 0) return 0.0;  // both empty: perfect match
  return 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
}

double mean_loss(const NetworkParams& params, std::span<const SamplePair> pairs) {
  if (pairs.empty()) throw std::invalid_argument("mean_loss: empty sample");
  double acc = 0.0;
  for (const SamplePair& pair : pairs) acc += iou_error(forward(params, pair.input), pair.target);
  return acc / static_cast<double>(pairs.size());
}

}  // namespace morphnet
