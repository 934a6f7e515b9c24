#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "morphnet/loss.hpp"
#include "morphnet/network.hpp"
#include "morphnet/rng.hpp"

namespace morphnet {

// Sentinel neighbor count meaning "the whole neighborhood, every step".
inline constexpr std::uint64_t kFullNeighborhood = std::numeric_limits<std::uint64_t>::max();

struct FnTrainConfig {
  std::uint64_t neighbors_n = 10;
  std::size_t batch_size = 10;
  std::size_t epochs = 50;
  std::uint64_t seed = 0;
  int workers = 1;  // execution knob only, never changes results
};

struct EpochRecord {
  std::size_t epoch = 0;         // 1-based
  double current_loss = 0.0;     // full-sample loss of the point held after the epoch
  double best_loss = 0.0;        // least full-sample loss seen at any epoch end
  double elapsed_seconds = 0.0;
};

// Snapshot of one batch move, for trajectory audits.  The references are
// valid only during the observer call.
struct FnStepRecord {
  std::size_t epoch = 0;
  std::size_t step = 0;                 // batch index within the epoch
  const std::vector<std::size_t>& batch;  // indices into the training pairs
  const NetworkParams& before;
  const NetworkParams& after;
  double selected_loss = 0.0;           // batch loss of the chosen neighbor
};

using FnStepObserver = std::function<void(const FnStepRecord&)>;

struct FnTrainResult {
  NetworkParams best_params;
  double best_train_loss = 0.0;
  std::vector<EpochRecord> history;  // one record per epoch
  std::size_t epochs_to_min = 0;     // 0 when the initial point was never beaten
};

// Random permutation of the pairs cut into consecutive batches of size b;
// the last batch is smaller when b does not divide the sample size.
std::vector<std::vector<SamplePair>> shuffle_batches(std::span<const SamplePair> pairs,
                                                     std::size_t b, RandomStream& rng);

// Index-level core of shuffle_batches.
std::vector<std::vector<std::size_t>> shuffle_batch_indices(std::size_t count, std::size_t b,
                                                            RandomStream& rng);

// Fresh random truth table for every window, one derived substream per layer.
NetworkParams default_init(const WindowVector& windows, RandomStream& rng);

// Stochastic lattice gradient descent over the characteristic functions with
// the windows held fixed.  Per batch it moves unconditionally to the best of
// the sampled flip neighbors (the incumbent never competes); at each epoch
// end the full-sample loss decides whether the point is kept as best-so-far.
FnTrainResult train_functions(const WindowVector& windows, const NetworkParams& init,
                              const SampleSet& train, const FnTrainConfig& cfg,
                              const FnStepObserver& observer = {});

}  // namespace morphnet
