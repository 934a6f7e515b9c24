#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "morphnet/fn_trainer.hpp"

namespace morphnet {

struct WinSearchConfig {
  std::uint64_t neighbors_n = kFullNeighborhood;
  std::size_t batch_size = 10;  // validation batches
  std::size_t epochs = 19;
  std::uint64_t seed = 0;
  FnTrainConfig fn;  // inner loop; fn.seed is the base the per-window seeds derive from
  int workers = 1;
};

struct TrainedCacheEntry {
  std::string key;       // canonical serialization of the window vector
  NetworkParams params;  // functions learned for those windows
  double train_loss = 0.0;  // full training sample
  double val_loss = 0.0;    // full validation sample
};

// Window vectors already trained this run.  Revisits return the stored entry
// instead of retraining.
class TrainedCache {
 public:
  const TrainedCacheEntry* find(const std::string& key) const;
  const TrainedCacheEntry& insert(TrainedCacheEntry entry);
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, TrainedCacheEntry> entries_;
};

// "side:(r,c)(r,c)...|side:..." — unique per window vector since points are
// kept sorted.
std::string canonical_key(const WindowVector& wv);

// Inner-loop seed for one window vector, derived from the base seed and the
// canonical key so cache hits are semantically transparent.
std::uint64_t derive_inner_seed(std::uint64_t base_seed, const std::string& key);

// Keeps every unchanged layer of prev; the changed layer gets new_window and
// a fresh random table.
NetworkParams warm_start_init(const NetworkParams& prev, std::size_t changed_layer,
                              const Window& new_window, RandomStream& rng);

struct WarmStart {
  NetworkParams params;
  std::size_t changed_layer = 0;
};

// Everything one inner training produces; entry is what the cache keeps.
struct TrainedOutcome {
  TrainedCacheEntry entry;
  FnTrainResult fn_result;
};

// Pure: train the characteristic functions for wv (warm started when a
// predecessor is given) and evaluate both full-sample losses.
TrainedOutcome train_window_vector(const WindowVector& wv, const std::optional<WarmStart>& warm,
                                   const SampleSet& train, const SampleSet& val,
                                   const FnTrainConfig& base_cfg);

// Called once per actually-trained window vector, in deterministic order.
using TrainLogger = std::function<void(const TrainedCacheEntry&, const FnTrainResult&)>;

// Cache-aware evaluation: hit returns the stored entry without running the
// inner loop; miss trains, stores, logs, returns.
const TrainedCacheEntry& evaluate_window_vector(const WindowVector& wv,
                                                const std::optional<WarmStart>& warm,
                                                const SampleSet& train, const SampleSet& val,
                                                const FnTrainConfig& base_cfg, TrainedCache& cache,
                                                const TrainLogger& logger = {});

struct WinEpochRecord {
  std::size_t epoch = 0;
  double current_loss = 0.0;  // full validation loss of the vector held after the epoch
  double best_loss = 0.0;
  std::size_t windows_visited = 0;  // distinct window vectors trained so far
  double elapsed_seconds = 0.0;
};

struct WinStepRecord {
  std::size_t epoch = 0;
  std::size_t step = 0;
  const std::vector<std::size_t>& batch;  // indices into the validation pairs
  const WindowVector& before;
  const WindowVector& after;
  double selected_loss = 0.0;
};

using WinStepObserver = std::function<void(const WinStepRecord&)>;

struct WinSearchResult {
  WindowVector best_windows;
  NetworkParams best_params;
  double best_val_loss = 0.0;
  std::size_t windows_visited = 0;
  std::vector<WinEpochRecord> history;
  std::size_t epochs_to_min = 0;
};

// Stochastic lattice gradient descent over window vectors.  Every candidate
// is trained once on the full training sample (through the cache) and
// compared on the current validation batch; the move is unconditional, and
// the best full-sample validation point seen at an epoch end is returned.
WinSearchResult search_windows(const WindowVector& init_wv, const SampleSet& train,
                               const SampleSet& val, const WinSearchConfig& cfg,
                               TrainedCache* cache = nullptr,
                               const WinStepObserver& observer = {},
                               const TrainLogger& logger = {});

}  // namespace morphnet
