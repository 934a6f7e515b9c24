#include "morphnet/window_search.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

#include "morphnet/operator_eval.hpp"
#include "morphnet/parallel.hpp"

namespace morphnet {

const TrainedCacheEntry* TrainedCache::find(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

const TrainedCacheEntry& TrainedCache::insert(TrainedCacheEntry entry) {
  std::string key = entry.key;
  auto [it, fresh] = entries_.emplace(std::move(key), std::move(entry));
  if (!fresh) throw std::logic_error("cache already holds this window vector");
  return it->second;
}

std::string canonical_key(const WindowVector& wv) {
  std::ostringstream os;
  for (std::size_t i = 0; i < wv.depth(); ++i) {
    if (i > 0) os << '|';
    const Window& w = wv.window(i);
    os << w.side() << ':';
    for (PixelOffset p : w.points()) os << '(' << p.row << ',' << p.col << ')';
  }
  return os.str();
}

std::uint64_t derive_inner_seed(std::uint64_t base_seed, const std::string& key) {
  return mix_seed(base_seed, fnv1a64(key));
}

NetworkParams warm_start_init(const NetworkParams& prev, std::size_t changed_layer,
                              const Window& new_window, RandomStream& rng) {
  if (changed_layer >= prev.depth())
    throw std::invalid_argument("changed layer index out of range");
  std::vector<Layer> layers = prev.layers();
  layers[changed_layer] = Layer(new_window, random_truth_table(new_window, rng));
  return NetworkParams(std::move(layers));
}

TrainedOutcome train_window_vector(const WindowVector& wv, const std::optional<WarmStart>& warm,
                                   const SampleSet& train, const SampleSet& val,
                                   const FnTrainConfig& base_cfg) {
  std::string key = canonical_key(wv);
  FnTrainConfig cfg = base_cfg;
  cfg.seed = derive_inner_seed(base_cfg.seed, key);
  RandomStream init_rng = make_stream(cfg.seed, StreamId::Init);
  NetworkParams init =
      warm ? warm_start_init(warm->params, warm->changed_layer, wv.window(warm->changed_layer),
                             init_rng)
           : default_init(wv, init_rng);
  FnTrainResult fn = train_functions(wv, init, train, cfg);
  TrainedOutcome outcome;
  outcome.entry.key = std::move(key);
  outcome.entry.train_loss = fn.best_train_loss;
  outcome.entry.val_loss = mean_loss(fn.best_params, val.pairs);
  outcome.entry.params = fn.best_params;
  outcome.fn_result = std::move(fn);
  return outcome;
}

const TrainedCacheEntry& evaluate_window_vector(const WindowVector& wv,
                                                const std::optional<WarmStart>& warm,
                                                const SampleSet& train, const SampleSet& val,
                                                const FnTrainConfig& base_cfg, TrainedCache& cache,
                                                const TrainLogger& logger) {
  if (const TrainedCacheEntry* hit = cache.find(canonical_key(wv))) return *hit;
  TrainedOutcome outcome = train_window_vector(wv, warm, train, val, base_cfg);
  const TrainedCacheEntry& stored = cache.insert(std::move(outcome.entry));
  if (logger) logger(stored, outcome.fn_result);
  return stored;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double loss_on_batch(const NetworkParams& params, const SampleSet& val,
                     const std::vector<std::size_t>& batch) {
  double acc = 0.0;
  for (std::size_t idx : batch)
    acc += iou_error(forward(params, val.pairs[idx].input), val.pairs[idx].target);
  return acc / static_cast<double>(batch.size());
}

}  // namespace

WinSearchResult search_windows(const WindowVector& init_wv, const SampleSet& train,
                               const SampleSet& val, const WinSearchConfig& cfg,
                               TrainedCache* external_cache, const WinStepObserver& observer,
                               const TrainLogger& logger) {
  const std::size_t n_val = val.pairs.size();
  if (train.pairs.empty() || n_val == 0)
    throw std::invalid_argument("train and validation samples must be nonempty");
  if (cfg.neighbors_n < 1) throw std::invalid_argument("neighbors_n must be >= 1");
  if (cfg.batch_size < 1 || cfg.batch_size > n_val)
    throw std::invalid_argument("batch size must be in [1, N]");
  if (cfg.epochs < 1) throw std::invalid_argument("epochs must be >= 1");

  TrainedCache local_cache;
  TrainedCache& cache = external_cache ? *external_cache : local_cache;

  RandomStream shuffle_rng = make_stream(cfg.seed, StreamId::WinBatchShuffle);
  RandomStream neighbor_rng = make_stream(cfg.seed, StreamId::WinNeighborSample);
  RandomStream tie_rng = make_stream(cfg.seed, StreamId::WinTieBreak);
  auto start = std::chrono::steady_clock::now();

  WindowVector current_wv = init_wv;
  const TrainedCacheEntry* current =
      &evaluate_window_vector(current_wv, std::nullopt, train, val, cfg.fn, cache, logger);

  double best_loss = current->val_loss;
  WindowVector best_wv = current_wv;
  const TrainedCacheEntry* best = current;
  std::size_t epochs_to_min = 0;

  WinSearchResult result;
  result.history.reserve(cfg.epochs);

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    auto batches = shuffle_batch_indices(n_val, cfg.batch_size, shuffle_rng);
    for (std::size_t j = 0; j < batches.size(); ++j) {
      auto candidates = sample_window_moves(current_wv, cfg.neighbors_n, neighbor_rng);
      if (candidates.empty()) continue;  // window lattice has nowhere to move

      // Train every unseen candidate; pure per-candidate work, so the gather
      // is safe to parallelize and the insert order stays the sample order.
      std::vector<std::optional<TrainedOutcome>> fresh(candidates.size());
      parallel_for(candidates.size(), cfg.workers, [&](std::size_t i) {
        const auto& [move, wv] = candidates[i];
        if (cache.find(canonical_key(wv))) return;
        fresh[i] = train_window_vector(wv, WarmStart{current->params, move.layer_index}, train,
                                       val, cfg.fn);
      });

      std::vector<const TrainedCacheEntry*> entries(candidates.size());
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto& wv = candidates[i].second;
        if (const TrainedCacheEntry* hit = cache.find(canonical_key(wv))) {
          entries[i] = hit;
          continue;
        }
        const TrainedCacheEntry& stored = cache.insert(std::move(fresh[i]->entry));
        if (logger) logger(stored, fresh[i]->fn_result);
        entries[i] = &stored;
      }

      std::vector<double> losses(candidates.size());
      for (std::size_t i = 0; i < candidates.size(); ++i)
        losses[i] = loss_on_batch(entries[i]->params, val, batches[j]);

      double min_loss = losses[0];
      for (double l : losses) min_loss = std::min(min_loss, l);
      std::vector<std::size_t> minimizers;
      for (std::size_t i = 0; i < losses.size(); ++i)
        if (losses[i] == min_loss) minimizers.push_back(i);
      std::size_t pick =
          minimizers[static_cast<std::size_t>(tie_rng.next_below(minimizers.size()))];

      if (observer)
        observer({epoch, j, batches[j], current_wv, candidates[pick].second, losses[pick]});
      current_wv = candidates[pick].second;
      current = entries[pick];
    }

    double current_loss = current->val_loss;
    if (current_loss < best_loss) {
      best_loss = current_loss;
      best_wv = current_wv;
      best = current;
      epochs_to_min = epoch;
    }
    result.history.push_back({epoch, current_loss, best_loss, cache.size(), seconds_since(start)});
  }

  result.best_windows = std::move(best_wv);
  result.best_params = best->params;
  result.best_val_loss = best_loss;
  result.windows_visited = cache.size();
  result.epochs_to_min = epochs_to_min;
  return result;
}

}  // namespace morphnet
