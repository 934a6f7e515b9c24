#include "morphnet/fn_trainer.hpp"

#include <chrono>
#include <numeric>
#include <stdexcept>

#include "morphnet/parallel.hpp"

namespace morphnet {

std::vector<std::vector<std::size_t>> shuffle_batch_indices(std::size_t count, std::size_t b,
                                                            RandomStream& rng) {
  if (b < 1) throw std::invalid_argument("batch size must be >= 1");
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  fisher_yates(order, rng);
  std::vector<std::vector<std::size_t>> batches;
  for (std::size_t start = 0; start < count; start += b) {
    std::size_t end = std::min(count, start + b);
    batches.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return batches;
}

std::vector<std::vector<SamplePair>> shuffle_batches(std::span<const SamplePair> pairs,
                                                     std::size_t b, RandomStream& rng) {
  std::vector<std::vector<SamplePair>> out;
  for (const auto& batch : shuffle_batch_indices(pairs.size(), b, rng)) {
    std::vector<SamplePair> materialized;
    materialized.reserve(batch.size());
    for (std::size_t idx : batch) materialized.push_back(pairs[idx]);
    out.push_back(std::move(materialized));
  }
  return out;
}

NetworkParams default_init(const WindowVector& windows, RandomStream& rng) {
  std::vector<Layer> layers;
  layers.reserve(windows.depth());
  for (const Window& w : windows.windows()) {
    RandomStream layer_stream(rng.next_u64());
    layers.emplace_back(w, random_truth_table(w, layer_stream));
  }
  return NetworkParams(std::move(layers));
}

namespace {

void check_config(const FnTrainConfig& cfg, std::size_t sample_size) {
  if (cfg.neighbors_n < 1) throw std::invalid_argument("neighbors_n must be >= 1");
  if (cfg.batch_size < 1 || cfg.batch_size > sample_size)
    throw std::invalid_argument("batch size must be in [1, N]");
  if (cfg.epochs < 1) throw std::invalid_argument("epochs must be >= 1");
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

FnTrainResult train_functions(const WindowVector& windows, const NetworkParams& init,
                              const SampleSet& train, const FnTrainConfig& cfg,
                              const FnStepObserver& observer) {
  const std::size_t n_pairs = train.pairs.size();
  if (n_pairs == 0) throw std::invalid_argument("training sample must be nonempty");
  check_config(cfg, n_pairs);
  if (init.window_vector() != windows)
    throw std::invalid_argument("initial point must use the given windows");

  RandomStream shuffle_rng = make_stream(cfg.seed, StreamId::BatchShuffle);
  RandomStream neighbor_rng = make_stream(cfg.seed, StreamId::NeighborSample);
  RandomStream tie_rng = make_stream(cfg.seed, StreamId::TieBreak);
  auto start = std::chrono::steady_clock::now();

  NetworkParams theta = init;
  double best_loss = mean_loss(theta, train.pairs);
  NetworkParams best_params = theta;
  std::size_t epochs_to_min = 0;

  FnTrainResult result;
  result.history.reserve(cfg.epochs);

  std::vector<SamplePair> batch_pairs;
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    auto batches = shuffle_batch_indices(n_pairs, cfg.batch_size, shuffle_rng);
    for (std::size_t j = 0; j < batches.size(); ++j) {
      const auto& batch = batches[j];
      batch_pairs.clear();
      batch_pairs.reserve(batch.size());
      for (std::size_t idx : batch) batch_pairs.push_back(train.pairs[idx]);

      auto candidates = sample_function_neighbors(theta, cfg.neighbors_n, neighbor_rng);
      std::vector<double> losses(candidates.size());
      parallel_for(candidates.size(), cfg.workers, [&](std::size_t i) {
        losses[i] = mean_loss(apply_function_flip(theta, candidates[i]), batch_pairs);
      });

      double min_loss = losses[0];
      for (double l : losses) min_loss = std::min(min_loss, l);
      std::vector<std::size_t> minimizers;
      for (std::size_t i = 0; i < losses.size(); ++i)
        if (losses[i] == min_loss) minimizers.push_back(i);
      std::size_t pick =
          minimizers[static_cast<std::size_t>(tie_rng.next_below(minimizers.size()))];

      NetworkParams moved = apply_function_flip(theta, candidates[pick]);
      if (observer) observer({epoch, j, batch, theta, moved, losses[pick]});
      theta = std::move(moved);
    }

    double current = mean_loss(theta, train.pairs);
    if (current < best_loss) {
      best_loss = current;
      best_params = theta;
      epochs_to_min = epoch;
    }
    result.history.push_back({epoch, current, best_loss, seconds_since(start)});
  }

  result.best_params = std::move(best_params);
  result.best_train_loss = best_loss;
  result.epochs_to_min = epochs_to_min;
  return result;
}

}  // namespace morphnet
