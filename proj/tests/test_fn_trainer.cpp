#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <numeric>

#include "morphnet/fn_trainer.hpp"
#include "morphnet/oracle.hpp"
#include "support.hpp"

using namespace morphnet;
using namespace morphnet::testing;

TEST_CASE("shuffle batches") {
  RandomStream rng(2);
  Layer truth = identity_layer();
  SampleSet set = generated_samples(truth, 10, 4, 4, rng);

  RandomStream s1(5);
  auto one = shuffle_batches(set.pairs, 10, s1);
  CHECK(one.size() == 1);
  CHECK(one[0].size() == 10);

  RandomStream s2(6);
  auto singletons = shuffle_batches(set.pairs, 1, s2);
  CHECK(singletons.size() == 10);
  for (const auto& b : singletons) CHECK(b.size() == 1);

  RandomStream s3(7);
  auto uneven = shuffle_batch_indices(10, 4, s3);
  CHECK(uneven.size() == 3);
  CHECK(uneven[0].size() == 4);
  CHECK(uneven[2].size() == 2);

  // partition: the union of batches is exactly the index set
  std::vector<std::size_t> all;
  for (const auto& b : uneven) all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> expected(10);
  std::iota(expected.begin(), expected.end(), std::size_t{0});
  CHECK(all == expected);

  CHECK_THROWS_AS(shuffle_batch_indices(10, 0, s3), std::invalid_argument);
}

TEST_CASE("default init") {
  WindowVector wv({Window::cross(3), Window(3, {{0, 0}, {0, 1}})});
  RandomStream a(9), b(9), c(10);
  NetworkParams p1 = default_init(wv, a);
  NetworkParams p2 = default_init(wv, b);
  NetworkParams p3 = default_init(wv, c);
  CHECK(p1 == p2);
  CHECK(p1 != p3);
  CHECK(p1.layer(0).table.size() == 32);
  CHECK(p1.layer(1).table.size() == 4);
  CHECK(p1.window_vector() == wv);
}

TEST_CASE("single greedy step fixes a one-flip error") {
  RandomStream rng(11);
  SampleSet set = generated_samples(identity_layer(), 6, 5, 5, rng);

  // start one flip away from the identity table [0,1]
  Window origin(3, {{0, 0}});
  TruthTable off(1);  // [0,0]
  NetworkParams init({Layer(origin, off)});

  FnTrainConfig cfg;
  cfg.neighbors_n = kFullNeighborhood;
  cfg.batch_size = set.pairs.size();
  cfg.epochs = 1;
  cfg.seed = 1;
  FnTrainResult result = train_functions(init.window_vector(), init, set, cfg);
  CHECK(result.best_train_loss == 0.0);
  CHECK(result.best_params.layer(0).table.bit(1));
  CHECK_FALSE(result.best_params.layer(0).table.bit(0));
  CHECK(result.epochs_to_min == 1);
}

TEST_CASE("recovers a hidden two-point table in deterministic mode") {
  RandomStream rng(13);
  Window two(3, {{0, 0}, {0, 1}});
  TruthTable hidden(2);
  hidden.set_bit(1, true);  // foreground iff (0,0) on and (0,1) off
  Layer truth(two, hidden);
  SampleSet set = generated_samples(truth, 5, 8, 8, rng);

  // exhaustive enumeration confirms zero loss is attainable on this data
  ExhaustiveResult oracle = exhaustive_single_layer(two, set);
  CHECK(oracle.min_loss == 0.0);

  RandomStream init_rng(17);
  NetworkParams init({Layer(two, TruthTable::random(2, init_rng))});
  FnTrainConfig cfg;
  cfg.neighbors_n = kFullNeighborhood;
  cfg.batch_size = set.pairs.size();
  cfg.epochs = 20;
  cfg.seed = 3;
  FnTrainResult result = train_functions(init.window_vector(), init, set, cfg);
  CHECK(result.best_train_loss == 0.0);
}

TEST_CASE("history bookkeeping") {
  RandomStream rng(19);
  Layer truth = random_layer(3, 3, rng);
  SampleSet set = generated_samples(truth, 7, 6, 6, rng);
  WindowVector wv({truth.window});
  RandomStream init_rng(23);
  NetworkParams init = default_init(wv, init_rng);

  FnTrainConfig cfg;
  cfg.neighbors_n = 4;
  cfg.batch_size = 3;
  cfg.epochs = 12;
  cfg.seed = 29;

  std::size_t moves = 0;
  std::vector<NetworkParams> visited{init};
  FnStepObserver observer = [&](const FnStepRecord& rec) {
    ++moves;
    CHECK(rec.batch.size() <= 3);
    // every move is one flip away from its predecessor
    std::uint64_t diff = 0;
    for (std::size_t i = 0; i < rec.before.depth(); ++i)
      for (std::uint64_t p = 0; p < rec.before.layer(i).table.size(); ++p)
        diff += rec.before.layer(i).table.bit(p) != rec.after.layer(i).table.bit(p);
    CHECK(diff == 1);
    visited.push_back(rec.after);
  };
  FnTrainResult result = train_functions(wv, init, set, cfg, observer);

  CHECK(moves == 12 * 3);  // ceil(7/3) = 3 batches per epoch
  CHECK(result.history.size() == 12);
  for (std::size_t i = 0; i < result.history.size(); ++i) {
    CHECK(result.history[i].epoch == i + 1);
    if (i > 0) CHECK(result.history[i].best_loss <= result.history[i - 1].best_loss);
    CHECK(result.history[i].best_loss <= result.history[i].current_loss);
  }
  CHECK(result.best_train_loss == mean_loss(result.best_params, set.pairs));
  // the returned point was actually visited
  CHECK(std::find(visited.begin(), visited.end(), result.best_params) != visited.end());
}

TEST_CASE("fixed seed reproduces the whole trajectory") {
  RandomStream rng(31);
  Layer truth = random_layer(3, 4, rng);
  SampleSet set = generated_samples(truth, 6, 6, 6, rng);
  WindowVector wv({truth.window});
  RandomStream init_rng(37);
  NetworkParams init = default_init(wv, init_rng);

  FnTrainConfig cfg;
  cfg.neighbors_n = 5;
  cfg.batch_size = 2;
  cfg.epochs = 6;
  cfg.seed = 41;

  auto run = [&](int workers) {
    FnTrainConfig c = cfg;
    c.workers = workers;
    std::vector<std::pair<double, NetworkParams>> steps;
    FnTrainResult r = train_functions(wv, init, set, c, [&](const FnStepRecord& rec) {
      steps.emplace_back(rec.selected_loss, rec.after);
    });
    return std::make_tuple(r.best_params, r.best_train_loss, steps);
  };
  auto [p1, l1, s1] = run(1);
  auto [p2, l2, s2] = run(1);
  auto [p4, l4, s4] = run(4);
  CHECK(p1 == p2);
  CHECK(l1 == l2);
  CHECK(s1 == s2);
  CHECK(p1 == p4);  // worker count changes nothing
  CHECK(l1 == l4);
  CHECK(s1 == s4);
}

TEST_CASE("config validation") {
  RandomStream rng(43);
  SampleSet set = generated_samples(identity_layer(), 4, 4, 4, rng);
  WindowVector wv({Window(3, {{0, 0}})});
  RandomStream init_rng(47);
  NetworkParams init = default_init(wv, init_rng);

  FnTrainConfig cfg;
  cfg.batch_size = 5;  // > N
  CHECK_THROWS_AS(train_functions(wv, init, set, cfg), std::invalid_argument);
  cfg.batch_size = 2;
  cfg.epochs = 0;
  CHECK_THROWS_AS(train_functions(wv, init, set, cfg), std::invalid_argument);
  cfg.epochs = 1;

  WindowVector other({Window::cross(3)});
  CHECK_THROWS_AS(train_functions(other, init, set, cfg), std::invalid_argument);
}
