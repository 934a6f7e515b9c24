#include <doctest.h>

#include <stdexcept>

#include <algorithm>

#include "morphnet/fn_trainer.hpp"
#include "morphnet/oracle.hpp"
#include "support.hpp"

using namespace morphnet;
using namespace morphnet::testing;

TEST_CASE("naive apply agrees with apply_layer") {
  RandomStream rng(3);
  for (int iter = 0; iter < 200; ++iter) {
    Layer layer = random_layer(5, 1 + rng.next_below(5), rng);
    BinaryImage img = random_image(8, 8, rng);
    CHECK(naive_apply(layer, img) == apply_layer(layer, img));
  }

  RandomStream rng2(4);
  BinaryImage img = random_image(9, 9, rng2);
  CHECK(naive_apply(identity_layer(), img) == img);

  Window cross = Window::cross(3);
  TruthTable ones(5);
  for (std::uint64_t p = 0; p < 32; ++p) ones.set_bit(p, true);
  CHECK(naive_apply(Layer(cross, ones), img) == BinaryImage::filled(9, 9, true));
}

TEST_CASE("exhaustive search on identity data") {
  RandomStream rng(5);
  Window two(3, {{0, 0}, {1, 0}});
  SampleSet set;
  for (int i = 0; i < 5; ++i) {
    BinaryImage img = random_image(8, 8, rng);
    set.pairs.emplace_back(img, img);
  }
  ExhaustiveResult res = exhaustive_single_layer(two, set);
  CHECK(res.tables_examined == 16);
  CHECK(res.min_loss == 0.0);
  // the identity table (bit set iff the origin is in the pattern) minimizes
  TruthTable identity(2);
  identity.set_bit(1, true);
  identity.set_bit(3, true);
  CHECK(std::find(res.best_tables.begin(), res.best_tables.end(), identity) !=
        res.best_tables.end());
}

TEST_CASE("exhaustive search recovers a hidden table") {
  RandomStream rng(7);
  Window two(3, {{0, 0}, {0, 1}});
  TruthTable hidden(2);
  hidden.set_bit(1, true);
  hidden.set_bit(2, true);
  Layer truth(two, hidden);
  SampleSet set = generated_samples(truth, 5, 8, 8, rng);

  ExhaustiveResult res = exhaustive_single_layer(two, set);
  CHECK(res.min_loss == 0.0);
  CHECK(std::find(res.best_tables.begin(), res.best_tables.end(), hidden) !=
        res.best_tables.end());

  // the oracle's scoring matches the straightforward evaluation
  for (const TruthTable& t : res.best_tables)
    CHECK(mean_loss(NetworkParams({Layer(two, t)}), set.pairs) == res.min_loss);
}

TEST_CASE("exhaustive minimum bounds any descent result") {
  RandomStream rng(21);
  Window three(3, {{0, 0}, {0, 1}, {1, 0}});
  Layer truth(three, TruthTable::random(3, rng));
  SampleSet set = generated_samples(truth, 5, 8, 8, rng);
  // corrupt one target pixel so zero loss need not be attainable
  set.pairs[0].target.set(0, 0, !set.pairs[0].target.get(0, 0));

  ExhaustiveResult oracle = exhaustive_single_layer(three, set);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RandomStream init_rng(seed);
    NetworkParams init({Layer(three, TruthTable::random(3, init_rng))});
    FnTrainConfig cfg;
    cfg.neighbors_n = 6;
    cfg.batch_size = 2;
    cfg.epochs = 10;
    cfg.seed = seed;
    FnTrainResult r = train_functions(init.window_vector(), init, set, cfg);
    CHECK(oracle.min_loss <= r.best_train_loss);
  }
}

TEST_CASE("exhaustive search limits") {
  RandomStream rng(9);
  SampleSet set = generated_samples(identity_layer(), 2, 5, 5, rng);

  Window one(3, {{0, 0}});
  ExhaustiveResult res = exhaustive_single_layer(one, set);
  CHECK(res.tables_examined == 4);

  Window five = Window::cross(3);
  CHECK_THROWS_AS(exhaustive_single_layer(five, set), std::invalid_argument);
}

TEST_CASE("is_local_min") {
  RandomStream rng(11);
  Window two(3, {{0, 0}, {0, 1}});
  TruthTable hidden(2);
  hidden.set_bit(2, true);
  Layer truth(two, hidden);
  SampleSet set = generated_samples(truth, 4, 8, 8, rng);

  // global minimizers are local minima
  ExhaustiveResult res = exhaustive_single_layer(two, set);
  for (const TruthTable& t : res.best_tables)
    CHECK(is_local_min(NetworkParams({Layer(two, t)}), set));

  // a point one flip from the optimum with strictly positive loss is not
  NetworkParams perfect({truth});
  REQUIRE(mean_loss(perfect, set.pairs) == 0.0);
  NeighborDescriptor d{MoveKind::FunctionFlip, 0, 0, {}};
  NetworkParams worse = apply_function_flip(perfect, d);
  if (mean_loss(worse, set.pairs) > 0.0) CHECK_FALSE(is_local_min(worse, set));

  // constant table on constant data matching it
  SampleSet blank;
  for (int i = 0; i < 2; ++i) blank.pairs.emplace_back(BinaryImage(4, 4), BinaryImage(4, 4));
  NetworkParams allzero({Layer(Window(3, {{0, 0}}), TruthTable(1))});
  CHECK(is_local_min(allzero, blank));
}

TEST_CASE("connected subsets enumeration") {
  auto subsets = connected_subsets(3, 2);
  // 9 singletons plus every adjacent pair: 4 rook pairs both ways... count
  // by hand: horizontal 6, vertical 6, diagonal 8 -> 20 pairs, 29 total
  CHECK(subsets.size() == 29);
  for (const auto& s : subsets) {
    CHECK(is_connected(s));
    CHECK(s.size() <= 2);
  }
  CHECK_THROWS_AS(connected_subsets(4, 2), std::invalid_argument);
}
