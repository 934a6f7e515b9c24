#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "morphnet/data_io.hpp"

namespace morphnet {

// Exit statuses shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitInternal = 3;

// Environment variable supplying the default output directory.
inline constexpr const char* kOutDirEnvVar = "MORPHNET_OUT_DIR";

struct RunConfig {
  std::filesystem::path dataset;  // manifest file or dataset directory
  std::filesystem::path out_dir;

  // architecture
  int layers = 2;
  std::vector<int> sides = {3};  // one value broadcasts to every layer

  // function-level descent
  std::uint64_t fn_neighbors = 10;
  std::size_t fn_batch = 10;
  std::size_t fn_epochs = 50;
  // window-level descent (neighbor count 0 means the whole neighborhood)
  std::uint64_t win_neighbors = 0;
  std::size_t win_batch = 10;
  std::size_t win_epochs = 19;

  std::uint64_t seed = 1;
  bool deterministic = false;
  int workers = 1;
  // whether any sampling knob was given explicitly (deterministic mode owns them)
  bool fn_neighbors_set = false;
  bool fn_batch_set = false;
  bool win_neighbors_set = false;
  bool win_batch_set = false;

  GeneratorConfig gen;

  std::filesystem::path model;
  std::filesystem::path input;
  std::filesystem::path output;
  bool trace = false;

  int oracle_side = 3;
  std::size_t oracle_max_points = 2;
};

int run_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_train(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_apply(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace morphnet
