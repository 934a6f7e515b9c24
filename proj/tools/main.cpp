#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "morphnet/cli.hpp"

namespace {

std::filesystem::path default_out_dir() {
  if (const char* env = std::getenv(morphnet::kOutDirEnvVar)) return env;
  return ".";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential networks of window operators on binary images, trained by\n"
               "stochastic lattice gradient descent over truth tables and windows."};
  app.require_subcommand(1);

  morphnet::RunConfig cfg;
  cfg.out_dir = default_out_dir();
  cfg.gen.seed = 1;

  auto* generate = app.add_subcommand("generate", "Write a synthetic noisy-digit-boundary dataset");
  generate->add_option("--out", cfg.out_dir, "Dataset directory")->capture_default_str();
  generate->add_option("--frame", cfg.gen.frame_side, "Image side in pixels")->capture_default_str();
  generate->add_option("--digits", cfg.gen.digits, "Digits to cycle through")->capture_default_str();
  generate->add_option("--train-count", cfg.gen.train_count, "Training pairs")->capture_default_str();
  generate->add_option("--val-count", cfg.gen.val_count, "Validation pairs")->capture_default_str();
  generate->add_option("--noise", cfg.gen.noise_p, "Per-pixel flip probability")->capture_default_str();
  generate->add_option("--seed", cfg.gen.seed, "Generator seed")->capture_default_str();

  auto* train = app.add_subcommand("train", "Learn windows and truth tables from a dataset");
  train->add_option("--dataset", cfg.dataset, "Manifest file or dataset directory")->required();
  train->add_option("--out", cfg.out_dir, "Output directory for model, metrics, summary")
      ->capture_default_str();
  train->add_option("--layers", cfg.layers, "Network depth")->capture_default_str();
  train->add_option("--side", cfg.sides, "Window side d per layer (one value broadcasts)")
      ->capture_default_str();
  auto* fn_n = train->add_option("--fn-neighbors", cfg.fn_neighbors,
                                 "Flip neighbors sampled per batch step");
  fn_n->capture_default_str();
  auto* fn_b = train->add_option("--fn-batch", cfg.fn_batch, "Training batch size");
  fn_b->capture_default_str();
  train->add_option("--fn-epochs", cfg.fn_epochs, "Inner-loop epochs")->capture_default_str();
  auto* win_n = train->add_option("--win-neighbors", cfg.win_neighbors,
                                  "Window neighbors sampled per step (0 = all)");
  win_n->capture_default_str();
  auto* win_b = train->add_option("--win-batch", cfg.win_batch, "Validation batch size");
  win_b->capture_default_str();
  train->add_option("--win-epochs", cfg.win_epochs, "Window-search epochs")->capture_default_str();
  train->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  train->add_option("--workers", cfg.workers, "Parallel candidate evaluations")
      ->capture_default_str();
  std::string mode = "stochastic";
  train->add_option("--mode", mode, "stochastic | deterministic")
      ->check(CLI::IsMember({"stochastic", "deterministic"}))
      ->capture_default_str();

  auto* eval = app.add_subcommand("eval", "Mean IoU error of a model per dataset role");
  eval->add_option("--model", cfg.model, "Model file")->required();
  eval->add_option("--dataset", cfg.dataset, "Manifest file or dataset directory")->required();

  auto* apply = app.add_subcommand("apply", "Run a model on one image");
  apply->add_option("--model", cfg.model, "Model file")->required();
  apply->add_option("--input", cfg.input, "Input image (.pbm or .png)")->required();
  apply->add_option("--output", cfg.output, "Output image path")->required();
  apply->add_flag("--trace", cfg.trace, "Also write every layer's output");

  auto* oracle = app.add_subcommand("oracle",
                                    "Exhaustive single-layer search over connected windows");
  oracle->add_option("--dataset", cfg.dataset, "Manifest file or dataset directory")->required();
  oracle->add_option("--side", cfg.oracle_side, "Frame side d")->capture_default_str();
  oracle->add_option("--max-points", cfg.oracle_max_points, "Largest window size (<= 4)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? morphnet::kExitOk : morphnet::kExitUsage;
  }

  cfg.deterministic = mode == "deterministic";
  cfg.fn_neighbors_set = fn_n->count() > 0;
  cfg.fn_batch_set = fn_b->count() > 0;
  cfg.win_neighbors_set = win_n->count() > 0;
  cfg.win_batch_set = win_b->count() > 0;

  if (generate->parsed()) return morphnet::run_generate(cfg, std::cout, std::cerr);
  if (train->parsed()) return morphnet::run_train(cfg, std::cout, std::cerr);
  if (eval->parsed()) return morphnet::run_eval(cfg, std::cout, std::cerr);
  if (apply->parsed()) return morphnet::run_apply(cfg, std::cout, std::cerr);
  if (oracle->parsed()) return morphnet::run_oracle(cfg, std::cout, std::cerr);
  return morphnet::kExitUsage;
}
