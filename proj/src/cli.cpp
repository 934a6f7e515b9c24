#include "morphnet/cli.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "morphnet/oracle.hpp"
#include "morphnet/operator_eval.hpp"
#include "morphnet/window_search.hpp"

namespace morphnet {

namespace {

std::filesystem::path manifest_path(const std::filesystem::path& dataset) {
  if (std::filesystem::is_directory(dataset)) return dataset / "manifest.txt";
  return dataset;
}

std::string fmt_loss(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_seconds(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// usage errors -> 1, unreadable/invalid data -> 2, the rest -> 3
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

std::vector<int> broadcast_sides(const RunConfig& cfg) {
  if (cfg.layers < 1) throw std::invalid_argument("layer count must be >= 1");
  std::vector<int> sides = cfg.sides;
  if (sides.empty()) sides.assign(static_cast<std::size_t>(cfg.layers), 3);
  if (sides.size() == 1) sides.assign(static_cast<std::size_t>(cfg.layers), sides[0]);
  if (sides.size() != static_cast<std::size_t>(cfg.layers))
    throw std::invalid_argument("give one window side or one per layer");
  return sides;
}

}  // namespace

int run_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    DatasetManifest manifest = generate_dataset(cfg.gen, cfg.out_dir);
    out << "wrote " << manifest.train.size() << " train and " << manifest.validation.size()
        << " validation pairs under " << manifest.root.string() << "\n";
    return kExitOk;
  });
}

int run_train(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.deterministic &&
        (cfg.fn_neighbors_set || cfg.fn_batch_set || cfg.win_neighbors_set || cfg.win_batch_set))
      throw std::invalid_argument(
          "deterministic mode always uses the full neighborhood and full-sample batches; "
          "drop the explicit sampling flags");

    DatasetManifest manifest = load_manifest(manifest_path(cfg.dataset));
    SampleSet train = load_samples(manifest, SampleRole::Train);
    SampleSet val = load_samples(manifest, SampleRole::Validation);

    WinSearchConfig search;
    search.fn.neighbors_n = cfg.deterministic ? kFullNeighborhood : cfg.fn_neighbors;
    search.fn.batch_size = cfg.deterministic ? train.pairs.size() : cfg.fn_batch;
    search.fn.epochs = cfg.fn_epochs;
    search.fn.seed = cfg.seed;
    search.fn.workers = cfg.workers;
    search.neighbors_n =
        cfg.deterministic || cfg.win_neighbors == 0 ? kFullNeighborhood : cfg.win_neighbors;
    search.batch_size = cfg.deterministic ? val.pairs.size() : cfg.win_batch;
    search.epochs = cfg.win_epochs;
    search.seed = cfg.seed;
    search.workers = cfg.workers;

    std::vector<Window> init;
    auto sides = broadcast_sides(cfg);
    for (int side : sides) init.push_back(Window::cross(side));
    WindowVector init_wv(std::move(init));

    std::filesystem::create_directories(cfg.out_dir);
    std::filesystem::path metrics_file = cfg.out_dir / "metrics.csv";
    std::string run_id = "seed" + std::to_string(cfg.seed);

    double min_train = 2.0;
    std::size_t trainings = 0;
    std::size_t fn_epoch_sum = 0;
    TrainLogger logger = [&](const TrainedCacheEntry& entry, const FnTrainResult& fn) {
      min_train = std::min(min_train, entry.train_loss);
      ++trainings;
      fn_epoch_sum += fn.epochs_to_min;
      for (const EpochRecord& rec : fn.history)
        append_metrics({run_id, "fn", rec.epoch,
                        (train.pairs.size() + search.fn.batch_size - 1) / search.fn.batch_size,
                        rec.current_loss, rec.best_loss, std::nullopt, rec.elapsed_seconds},
                       metrics_file);
    };

    TrainedCache cache;
    WinSearchResult result = search_windows(init_wv, train, val, search, &cache, {}, logger);
    for (const WinEpochRecord& rec : result.history)
      append_metrics({run_id, "win", rec.epoch,
                      (val.pairs.size() + search.batch_size - 1) / search.batch_size,
                      rec.current_loss, rec.best_loss, rec.windows_visited, rec.elapsed_seconds},
                     metrics_file);

    save_model(result.best_params, cfg.out_dir / "model.txt");

    double learned_train = mean_loss(result.best_params, train.pairs);
    double total_seconds = result.history.empty() ? 0.0 : result.history.back().elapsed_seconds;
    double seconds_to_min =
        result.epochs_to_min == 0 ? 0.0 : result.history[result.epochs_to_min - 1].elapsed_seconds;
    double mean_fn_epochs =
        trainings == 0 ? 0.0 : static_cast<double>(fn_epoch_sum) / static_cast<double>(trainings);

    std::ostringstream summary;
    summary << "min_train_loss " << fmt_loss(min_train) << '\n'
            << "learned_train_loss " << fmt_loss(learned_train) << '\n'
            << "best_val_loss " << fmt_loss(result.best_val_loss) << '\n'
            << "epochs_to_min_windows " << result.epochs_to_min << '\n'
            << "mean_epochs_to_min_functions " << fmt_loss(mean_fn_epochs) << '\n'
            << "windows_visited " << result.windows_visited << '\n'
            << "total_seconds " << fmt_seconds(total_seconds) << '\n'
            << "seconds_to_min " << fmt_seconds(seconds_to_min) << '\n';
    std::ofstream summary_file(cfg.out_dir / "summary.txt");
    summary_file << summary.str();
    out << summary.str();
    return kExitOk;
  });
}

int run_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    NetworkParams params = load_model(cfg.model);
    DatasetManifest manifest = load_manifest(manifest_path(cfg.dataset));
    if (!manifest.train.empty()) {
      SampleSet train = load_samples(manifest, SampleRole::Train);
      out << "train " << fmt_loss(mean_loss(params, train.pairs)) << "\n";
    }
    if (!manifest.validation.empty()) {
      SampleSet val = load_samples(manifest, SampleRole::Validation);
      out << "validation " << fmt_loss(mean_loss(params, val.pairs)) << "\n";
    }
    return kExitOk;
  });
}

int run_apply(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    NetworkParams params = load_model(cfg.model);
    BinaryImage input = load_image(cfg.input);
    if (cfg.trace) {
      LayerTrace trace = forward_trace(params, input);
      std::filesystem::path stem = cfg.output;
      std::string ext = stem.extension().string();
      stem.replace_extension();
      for (std::size_t i = 0; i < trace.stages.size(); ++i) {
        std::filesystem::path stage_path =
            stem.string() + "_stage" + std::to_string(i) + ext;
        save_image(trace.stages[i], stage_path);
        out << "stage " << i << " -> " << stage_path.string() << "\n";
      }
      save_image(trace.stages.back(), cfg.output);
    } else {
      save_image(forward(params, input), cfg.output);
    }
    out << "output -> " << cfg.output.string() << "\n";
    return kExitOk;
  });
}

int run_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.oracle_max_points > 4)
      throw std::invalid_argument("exhaustive search supports at most 4 window points");
    DatasetManifest manifest = load_manifest(manifest_path(cfg.dataset));
    SampleSet train = load_samples(manifest, SampleRole::Train);

    double min_loss = 2.0;
    std::uint64_t tables = 0;
    std::size_t windows_examined = 0;
    std::vector<PixelOffset> best_window;
    TruthTable best_table;
    std::size_t minimizers = 0;
    for (auto& points : connected_subsets(cfg.oracle_side, cfg.oracle_max_points)) {
      Window window(cfg.oracle_side, points);
      ExhaustiveResult res = exhaustive_single_layer(window, train);
      ++windows_examined;
      tables += res.tables_examined;
      if (res.min_loss < min_loss) {
        min_loss = res.min_loss;
        best_window = points;
        best_table = res.best_tables.front();
        minimizers = res.best_tables.size();
      }
    }

    out << "windows_examined " << windows_examined << "\n";
    out << "tables_examined " << tables << "\n";
    out << "min_train_loss " << fmt_loss(min_loss) << "\n";
    out << "best_window side=" << cfg.oracle_side;
    for (PixelOffset p : best_window) out << " (" << p.row << "," << p.col << ")";
    out << "\n";
    out << "best_table " << best_table.to_hex() << "\n";
    out << "minimizing_tables " << minimizers << "\n";
    return kExitOk;
  });
}

}  // namespace morphnet
