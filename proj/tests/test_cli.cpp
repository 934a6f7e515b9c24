#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "morphnet/cli.hpp"
#include "morphnet/oracle.hpp"
#include "morphnet/operator_eval.hpp"
#include "morphnet/window_search.hpp"
#include "support.hpp"

using namespace morphnet;
using namespace morphnet::testing;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("morphnet_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// tiny dataset from a known single-layer operator, saved to disk
DatasetManifest write_dataset(const fs::path& root, const Layer& truth, int count, int side,
                              std::uint64_t seed) {
  RandomStream rng(seed);
  fs::create_directories(root / "inputs");
  fs::create_directories(root / "targets");
  DatasetManifest manifest;
  manifest.root = root;
  for (int i = 0; i < 2 * count; ++i) {
    BinaryImage input = random_image(side, side, rng);
    BinaryImage target = apply_layer(truth, input);
    fs::path in = fs::path("inputs") / ("s" + std::to_string(i) + ".pbm");
    fs::path tg = fs::path("targets") / ("s" + std::to_string(i) + ".pbm");
    save_image(input, root / in);
    save_image(target, root / tg);
    (i < count ? manifest.train : manifest.validation).push_back({in, tg});
  }
  save_manifest(manifest, root / "manifest.txt");
  return manifest;
}

int run(int (*cmd)(const RunConfig&, std::ostream&, std::ostream&), const RunConfig& cfg,
        std::string* out_text = nullptr) {
  std::ostringstream out, err;
  int code = cmd(cfg, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

double parse_field(const std::string& text, const std::string& field) {
  std::istringstream in(text);
  std::string key;
  double value;
  while (in >> key >> value)
    if (key == field) return value;
  FAIL("field not found: " << field);
  return -1.0;
}

}  // namespace

TEST_CASE("generate then eval and apply") {
  fs::path dir = temp_dir("pipeline");

  RunConfig gen;
  gen.out_dir = dir / "data";
  gen.gen.frame_side = 28;
  gen.gen.train_count = 3;
  gen.gen.val_count = 3;
  gen.gen.noise_p = 0.0;
  gen.gen.seed = 5;
  REQUIRE(run(run_generate, gen) == kExitOk);
  REQUIRE(fs::exists(dir / "data" / "manifest.txt"));

  // identity model evaluated on identity data scores zero
  fs::path id_dataset = dir / "iddata";
  write_dataset(id_dataset, identity_layer(), 3, 10, 7);
  fs::path id_model = dir / "identity.txt";
  save_model(NetworkParams({identity_layer()}), id_model);

  RunConfig eval;
  eval.model = id_model;
  eval.dataset = id_dataset;
  std::string text;
  REQUIRE(run(run_eval, eval, &text) == kExitOk);
  CHECK(parse_field(text, "train") == 0.0);
  CHECK(parse_field(text, "validation") == 0.0);

  // a constant-0 model against nonempty targets scores one
  fs::path zero_model = dir / "zero.txt";
  save_model(NetworkParams({Layer(Window::cross(3), TruthTable(5))}), zero_model);
  eval.model = zero_model;
  eval.dataset = dir / "data";
  REQUIRE(run(run_eval, eval, &text) == kExitOk);
  CHECK(parse_field(text, "train") == 1.0);

  eval.model = dir / "missing.txt";
  CHECK(run(run_eval, eval) == kExitData);

  // apply: identity returns the input, trace writes depth+1 stages
  RandomStream rng(9);
  BinaryImage img = random_image(17, 12, rng);  // any frame size goes
  fs::path input = dir / "input.pbm";
  save_image(img, input);

  RunConfig apply;
  apply.model = id_model;
  apply.input = input;
  apply.output = dir / "out.pbm";
  REQUIRE(run(run_apply, apply) == kExitOk);
  CHECK(load_image(dir / "out.pbm") == img);

  fs::path two_model = dir / "two.txt";
  save_model(NetworkParams({identity_layer(), identity_layer()}), two_model);
  apply.model = two_model;
  apply.trace = true;
  apply.output = dir / "traced.pbm";
  REQUIRE(run(run_apply, apply) == kExitOk);
  CHECK(fs::exists(dir / "traced_stage0.pbm"));
  CHECK(fs::exists(dir / "traced_stage1.pbm"));
  CHECK(fs::exists(dir / "traced_stage2.pbm"));
  CHECK_FALSE(fs::exists(dir / "traced_stage3.pbm"));
  CHECK(load_image(dir / "traced.pbm") == img);
}

TEST_CASE("train writes a model the eval command agrees with") {
  fs::path dir = temp_dir("train");
  Window two(3, {{0, 0}, {0, 1}});
  TruthTable hidden(2);
  hidden.set_bit(2, true);
  write_dataset(dir / "data", Layer(two, hidden), 4, 8, 11);

  RunConfig train;
  train.dataset = dir / "data";
  train.out_dir = dir / "run";
  train.layers = 1;
  train.sides = {3};
  train.fn_neighbors = 4;
  train.fn_batch = 2;
  train.fn_epochs = 4;
  train.win_neighbors = 3;
  train.win_batch = 2;
  train.win_epochs = 2;
  train.seed = 13;
  std::string summary;
  REQUIRE(run(run_train, train, &summary) == kExitOk);
  REQUIRE(fs::exists(dir / "run" / "model.txt"));
  REQUIRE(fs::exists(dir / "run" / "metrics.csv"));
  REQUIRE(fs::exists(dir / "run" / "summary.txt"));

  RunConfig eval;
  eval.model = dir / "run" / "model.txt";
  eval.dataset = dir / "data";
  std::string text;
  REQUIRE(run(run_eval, eval, &text) == kExitOk);
  CHECK(parse_field(summary, "learned_train_loss") == parse_field(text, "train"));
  CHECK(parse_field(summary, "best_val_loss") == parse_field(text, "validation"));

  // deterministic mode owns the sampling knobs
  RunConfig det = train;
  det.deterministic = true;
  det.fn_neighbors_set = true;
  CHECK(run(run_train, det) == kExitUsage);
  det.fn_neighbors_set = false;
  det.out_dir = dir / "det";
  CHECK(run(run_train, det) == kExitOk);

  RunConfig missing = train;
  missing.dataset = dir / "nowhere";
  CHECK(run(run_train, missing) == kExitData);

  // metrics log sanity: losses inside [0,1], elapsed monotone per phase
  std::ifstream log(dir / "run" / "metrics.csv");
  std::string line;
  std::getline(log, line);  // header
  double last_fn = 0.0, last_win = 0.0;
  while (std::getline(log, line)) {
    std::istringstream fields(line);
    std::string run_id, phase, cell;
    std::getline(fields, run_id, ',');
    std::getline(fields, phase, ',');
    std::getline(fields, cell, ',');  // epoch
    std::getline(fields, cell, ',');  // batch count
    std::getline(fields, cell, ',');
    double current = std::stod(cell);
    std::getline(fields, cell, ',');
    double best = std::stod(cell);
    CHECK(current >= 0.0);
    CHECK(current <= 1.0);
    CHECK(best >= 0.0);
    CHECK(best <= current + 1e-15);
    std::getline(fields, cell, ',');  // windows visited
    std::getline(fields, cell, ',');
    double elapsed = std::stod(cell);
    double& last = phase == "fn" ? last_fn : last_win;
    if (phase == "fn" && std::stoi(line.substr(line.find(",fn,") + 4)) == 1)
      last = 0.0;  // a new inner training starts its own clock
    CHECK(elapsed >= last - 1e-9);
    last = elapsed;
  }
}

TEST_CASE("generate refuses an unusable output path") {
  fs::path dir = temp_dir("gen_badpath");
  std::ofstream(dir / "file") << "x";
  RunConfig gen;
  gen.out_dir = dir / "file" / "nested";  // parent is a regular file
  CHECK(run(run_generate, gen) != kExitOk);
}

TEST_CASE("generate defaults match the experiment layout") {
  fs::path dir = temp_dir("gen_defaults");
  RunConfig gen;
  gen.out_dir = dir;
  gen.gen.seed = 2;
  REQUIRE(run(run_generate, gen) == kExitOk);
  DatasetManifest manifest = load_manifest(dir / "manifest.txt");
  CHECK(manifest.train.size() == 10);
  CHECK(manifest.validation.size() == 10);
  SampleSet val = load_samples(manifest, SampleRole::Validation);
  for (const SamplePair& pair : val.pairs) {
    CHECK(pair.input.height() == 56);
    CHECK(pair.input.width() == 56);
  }
}

TEST_CASE("oracle command") {
  fs::path dir = temp_dir("oracle");
  Window two(3, {{0, 0}, {0, 1}});
  TruthTable hidden(2);
  hidden.set_bit(1, true);
  write_dataset(dir / "data", Layer(two, hidden), 4, 8, 17);

  RunConfig cfg;
  cfg.dataset = dir / "data";
  cfg.oracle_side = 3;
  cfg.oracle_max_points = 2;
  std::string text;
  REQUIRE(run(run_oracle, cfg, &text) == kExitOk);
  CHECK(parse_field(text, "min_train_loss") == 0.0);  // the hidden window is in range

  cfg.oracle_max_points = 5;
  CHECK(run(run_oracle, cfg) == kExitUsage);
}

TEST_CASE("cli binary end to end") {
  fs::path dir = temp_dir("binary");
  std::string cli = MORPHNET_CLI_PATH;

  auto shell = [&](const std::string& args) {
    return std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
  };
  CHECK(shell("generate --out " + (dir / "data").string() +
              " --frame 28 --train-count 2 --val-count 2 --seed 3") == 0);
  CHECK(shell("eval --model /nonexistent --dataset " + (dir / "data").string()) != 0);
  CHECK(shell("bogus-subcommand") != 0);
  CHECK(shell("--help") == 0);

  // the environment variable supplies the default output directory
  fs::path env_out = dir / "env_data";
  std::string env_cmd = "MORPHNET_OUT_DIR=" + env_out.string() + " " + cli +
                        " generate --frame 28 --train-count 1 --val-count 1 --seed 4"
                        " > /dev/null 2>&1";
  CHECK(std::system(env_cmd.c_str()) == 0);
  CHECK(fs::exists(env_out / "manifest.txt"));
}
