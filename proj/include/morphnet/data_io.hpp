#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "morphnet/image.hpp"
#include "morphnet/loss.hpp"
#include "morphnet/network.hpp"

namespace morphnet {

// File content the reader cannot accept; carries the offending path.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::filesystem::path path, const std::string& message);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Readers dispatch on content (P1, P4, PNG signature); writers on extension
// (.pbm packed, .png 8-bit grayscale).  PNG loads threshold at >= 128.
BinaryImage load_image(const std::filesystem::path& path);
void save_image(const BinaryImage& image, const std::filesystem::path& path);

enum class PbmVariant { Plain, Raw };
void save_pbm(const BinaryImage& image, const std::filesystem::path& path, PbmVariant variant);
void save_png(const BinaryImage& image, const std::filesystem::path& path);

// Versioned text model format, canonical: serializing a parsed file
// reproduces it byte for byte.
std::string model_to_string(const NetworkParams& params);
NetworkParams model_from_string(const std::string& text, const std::filesystem::path& context);
void save_model(const NetworkParams& params, const std::filesystem::path& path);
NetworkParams load_model(const std::filesystem::path& path);

struct ManifestEntry {
  std::filesystem::path input;   // relative to the manifest directory
  std::filesystem::path target;
};

struct DatasetManifest {
  std::filesystem::path root;
  std::vector<ManifestEntry> train;
  std::vector<ManifestEntry> validation;
};

void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);
DatasetManifest load_manifest(const std::filesystem::path& path);

// Loads one role's images, checking that every pair shares a frame.
SampleSet load_samples(const DatasetManifest& manifest, SampleRole role);

struct GeneratorConfig {
  int frame_side = 56;
  std::string digits = "0123456789";   // glyphs to cycle through
  int train_count = 10;
  int val_count = 10;
  double noise_p = 0.05;  // independent per-pixel flip probability
  std::uint64_t seed = 0;
};

// Inner boundary: the image minus its erosion by the 3x3 cross.
BinaryImage inner_boundary(const BinaryImage& image);

// Writes inputs/, targets/ and manifest.txt under root: per sample a clean
// digit glyph gives the target boundary, and the input is the glyph with
// salt-and-pepper noise.  A pure function of the config.
DatasetManifest generate_dataset(const GeneratorConfig& cfg, const std::filesystem::path& root);

struct MetricsRecord {
  std::string run_id;
  std::string phase;  // "fn" or "win"
  std::size_t epoch = 0;
  std::size_t batch_count = 0;
  double current_loss = 0.0;
  double best_loss = 0.0;
  std::optional<std::size_t> windows_visited;  // win phase only
  double elapsed_seconds = 0.0;
};

// Appends one CSV line, writing the header first on a fresh file.
void append_metrics(const MetricsRecord& record, const std::filesystem::path& path);

}  // namespace morphnet
