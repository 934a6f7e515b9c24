#include "morphnet/data_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

#include "morphnet/operator_eval.hpp"
#include "morphnet/rng.hpp"

namespace morphnet {

FormatError::FormatError(std::filesystem::path path, const std::string& message)
    : std::runtime_error(path.string() + ": " + message), path_(std::move(path)) {}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path, "cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(path, "cannot open for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw FormatError(path, "write failed");
}

// --- portable bitmap -------------------------------------------------------

// Whitespace/comment-skipping tokenizer for PBM headers and plain rasters.
class PbmScanner {
 public:
  PbmScanner(const std::string& data, const std::filesystem::path& path)
      : data_(data), path_(path) {}

  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      char c = data_[pos_];
      if (c == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  int next_int() {
    skip_space_and_comments();
    std::size_t start = pos_;
    while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) ++pos_;
    if (pos_ == start) throw FormatError(path_, "expected an integer in bitmap header");
    long v = std::strtol(data_.c_str() + start, nullptr, 10);
    if (v <= 0 || v > 1 << 20) throw FormatError(path_, "bitmap dimension out of range");
    return static_cast<int>(v);
  }

  int next_plain_bit() {
    skip_space_and_comments();
    if (pos_ >= data_.size()) throw FormatError(path_, "bitmap raster is truncated");
    char c = data_[pos_++];
    if (c != '0' && c != '1') throw FormatError(path_, "plain bitmap raster must be 0s and 1s");
    return c - '0';
  }

  std::size_t pos() const { return pos_; }

 private:
  const std::string& data_;
  const std::filesystem::path& path_;
  std::size_t pos_ = 0;
};

BinaryImage load_pbm(const std::string& data, const std::filesystem::path& path) {
  if (data.size() < 2 || data[0] != 'P' || (data[1] != '1' && data[1] != '4'))
    throw FormatError(path, "not a portable bitmap");
  bool raw = data[1] == '4';
  std::string body = data.substr(2);
  PbmScanner header(body, path);
  int width = header.next_int();
  int height = header.next_int();
  BinaryImage img(height, width);
  if (!raw) {
    for (int r = 0; r < height; ++r)
      for (int c = 0; c < width; ++c)
        if (header.next_plain_bit()) img.set(r, c, true);
    return img;
  }
  // raw raster starts after exactly one whitespace byte past the header
  std::size_t raster = 2 + header.pos() + 1;
  std::size_t row_bytes = static_cast<std::size_t>((width + 7) / 8);
  if (raster + row_bytes * static_cast<std::size_t>(height) > data.size())
    throw FormatError(path, "bitmap raster is truncated");
  for (int r = 0; r < height; ++r) {
    const unsigned char* row =
        reinterpret_cast<const unsigned char*>(data.data()) + raster + row_bytes * static_cast<std::size_t>(r);
    for (int c = 0; c < width; ++c)
      if ((row[c >> 3] >> (7 - (c & 7))) & 1) img.set(r, c, true);  // MSB first
  }
  return img;
}

// --- png --------------------------------------------------------------------

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FileHandle = std::unique_ptr<std::FILE, FileCloser>;

BinaryImage load_png_file(const std::filesystem::path& path) {
  FileHandle file(std::fopen(path.c_str(), "rb"));
  if (!file) throw FormatError(path, "cannot open for reading");

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw FormatError(path, "libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw FormatError(path, "libpng init failed");
  }
  std::vector<png_bytep> row_ptrs;
  std::vector<unsigned char> pixels;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError(path, "corrupt PNG stream");
  }
  png_init_io(png, file.get());
  png_read_info(png, info);
  png_uint_32 width = png_get_image_width(png, info);
  png_uint_32 height = png_get_image_height(png, info);
  int depth = png_get_bit_depth(png, info);
  int color = png_get_color_type(png, info);
  if (depth != 8 || color != PNG_COLOR_TYPE_GRAY) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError(path, "expected an 8-bit grayscale PNG");
  }
  pixels.resize(static_cast<std::size_t>(width) * height);
  row_ptrs.resize(height);
  for (png_uint_32 r = 0; r < height; ++r)
    row_ptrs[r] = pixels.data() + static_cast<std::size_t>(r) * width;
  png_read_image(png, row_ptrs.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  BinaryImage img(static_cast<int>(height), static_cast<int>(width));
  for (png_uint_32 r = 0; r < height; ++r)
    for (png_uint_32 c = 0; c < width; ++c)
      if (pixels[static_cast<std::size_t>(r) * width + c] >= 128)
        img.set(static_cast<int>(r), static_cast<int>(c), true);
  return img;
}

}  // namespace

void save_pbm(const BinaryImage& image, const std::filesystem::path& path, PbmVariant variant) {
  std::string out;
  if (variant == PbmVariant::Plain) {
    out = "P1\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n";
    for (int r = 0; r < image.height(); ++r) {
      for (int c = 0; c < image.width(); ++c) {
        out += image.get(r, c) ? '1' : '0';
        out += c + 1 == image.width() ? '\n' : ' ';
      }
    }
  } else {
    out = "P4\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n";
    std::size_t row_bytes = static_cast<std::size_t>((image.width() + 7) / 8);
    std::string raster(row_bytes * static_cast<std::size_t>(image.height()), '\0');
    for (int r = 0; r < image.height(); ++r)
      for (int c = 0; c < image.width(); ++c)
        if (image.get(r, c))
          raster[row_bytes * static_cast<std::size_t>(r) + static_cast<std::size_t>(c >> 3)] |=
              static_cast<char>(1 << (7 - (c & 7)));
    out += raster;
  }
  write_file(path, out);
}

void save_png(const BinaryImage& image, const std::filesystem::path& path) {
  FileHandle file(std::fopen(path.c_str(), "wb"));
  if (!file) throw FormatError(path, "cannot open for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw FormatError(path, "libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw FormatError(path, "libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw FormatError(path, "PNG write failed");
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width()),
               static_cast<png_uint_32>(image.height()), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<unsigned char> row(static_cast<std::size_t>(image.width()));
  for (int r = 0; r < image.height(); ++r) {
    for (int c = 0; c < image.width(); ++c) row[static_cast<std::size_t>(c)] = image.get(r, c) ? 255 : 0;
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

BinaryImage load_image(const std::filesystem::path& path) {
  std::string data = read_file(path);
  if (data.size() >= 2 && data[0] == 'P' && (data[1] == '1' || data[1] == '4'))
    return load_pbm(data, path);
  static const unsigned char png_sig[4] = {0x89, 'P', 'N', 'G'};
  if (data.size() >= 4 && std::memcmp(data.data(), png_sig, 4) == 0) return load_png_file(path);
  throw FormatError(path, "unsupported image format");
}

void save_image(const BinaryImage& image, const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  if (ext == ".pbm")
    save_pbm(image, path, PbmVariant::Raw);
  else if (ext == ".png")
    save_png(image, path);
  else
    throw FormatError(path, "unsupported image extension (use .pbm or .png)");
}

// --- model ------------------------------------------------------------------

namespace {
constexpr const char* kModelMagic = "morphnet model v1";
}

std::string model_to_string(const NetworkParams& params) {
  std::ostringstream os;
  os << kModelMagic << '\n';
  os << "layers " << params.depth() << '\n';
  for (std::size_t i = 0; i < params.depth(); ++i) {
    const Layer& l = params.layer(i);
    os << "layer " << i << " side " << l.window.side() << " points " << l.window.size() << '\n';
    os << "offsets";
    for (PixelOffset p : l.window.points()) os << ' ' << p.row << ' ' << p.col;
    os << '\n';
    os << "table " << l.table.to_hex() << '\n';
  }
  return std::move(os).str();
}

NetworkParams model_from_string(const std::string& text, const std::filesystem::path& context) {
  std::istringstream in(text);
  std::string line;
  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) throw FormatError(context, std::string("missing ") + what);
    return line;
  };

  if (next_line("header") != kModelMagic) throw FormatError(context, "unsupported model version");

  std::size_t depth = 0;
  {
    std::istringstream ls(next_line("layer count"));
    std::string tag;
    if (!(ls >> tag >> depth) || tag != "layers" || depth == 0)
      throw FormatError(context, "bad layer count line");
  }

  std::vector<Layer> layers;
  layers.reserve(depth);
  for (std::size_t i = 0; i < depth; ++i) {
    std::size_t index = 0;
    int side = 0;
    std::size_t npoints = 0;
    {
      std::istringstream ls(next_line("layer header"));
      std::string t0, t1, t2;
      if (!(ls >> t0 >> index >> t1 >> side >> t2 >> npoints) || t0 != "layer" || t1 != "side" ||
          t2 != "points" || index != i)
        throw FormatError(context, "bad layer header line");
    }
    std::vector<PixelOffset> points(npoints);
    {
      std::istringstream ls(next_line("offsets"));
      std::string tag;
      if (!(ls >> tag) || tag != "offsets") throw FormatError(context, "bad offsets line");
      for (auto& p : points)
        if (!(ls >> p.row >> p.col)) throw FormatError(context, "bad offsets line");
      std::string extra;
      if (ls >> extra) throw FormatError(context, "bad offsets line");
    }
    std::string hex;
    {
      std::istringstream ls(next_line("table"));
      std::string tag;
      if (!(ls >> tag >> hex) || tag != "table") throw FormatError(context, "bad table line");
    }
    try {
      Window window(side, std::move(points));
      layers.emplace_back(window, TruthTable::from_hex(window.size(), hex));
    } catch (const std::invalid_argument& e) {
      throw FormatError(context, e.what());
    }
  }
  if (std::getline(in, line) && !line.empty())
    throw FormatError(context, "trailing content after the last layer");
  return NetworkParams(std::move(layers));
}

void save_model(const NetworkParams& params, const std::filesystem::path& path) {
  write_file(path, model_to_string(params));
}

NetworkParams load_model(const std::filesystem::path& path) {
  return model_from_string(read_file(path), path);
}

// --- dataset manifest -------------------------------------------------------

void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
  std::string out = "[train]\n";
  for (const ManifestEntry& e : manifest.train)
    out += e.input.generic_string() + "\t" + e.target.generic_string() + "\n";
  out += "[validation]\n";
  for (const ManifestEntry& e : manifest.validation)
    out += e.input.generic_string() + "\t" + e.target.generic_string() + "\n";
  write_file(path, out);
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  DatasetManifest manifest;
  manifest.root = path.parent_path();
  std::vector<ManifestEntry>* section = nullptr;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line == "[train]") {
      section = &manifest.train;
      continue;
    }
    if (line == "[validation]") {
      section = &manifest.validation;
      continue;
    }
    if (!section) throw FormatError(path, "pair line before any role header");
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) throw FormatError(path, "pair line must be input<TAB>target");
    section->push_back({std::filesystem::path(line.substr(0, tab)),
                        std::filesystem::path(line.substr(tab + 1))});
  }
  return manifest;
}

SampleSet load_samples(const DatasetManifest& manifest, SampleRole role) {
  const auto& entries = role == SampleRole::Train ? manifest.train : manifest.validation;
  SampleSet set;
  set.role = role;
  set.pairs.reserve(entries.size());
  for (const ManifestEntry& e : entries) {
    BinaryImage input = load_image(manifest.root / e.input);
    BinaryImage target = load_image(manifest.root / e.target);
    if (input.height() != target.height() || input.width() != target.width())
      throw FormatError(manifest.root / e.target, "target dimensions differ from the input");
    set.pairs.emplace_back(std::move(input), std::move(target));
  }
  return set;
}

// --- generator ---------------------------------------------------------------

namespace {

// 5x7 digit glyphs; '1' is foreground.
constexpr std::array<std::array<const char*, 7>, 10> kDigitFont = {{
    {"01110", "10001", "10011", "10101", "11001", "10001", "01110"},
    {"00100", "01100", "00100", "00100", "00100", "00100", "01110"},
    {"01110", "10001", "00001", "00010", "00100", "01000", "11111"},
    {"11111", "00010", "00100", "00010", "00001", "10001", "01110"},
    {"00010", "00110", "01010", "10010", "11111", "00010", "00010"},
    {"11111", "10000", "11110", "00001", "00001", "10001", "01110"},
    {"00110", "01000", "10000", "11110", "10001", "10001", "01110"},
    {"11111", "00001", "00010", "00100", "01000", "01000", "01000"},
    {"01110", "10001", "10001", "01110", "10001", "10001", "01110"},
    {"01110", "10001", "10001", "01111", "00001", "00010", "01100"},
}};

constexpr int kGlyphCols = 5;
constexpr int kGlyphRows = 7;
constexpr int kGlyphMargin = 3;

int glyph_scale(int frame_side) {
  int usable = frame_side - 2 * kGlyphMargin;
  return std::min(usable / kGlyphCols, usable / kGlyphRows);
}

BinaryImage rasterize_digit(int digit, int frame_side, int row0, int col0, int scale) {
  BinaryImage img(frame_side, frame_side);
  const auto& glyph = kDigitFont[static_cast<std::size_t>(digit)];
  for (int gr = 0; gr < kGlyphRows; ++gr)
    for (int gc = 0; gc < kGlyphCols; ++gc)
      if (glyph[static_cast<std::size_t>(gr)][gc] == '1')
        for (int r = 0; r < scale; ++r)
          for (int c = 0; c < scale; ++c) img.set(row0 + gr * scale + r, col0 + gc * scale + c, true);
  return img;
}

}  // namespace

BinaryImage inner_boundary(const BinaryImage& image) {
  BinaryImage eroded = reference_erosion(image, Window::cross(3).points());
  BinaryImage out(image.height(), image.width());
  for (int r = 0; r < image.height(); ++r)
    for (int c = 0; c < image.width(); ++c) out.set(r, c, image.get(r, c) && !eroded.get(r, c));
  return out;
}

DatasetManifest generate_dataset(const GeneratorConfig& cfg, const std::filesystem::path& root) {
  if (cfg.noise_p < 0.0 || cfg.noise_p >= 0.5)
    throw std::invalid_argument("noise probability must lie in [0, 0.5)");
  if (cfg.digits.empty()) throw std::invalid_argument("digit set must be nonempty");
  for (char d : cfg.digits)
    if (d < '0' || d > '9') throw std::invalid_argument("digit set must contain only 0-9");
  if (cfg.train_count < 1 || cfg.val_count < 1)
    throw std::invalid_argument("sample counts must be >= 1");
  int scale = glyph_scale(cfg.frame_side);
  if (scale < 1) throw std::invalid_argument("frame side too small for the digit glyphs");

  std::error_code ec;
  std::filesystem::create_directories(root / "inputs", ec);
  std::filesystem::create_directories(root / "targets", ec);
  if (ec) throw FormatError(root, "cannot create dataset directories");

  RandomStream layout = make_stream(cfg.seed, StreamId::GenLayout);
  RandomStream noise = make_stream(cfg.seed, StreamId::GenNoise);

  DatasetManifest manifest;
  manifest.root = root;

  int max_row0 = cfg.frame_side - kGlyphRows * scale;
  int max_col0 = cfg.frame_side - kGlyphCols * scale;
  int base_row0 = max_row0 / 2;
  int base_col0 = max_col0 / 2;
  int jitter = std::min({2, base_row0, base_col0, max_row0 - base_row0, max_col0 - base_col0});

  auto emit = [&](const char* prefix, int count, std::vector<ManifestEntry>& entries) {
    for (int k = 0; k < count; ++k) {
      int digit = cfg.digits[static_cast<std::size_t>(k) % cfg.digits.size()] - '0';
      int row0 = base_row0, col0 = base_col0;
      if (jitter > 0) {
        row0 += static_cast<int>(layout.next_below(2 * static_cast<std::uint64_t>(jitter) + 1)) - jitter;
        col0 += static_cast<int>(layout.next_below(2 * static_cast<std::uint64_t>(jitter) + 1)) - jitter;
      }
      BinaryImage clean = rasterize_digit(digit, cfg.frame_side, row0, col0, scale);
      BinaryImage target = inner_boundary(clean);
      BinaryImage input = clean;
      for (int r = 0; r < cfg.frame_side; ++r)
        for (int c = 0; c < cfg.frame_side; ++c)
          if (noise.next_unit() < cfg.noise_p) input.set(r, c, !input.get(r, c));

      char name[64];
      std::snprintf(name, sizeof name, "%s_%03d.pbm", prefix, k);
      ManifestEntry entry{std::filesystem::path("inputs") / name,
                          std::filesystem::path("targets") / name};
      save_image(input, root / entry.input);
      save_image(target, root / entry.target);
      entries.push_back(std::move(entry));
    }
  };

  emit("train", cfg.train_count, manifest.train);
  emit("val", cfg.val_count, manifest.validation);
  save_manifest(manifest, root / "manifest.txt");
  return manifest;
}

// --- metrics ------------------------------------------------------------------

void append_metrics(const MetricsRecord& record, const std::filesystem::path& path) {
  bool fresh = true;
  {
    std::error_code ec;
    auto size = std::filesystem::file_size(path, ec);
    fresh = static_cast<bool>(ec) || size == 0;
  }
  std::ofstream out(path, std::ios::app);
  if (!out) throw FormatError(path, "cannot open metrics log");
  if (fresh)
    out << "run_id,phase,epoch,batch_count,current_loss,best_loss,windows_visited,elapsed_seconds\n";
  char losses[64];
  std::snprintf(losses, sizeof losses, "%.17g,%.17g", record.current_loss, record.best_loss);
  out << record.run_id << ',' << record.phase << ',' << record.epoch << ',' << record.batch_count
      << ',' << losses << ',';
  if (record.windows_visited) out << *record.windows_visited;
  char elapsed[32];
  std::snprintf(elapsed, sizeof elapsed, "%.3f", record.elapsed_seconds);
  out << ',' << elapsed << '\n';
  if (!out) throw FormatError(path, "metrics write failed");
}

}  // namespace morphnet
