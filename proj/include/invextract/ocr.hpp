#ifndef INVEXTRACT_OCR_HPP
#define INVEXTRACT_OCR_HPP

#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "invextract/filters.hpp"
#include "invextract/geometry.hpp"
#include "invextract/raster.hpp"
#include "invextract/raster_io.hpp"

namespace invextract {

/// One recognized token in the coordinates of the submitted image.
struct OcrWord {
  std::string text;
  Box bbox;
  double confidence = 0.0;  // [0, 100]
  int block_id = 0;
  int line_id = 0;
  int word_id = 0;
};

enum class SegmentationMode { UniformBlock = 6, AutoPage = 3, SingleLine = 7 };
enum class EngineMode { Neural = 3, Legacy = 0 };

struct OcrConfig {
  SegmentationMode segmentation_mode = SegmentationMode::UniformBlock;
  EngineMode engine_mode = EngineMode::Neural;
  std::string language = "eng";
};

/// Provenance of a region crop handed to an engine. Physical engines read
/// pixels and ignore this; the mock engine maps the region back onto fixture
/// ground truth through it.
struct OcrContext {
  std::array<PointF, 4> source_region;  // region polygon in source coords
  Homography source_to_region;          // source coords -> region-local px
  int source_w = 0;                     // dimensions of the sidecar's image
  int source_h = 0;
};

class OcrEngine {
 public:
  virtual ~OcrEngine() = default;
  virtual std::string name() const = 0;
  virtual std::vector<OcrWord> recognize_raw(const Raster& img,
                                             const OcrConfig& cfg,
                                             const OcrContext* ctx) = 0;
};

// ---------------------------------------------------------------------------
// Engine TSV wire format: 12 tab-separated columns with a header row
// (level, page, block, par, line, word, left, top, width, height, conf,
// text). Word rows carry level 5 and a non-negative confidence.
// ---------------------------------------------------------------------------

struct TsvParseResult {
  std::vector<OcrWord> words;
  int malformed_rows = 0;
  int skipped_rows = 0;  // structural rows (level != 5 or conf < 0)
};

inline TsvParseResult parse_engine_tsv(const std::string& raw) {
  std::istringstream in(raw);
  std::string line;
  if (!std::getline(in, line))
    throw EngineError("engine TSV is empty (missing header row)", raw);
  if (!line.empty() && line.back() == '\r') line.pop_back();

  auto split = [](const std::string& s) {
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = s.find('\t', start);
      if (tab == std::string::npos) {
        cols.push_back(s.substr(start));
        break;
      }
      cols.push_back(s.substr(start, tab - start));
      start = tab + 1;
    }
    return cols;
  };

  auto header = split(line);
  if (header.size() != 12 || header[0] != "level")
    throw EngineError("engine TSV header is missing or malformed", raw);

  TsvParseResult out;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cols = split(line);
    if (cols.size() != 12) {
      ++out.malformed_rows;
      continue;
    }
    try {
      int level = std::stoi(cols[0]);
      double conf = std::stod(cols[10]);
      if (level != 5 || conf < 0.0) {
        ++out.skipped_rows;
        continue;
      }
      OcrWord w;
      w.block_id = std::stoi(cols[2]);
      w.line_id = std::stoi(cols[4]);
      w.word_id = std::stoi(cols[5]);
      w.bbox = Box{std::stoi(cols[6]), std::stoi(cols[7]), std::stoi(cols[8]),
                   std::stoi(cols[9])};
      w.confidence = conf;
      w.text = cols[11];
      if (w.text.empty() || w.bbox.w <= 0 || w.bbox.h <= 0) {
        ++out.skipped_rows;
        continue;
      }
      out.words.push_back(std::move(w));
    } catch (const std::exception&) {
      ++out.malformed_rows;
    }
  }
  return out;
}

inline std::string serialize_engine_tsv(const std::vector<OcrWord>& words) {
  std::ostringstream out;
  out << "level\tpage_num\tblock_num\tpar_num\tline_num\tword_num\tleft\ttop"
         "\twidth\theight\tconf\ttext\n";
  for (const auto& w : words) {
    out << "5\t1\t" << w.block_id << "\t1\t" << w.line_id << '\t' << w.word_id
        << '\t' << w.bbox.x << '\t' << w.bbox.y << '\t' << w.bbox.w << '\t'
        << w.bbox.h << '\t' << w.confidence << '\t' << w.text << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// recognize(): the engine-independent entry point. Enforces the minimum
// image size, upscales narrow crops to the engine minimum width with integer
// nearest-neighbor scaling, and maps boxes back.
// ---------------------------------------------------------------------------

inline std::vector<OcrWord> recognize(OcrEngine& engine, const Raster& img,
                                      const OcrConfig& cfg,
                                      const OcrContext* ctx = nullptr,
                                      int min_width = 800) {
  if (img.width() < 16 || img.height() < 16)
    throw ParameterError("image too small for OCR (min dimension 16 px)");

  int factor = 1;
  if (img.width() < min_width)
    factor = (min_width + img.width() - 1) / img.width();

  std::vector<OcrWord> words;
  if (factor == 1) {
    words = engine.recognize_raw(img, cfg, ctx);
  } else {
    Raster big = scale_nearest(img, factor);
    OcrContext scaled;
    const OcrContext* use_ctx = nullptr;
    if (ctx) {
      scaled = *ctx;
      scaled.source_to_region =
          Homography::scaling(factor, factor).compose(ctx->source_to_region);
      use_ctx = &scaled;
    }
    words = engine.recognize_raw(big, cfg, use_ctx);
    for (auto& w : words) {
      int x1 = round_half_up(static_cast<double>(w.bbox.right()) / factor);
      int y1 = round_half_up(static_cast<double>(w.bbox.bottom()) / factor);
      w.bbox.x = w.bbox.x / factor;
      w.bbox.y = w.bbox.y / factor;
      w.bbox.w = std::max(1, x1 - w.bbox.x);
      w.bbox.h = std::max(1, y1 - w.bbox.y);
    }
  }

  // Structural or empty results never reach callers; boxes stay in bounds.
  std::vector<OcrWord> cleaned;
  cleaned.reserve(words.size());
  for (auto& w : words) {
    if (w.confidence <= 0.0 || w.text.empty()) continue;
    Box clipped = w.bbox.intersect(img.bounds());
    if (clipped.empty()) continue;
    w.bbox = clipped;
    cleaned.push_back(std::move(w));
  }
  std::sort(cleaned.begin(), cleaned.end(),
            [](const OcrWord& a, const OcrWord& b) {
              if (a.block_id != b.block_id) return a.block_id < b.block_id;
              if (a.line_id != b.line_id) return a.line_id < b.line_id;
              return a.word_id < b.word_id;
            });
  return cleaned;
}

// ---------------------------------------------------------------------------
// External engine adapter: drives a recognizer binary over the subprocess
// wire protocol  <bin> <image> stdout --psm N --oem N -l LANG tsv  and reads
// UTF-8 TSV from its stdout. Nonzero exit or a bad header is an engine error
// carrying the raw output.
// ---------------------------------------------------------------------------

class ExternalOcrEngine : public OcrEngine {
 public:
  explicit ExternalOcrEngine(std::string binary_path = {})
      : path_(std::move(binary_path)) {
    if (path_.empty()) {
      if (const char* env = std::getenv("INVEXTRACT_OCR_BIN")) path_ = env;
    }
  }

  std::string name() const override { return "external:" + path_; }

  const std::string& binary_path() const { return path_; }

  std::vector<OcrWord> recognize_raw(const Raster& img, const OcrConfig& cfg,
                                     const OcrContext*) override {
    if (path_.empty())
      throw EngineError(
          "no OCR engine configured (set ocr.engine_path or "
          "INVEXTRACT_OCR_BIN)");

    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() /
                   ("invextract_ocr_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter_++) + ".png");
    encode_png(img, tmp.string());
    struct Cleanup {
      fs::path p;
      ~Cleanup() {
        std::error_code ec;
        fs::remove(p, ec);
      }
    } cleanup{tmp};

    std::ostringstream cmd;
    cmd << '\'' << path_ << "' '" << tmp.string() << "' stdout --psm "
        << static_cast<int>(cfg.segmentation_mode) << " --oem "
        << static_cast<int>(cfg.engine_mode) << " -l " << cfg.language
        << " tsv 2>/dev/null";

    std::string output;
    FILE* pipe = ::popen(cmd.str().c_str(), "r");
    if (!pipe) throw EngineError("failed to spawn OCR engine: " + path_);
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0)
      output.append(buf, n);
    int status = ::pclose(pipe);
    if (status != 0)
      throw EngineError("OCR engine exited with status " +
                            std::to_string(status),
                        output);
    return parse_engine_tsv(output).words;
  }

 private:
  std::string path_;
  int counter_ = 0;
};

}  // namespace invextract

#endif  // INVEXTRACT_OCR_HPP
