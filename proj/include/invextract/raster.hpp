#ifndef INVEXTRACT_RASTER_HPP
#define INVEXTRACT_RASTER_HPP

#include <cstdint>
#include <cstring>
#include <string>
#include <utility>
#include <vector>

#include "invextract/core.hpp"

namespace invextract {

enum class PixelFormat { RGB8, Gray8, Binary };

inline int channels(PixelFormat f) { return f == PixelFormat::RGB8 ? 3 : 1; }

inline const char* format_name(PixelFormat f) {
  switch (f) {
    case PixelFormat::RGB8: return "RGB8";
    case PixelFormat::Gray8: return "Gray8";
    case PixelFormat::Binary: return "Binary";
  }
  return "?";
}

/// Owned row-major 2-D pixel grid. Binary rasters store 0 or 255 in one byte
/// per pixel. Instances are immutable by convention once an operation returns
/// them; every image operation is a pure function producing a new Raster.
class Raster {
 public:
  Raster(int width, int height, PixelFormat format, std::uint8_t fill = 0)
      : w_(width), h_(height), fmt_(format) {
    if (width < 1 || height < 1)
      throw ParameterError("raster dimensions must be at least 1x1");
    if (format == PixelFormat::Binary && fill != 0 && fill != 255)
      throw ParameterError("binary rasters hold only 0 or 255");
    data_.assign(static_cast<std::size_t>(width) * height * channels(format),
                 fill);
  }

  Raster(int width, int height, PixelFormat format,
         std::vector<std::uint8_t> pixels)
      : w_(width), h_(height), fmt_(format), data_(std::move(pixels)) {
    if (width < 1 || height < 1)
      throw ParameterError("raster dimensions must be at least 1x1");
    if (data_.size() !=
        static_cast<std::size_t>(width) * height * channels(format))
      throw ParameterError("pixel buffer length does not match dimensions");
    if (format == PixelFormat::Binary) {
      for (std::uint8_t v : data_)
        if (v != 0 && v != 255)
          throw ParameterError("binary rasters hold only 0 or 255");
    }
  }

  int width() const { return w_; }
  int height() const { return h_; }
  PixelFormat format() const { return fmt_; }
  long long pixel_count() const { return static_cast<long long>(w_) * h_; }
  Box bounds() const { return Box{0, 0, w_, h_}; }

  const std::vector<std::uint8_t>& data() const { return data_; }
  std::vector<std::uint8_t>& data() { return data_; }

  std::uint8_t at(int x, int y, int c = 0) const {
    return data_[idx(x, y, c)];
  }
  void set(int x, int y, std::uint8_t v) { data_[idx(x, y, 0)] = v; }
  void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    std::size_t i = idx(x, y, 0);
    data_[i] = r;
    data_[i + 1] = g;
    data_[i + 2] = b;
  }

  /// Clamped accessor implementing the replicate border policy.
  std::uint8_t at_clamped(int x, int y, int c = 0) const {
    x = std::clamp(x, 0, w_ - 1);
    y = std::clamp(y, 0, h_ - 1);
    return data_[idx(x, y, c)];
  }

  bool in_bounds(int x, int y) const {
    return x >= 0 && x < w_ && y >= 0 && y < h_;
  }

  Raster crop(const Box& b) const {
    if (b.x < 0 || b.y < 0 || b.right() > w_ || b.bottom() > h_ || b.empty())
      throw ParameterError("crop box outside raster bounds");
    int ch = channels(fmt_);
    Raster out(b.w, b.h, fmt_);
    for (int y = 0; y < b.h; ++y) {
      const std::uint8_t* src = &data_[idx(b.x, b.y + y, 0)];
      std::uint8_t* dst = &out.data_[out.idx(0, y, 0)];
      std::memcpy(dst, src, static_cast<std::size_t>(b.w) * ch);
    }
    return out;
  }

  void require(PixelFormat f, const char* op) const {
    if (fmt_ != f)
      throw FormatError(std::string(op) + " expects " + format_name(f) +
                        " input, got " + format_name(fmt_));
  }

  bool operator==(const Raster& o) const {
    return w_ == o.w_ && h_ == o.h_ && fmt_ == o.fmt_ && data_ == o.data_;
  }

 private:
  std::size_t idx(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * w_ + x) * channels(fmt_) + c;
  }

  int w_;
  int h_;
  PixelFormat fmt_;
  std::vector<std::uint8_t> data_;
};

/// Reinterpret a Binary raster as Gray8 without copying semantics changes;
/// the byte layout is identical.
inline Raster binary_as_gray(const Raster& img) {
  img.require(PixelFormat::Binary, "binary_as_gray");
  return Raster(img.width(), img.height(), PixelFormat::Gray8, img.data());
}

inline Raster gray_as_binary(const Raster& img) {
  img.require(PixelFormat::Gray8, "gray_as_binary");
  return Raster(img.width(), img.height(), PixelFormat::Binary, img.data());
}

inline Raster gray_to_rgb(const Raster& img) {
  img.require(PixelFormat::Gray8, "gray_to_rgb");
  Raster out(img.width(), img.height(), PixelFormat::RGB8);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      std::uint8_t v = img.at(x, y);
      out.set(x, y, v, v, v);
    }
  return out;
}

enum class KernelShape { Rect, Ellipse };

/// Structuring element for morphology; anchored at its center, so both sides
/// must be odd for symmetric operations.
struct Kernel {
  int width = 3;
  int height = 3;
  KernelShape shape = KernelShape::Rect;

  static Kernel rect(int w, int h) { return Kernel{w, h, KernelShape::Rect}; }
  static Kernel ellipse(int w, int h) {
    return Kernel{w, h, KernelShape::Ellipse};
  }

  void validate() const {
    if (width < 1 || height < 1)
      throw ParameterError("kernel sides must be at least 1");
  }

  /// Offsets relative to the center anchor covered by this element.
  std::vector<std::pair<int, int>> offsets() const {
    validate();
    std::vector<std::pair<int, int>> out;
    int rx = (width - 1) / 2;
    int ry = (height - 1) / 2;
    for (int dy = -ry; dy <= height - 1 - ry; ++dy)
      for (int dx = -rx; dx <= width - 1 - rx; ++dx) {
        if (shape == KernelShape::Ellipse) {
          double nx = rx > 0 ? static_cast<double>(dx) / rx : dx;
          double ny = ry > 0 ? static_cast<double>(dy) / ry : dy;
          if (nx * nx + ny * ny > 1.0 + 1e-9) continue;
        }
        out.emplace_back(dx, dy);
      }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Annotation helpers for stage-dump overlays.
// ---------------------------------------------------------------------------

struct Rgb {
  std::uint8_t r, g, b;
};

inline void draw_line(Raster& img, PointF a, PointF b, Rgb color,
                      int thickness = 1) {
  img.require(PixelFormat::RGB8, "draw_line");
  double len = std::max(std::abs(b.x - a.x), std::abs(b.y - a.y));
  int steps = std::max(1, static_cast<int>(std::ceil(len)));
  int r = std::max(0, thickness / 2);
  for (int i = 0; i <= steps; ++i) {
    double t = static_cast<double>(i) / steps;
    int cx = round_half_up(a.x + (b.x - a.x) * t);
    int cy = round_half_up(a.y + (b.y - a.y) * t);
    for (int dy = -r; dy <= r; ++dy)
      for (int dx = -r; dx <= r; ++dx)
        if (img.in_bounds(cx + dx, cy + dy))
          img.set(cx + dx, cy + dy, color.r, color.g, color.b);
  }
}

inline void draw_box(Raster& img, const Box& b, Rgb color, int thickness = 1) {
  PointF tl{static_cast<double>(b.x), static_cast<double>(b.y)};
  PointF tr{static_cast<double>(b.right() - 1), static_cast<double>(b.y)};
  PointF br{static_cast<double>(b.right() - 1),
            static_cast<double>(b.bottom() - 1)};
  PointF bl{static_cast<double>(b.x), static_cast<double>(b.bottom() - 1)};
  draw_line(img, tl, tr, color, thickness);
  draw_line(img, tr, br, color, thickness);
  draw_line(img, br, bl, color, thickness);
  draw_line(img, bl, tl, color, thickness);
}

}  // namespace invextract

#endif  // INVEXTRACT_RASTER_HPP
