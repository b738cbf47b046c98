#ifndef INVEXTRACT_MORPHOLOGY_HPP
#define INVEXTRACT_MORPHOLOGY_HPP

#include <cstdint>
#include <vector>

#include "invextract/raster.hpp"

namespace invextract {

namespace detail {

// 1-D sliding max/min pass over one axis; out-of-image samples are background
// (0) for dilation and for erosion alike, per the pinned border policy.
inline Raster morph_pass_1d(const Raster& img, int len, bool horizontal,
                            bool is_dilate) {
  int w = img.width(), h = img.height();
  int lo = -(len - 1) / 2;
  int hi = len - 1 + lo;
  Raster out(w, h, PixelFormat::Binary);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      std::uint8_t acc = is_dilate ? 0 : 255;
      for (int d = lo; d <= hi; ++d) {
        int xx = horizontal ? x + d : x;
        int yy = horizontal ? y : y + d;
        std::uint8_t v = img.in_bounds(xx, yy) ? img.at(xx, yy) : 0;
        if (is_dilate) {
          if (v > acc) acc = v;
        } else {
          if (v < acc) acc = v;
        }
        if (acc == (is_dilate ? 255 : 0)) break;
      }
      out.set(x, y, acc);
    }
  return out;
}

inline Raster morph_once(const Raster& img, const Kernel& k, bool is_dilate) {
  if (k.shape == KernelShape::Rect) {
    // Rect max/min filters are separable into two 1-D passes.
    Raster tmp = k.width > 1 ? morph_pass_1d(img, k.width, true, is_dilate)
                             : img;
    return k.height > 1 ? morph_pass_1d(tmp, k.height, false, is_dilate)
                        : tmp;
  }
  auto offs = k.offsets();
  int w = img.width(), h = img.height();
  Raster out(w, h, PixelFormat::Binary);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      std::uint8_t acc = is_dilate ? 0 : 255;
      for (auto [dx, dy] : offs) {
        int xx = x + dx, yy = y + dy;
        std::uint8_t v = img.in_bounds(xx, yy) ? img.at(xx, yy) : 0;
        if (is_dilate) {
          if (v > acc) acc = v;
        } else {
          if (v < acc) acc = v;
        }
      }
      out.set(x, y, acc);
    }
  return out;
}

}  // namespace detail

/// Neighborhood max under the kernel footprint; border counts as background.
inline Raster dilate(const Raster& img, const Kernel& k, int iterations = 1) {
  img.require(PixelFormat::Binary, "dilate");
  if (iterations < 1) throw ParameterError("iterations must be >= 1");
  k.validate();
  Raster out = img;
  for (int i = 0; i < iterations; ++i) out = detail::morph_once(out, k, true);
  return out;
}

/// Neighborhood min under the kernel footprint; border counts as background.
inline Raster erode(const Raster& img, const Kernel& k, int iterations = 1) {
  img.require(PixelFormat::Binary, "erode");
  if (iterations < 1) throw ParameterError("iterations must be >= 1");
  k.validate();
  Raster out = img;
  for (int i = 0; i < iterations; ++i) out = detail::morph_once(out, k, false);
  return out;
}

/// Erode then dilate; removes structures smaller than the kernel.
inline Raster open(const Raster& img, const Kernel& k) {
  return dilate(erode(img, k), k);
}

// ---------------------------------------------------------------------------
// Pixelwise binary combinators.
// ---------------------------------------------------------------------------

namespace detail {
inline void require_same_binary(const Raster& a, const Raster& b,
                                const char* op) {
  a.require(PixelFormat::Binary, op);
  b.require(PixelFormat::Binary, op);
  if (a.width() != b.width() || a.height() != b.height())
    throw ParameterError(std::string(op) + ": dimension mismatch");
}
}  // namespace detail

inline Raster binary_or(const Raster& a, const Raster& b) {
  detail::require_same_binary(a, b, "binary_or");
  Raster out = a;
  for (std::size_t i = 0; i < out.data().size(); ++i)
    out.data()[i] = a.data()[i] | b.data()[i];
  return out;
}

inline Raster binary_and(const Raster& a, const Raster& b) {
  detail::require_same_binary(a, b, "binary_and");
  Raster out = a;
  for (std::size_t i = 0; i < out.data().size(); ++i)
    out.data()[i] = a.data()[i] & b.data()[i];
  return out;
}

inline Raster binary_not(const Raster& a) {
  a.require(PixelFormat::Binary, "binary_not");
  Raster out = a;
  for (auto& v : out.data()) v = static_cast<std::uint8_t>(255 - v);
  return out;
}

/// a AND NOT b.
inline Raster binary_subtract(const Raster& a, const Raster& b) {
  detail::require_same_binary(a, b, "binary_subtract");
  Raster out = a;
  for (std::size_t i = 0; i < out.data().size(); ++i)
    out.data()[i] = a.data()[i] & static_cast<std::uint8_t>(~b.data()[i]);
  return out;
}

inline long long count_foreground(const Raster& img) {
  img.require(PixelFormat::Binary, "count_foreground");
  long long n = 0;
  for (std::uint8_t v : img.data()) n += v != 0;
  return n;
}

}  // namespace invextract

#endif  // INVEXTRACT_MORPHOLOGY_HPP
