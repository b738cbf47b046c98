#ifndef INVEXTRACT_EDGES_HPP
#define INVEXTRACT_EDGES_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "invextract/raster.hpp"

namespace invextract {

/// 3x3 Sobel gradients with replicate borders. Returns (gx, gy) per pixel.
inline std::pair<std::vector<double>, std::vector<double>> sobel_gradients(
    const Raster& img) {
  img.require(PixelFormat::Gray8, "sobel_gradients");
  int w = img.width(), h = img.height();
  std::vector<double> gx(static_cast<std::size_t>(w) * h);
  std::vector<double> gy(gx.size());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double tl = img.at_clamped(x - 1, y - 1), t = img.at_clamped(x, y - 1),
             tr = img.at_clamped(x + 1, y - 1);
      double l = img.at_clamped(x - 1, y), r = img.at_clamped(x + 1, y);
      double bl = img.at_clamped(x - 1, y + 1), b = img.at_clamped(x, y + 1),
             br = img.at_clamped(x + 1, y + 1);
      std::size_t i = static_cast<std::size_t>(y) * w + x;
      gx[i] = (tr + 2 * r + br) - (tl + 2 * l + bl);
      gy[i] = (bl + 2 * b + br) - (tl + 2 * t + tr);
    }
  return {std::move(gx), std::move(gy)};
}

/// Canny edge map: Sobel gradients, non-maximum suppression along the
/// quantized gradient direction, then double threshold with hysteresis
/// (8-connected). Thresholds apply to the L2 gradient magnitude.
inline Raster canny_edges(const Raster& img, double low, double high) {
  img.require(PixelFormat::Gray8, "canny_edges");
  if (!(low > 0.0) || !(low < high))
    throw ParameterError("canny thresholds require 0 < low < high");
  int w = img.width(), h = img.height();
  auto [gx, gy] = sobel_gradients(img);

  std::vector<double> mag(gx.size());
  for (std::size_t i = 0; i < gx.size(); ++i)
    mag[i] = std::hypot(gx[i], gy[i]);

  auto mag_at = [&](int x, int y) -> double {
    if (x < 0 || x >= w || y < 0 || y >= h) return 0.0;
    return mag[static_cast<std::size_t>(y) * w + x];
  };

  // NMS: survive if strictly greater than the neighbor on one side of the
  // gradient direction and >= the other, which keeps 2-pixel plateaus thin.
  std::vector<std::uint8_t> cls(gx.size(), 0);  // 0 none, 1 weak, 2 strong
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      std::size_t i = static_cast<std::size_t>(y) * w + x;
      double m = mag[i];
      if (m < low) continue;
      double ax = gx[i], ay = gy[i];
      int dx, dy;
      // Quantize direction to 0/45/90/135 degrees.
      double aax = std::abs(ax), aay = std::abs(ay);
      if (aax >= 2.4142 * aay) {
        dx = 1;
        dy = 0;
      } else if (aay >= 2.4142 * aax) {
        dx = 0;
        dy = 1;
      } else if ((ax > 0) == (ay > 0)) {
        dx = 1;
        dy = 1;
      } else {
        dx = 1;
        dy = -1;
      }
      double n1 = mag_at(x - dx, y - dy);
      double n2 = mag_at(x + dx, y + dy);
      if (m > n1 && m >= n2) cls[i] = m >= high ? 2 : 1;
    }

  // Hysteresis: weak pixels survive only when 8-connected to a strong one.
  Raster out(w, h, PixelFormat::Binary);
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (cls[static_cast<std::size_t>(y) * w + x] == 2) {
        out.set(x, y, 255);
        stack.emplace_back(x, y);
      }
  while (!stack.empty()) {
    auto [px, py] = stack.back();
    stack.pop_back();
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        int nx = px + dx, ny = py + dy;
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        std::size_t ni = static_cast<std::size_t>(ny) * w + nx;
        if (cls[ni] == 1 && out.at(nx, ny) == 0) {
          out.set(nx, ny, 255);
          stack.emplace_back(nx, ny);
        }
      }
  }
  return out;
}

}  // namespace invextract

#endif  // INVEXTRACT_EDGES_HPP
