#ifndef INVEXTRACT_TESTS_HELPERS_HPP
#define INVEXTRACT_TESTS_HELPERS_HPP

#include <random>
#include <vector>

#include "invextract/morphology.hpp"
#include "invextract/raster.hpp"

namespace testutil {

using invextract::Kernel;
using invextract::PixelFormat;
using invextract::Raster;

inline Raster random_binary(int w, int h, std::mt19937& rng,
                            double p_fg = 0.5) {
  Raster img(w, h, PixelFormat::Binary);
  std::bernoulli_distribution coin(p_fg);
  for (auto& v : img.data()) v = coin(rng) ? 255 : 0;
  return img;
}

inline Raster random_gray(int w, int h, std::mt19937& rng) {
  Raster img(w, h, PixelFormat::Gray8);
  std::uniform_int_distribution<int> d(0, 255);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(d(rng));
  return img;
}

/// Naive per-pixel neighborhood max/min, the morphology oracle. Border
/// samples count as background (0).
inline Raster naive_morph(const Raster& img, const Kernel& k, bool is_dilate) {
  auto offs = k.offsets();
  Raster out(img.width(), img.height(), PixelFormat::Binary);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      int acc = is_dilate ? 0 : 255;
      for (auto [dx, dy] : offs) {
        int v = img.in_bounds(x + dx, y + dy) ? img.at(x + dx, y + dy) : 0;
        acc = is_dilate ? std::max(acc, v) : std::min(acc, v);
      }
      out.set(x, y, static_cast<std::uint8_t>(acc));
    }
  return out;
}

/// BFS flood-fill labeling oracle (8-connectivity). Returns label grid with
/// labels assigned in scan order starting at 1.
inline std::vector<int> flood_labels(const Raster& img) {
  int w = img.width(), h = img.height();
  std::vector<int> labels(static_cast<std::size_t>(w) * h, 0);
  int next = 0;
  std::vector<std::pair<int, int>> queue;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (img.data()[i] == 0 || labels[i]) continue;
      ++next;
      queue.clear();
      queue.emplace_back(x, y);
      labels[i] = next;
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        auto [px, py] = queue[qi];
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            int nx = px + dx, ny = py + dy;
            if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
            std::size_t ni = static_cast<std::size_t>(ny) * w + nx;
            if (img.data()[ni] != 0 && !labels[ni]) {
              labels[ni] = next;
              queue.emplace_back(nx, ny);
            }
          }
      }
    }
  return labels;
}

}  // namespace testutil

#endif  // INVEXTRACT_TESTS_HELPERS_HPP
