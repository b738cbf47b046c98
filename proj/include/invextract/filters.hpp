#ifndef INVEXTRACT_FILTERS_HPP
#define INVEXTRACT_FILTERS_HPP

#include <array>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "invextract/raster.hpp"

namespace invextract {

/// ITU-R BT.601 luma, round-half-up.
inline Raster to_grayscale(const Raster& img) {
  img.require(PixelFormat::RGB8, "to_grayscale");
  Raster out(img.width(), img.height(), PixelFormat::Gray8);
  const auto& src = img.data();
  auto& dst = out.data();
  std::size_t n = static_cast<std::size_t>(img.width()) * img.height();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t* p = &src[i * 3];
    dst[i] = clamp_u8(0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2]);
  }
  return out;
}

inline std::array<std::uint32_t, 256> histogram(const Raster& img) {
  std::array<std::uint32_t, 256> h{};
  for (std::uint8_t v : img.data()) ++h[v];
  return h;
}

/// CDF remap: map(v) = round(255 * (cdf(v) - 1) / (N - 1)). The -1 shift makes
/// a one-pixel-per-value ramp map to itself exactly; single-pixel images pass
/// through unchanged. Monotone non-decreasing in input intensity.
inline Raster equalize_histogram(const Raster& img) {
  img.require(PixelFormat::Gray8, "equalize_histogram");
  auto hist = histogram(img);
  long long n = img.pixel_count();
  std::array<std::uint8_t, 256> lut{};
  if (n <= 1) {
    for (int v = 0; v < 256; ++v) lut[v] = static_cast<std::uint8_t>(v);
  } else {
    long long cdf = 0;
    for (int v = 0; v < 256; ++v) {
      cdf += hist[v];
      if (cdf == 0) continue;  // unused bins below the first occupied one
      lut[v] = clamp_u8(255.0 * static_cast<double>(cdf - 1) /
                        static_cast<double>(n - 1));
    }
  }
  Raster out(img.width(), img.height(), PixelFormat::Gray8);
  auto& dst = out.data();
  const auto& src = img.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = lut[src[i]];
  return out;
}

/// Global Otsu threshold: maximizes between-class variance over all 256
/// candidates, ties broken toward the smaller threshold. Pixels strictly
/// above the threshold become 255. A single-intensity image yields that
/// intensity and an all-zero output.
inline std::pair<Raster, int> threshold_otsu(const Raster& img) {
  img.require(PixelFormat::Gray8, "threshold_otsu");
  auto hist = histogram(img);
  long long total = img.pixel_count();

  int distinct = 0, only = 0;
  for (int v = 0; v < 256; ++v)
    if (hist[v]) {
      ++distinct;
      only = v;
    }

  int best_t = 0;
  if (distinct <= 1) {
    best_t = only;
  } else {
    // Incremental scan; same quantity as otsu_between_class_variance.
    long long sum_all = 0;
    for (int v = 0; v < 256; ++v)
      sum_all += static_cast<long long>(hist[v]) * v;
    double best_score = -1.0;
    long long w0 = 0, sum0 = 0;
    for (int t = 0; t < 256; ++t) {
      w0 += hist[t];
      sum0 += static_cast<long long>(hist[t]) * t;
      long long w1 = total - w0;
      double score = 0.0;
      if (w0 > 0 && w1 > 0) {
        double mu0 = static_cast<double>(sum0) / w0;
        double mu1 = static_cast<double>(sum_all - sum0) / w1;
        double d = mu0 - mu1;
        score = static_cast<double>(w0) * static_cast<double>(w1) * d * d;
      }
      if (score > best_score) {
        best_score = score;
        best_t = t;
      }
    }
  }

  Raster out(img.width(), img.height(), PixelFormat::Binary);
  auto& dst = out.data();
  const auto& src = img.data();
  for (std::size_t i = 0; i < src.size(); ++i)
    dst[i] = src[i] > best_t ? 255 : 0;
  return {std::move(out), best_t};
}

/// Local-mean threshold: pixel is 255 iff value > mean(block x block,
/// replicate border) - c. Means come from an integer summed-area table, so
/// results are bit-exact against a naive neighborhood oracle.
inline Raster adaptive_threshold(const Raster& img, int block, double c) {
  img.require(PixelFormat::Gray8, "adaptive_threshold");
  if (block < 3 || block % 2 == 0)
    throw ParameterError("adaptive_threshold block must be odd and >= 3");
  int w = img.width(), h = img.height(), r = block / 2;

  // Summed-area table over the replicate-padded image.
  int pw = w + 2 * r, ph = h + 2 * r;
  std::vector<std::uint64_t> sat(static_cast<std::size_t>(pw + 1) * (ph + 1),
                                 0);
  auto sat_at = [&](int x, int y) -> std::uint64_t& {
    return sat[static_cast<std::size_t>(y) * (pw + 1) + x];
  };
  for (int y = 0; y < ph; ++y)
    for (int x = 0; x < pw; ++x)
      sat_at(x + 1, y + 1) = img.at_clamped(x - r, y - r) + sat_at(x, y + 1) +
                             sat_at(x + 1, y) - sat_at(x, y);

  double inv_area = 1.0 / (static_cast<double>(block) * block);
  Raster out(w, h, PixelFormat::Binary);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      std::uint64_t s = sat_at(x + block, y + block) - sat_at(x, y + block) -
                        sat_at(x + block, y) + sat_at(x, y);
      double mean = static_cast<double>(s) * inv_area;
      out.set(x, y, img.at(x, y) > mean - c ? 255 : 0);
    }
  return out;
}

/// Normalized 1-D Gaussian taps for a ksize-wide kernel.
inline std::vector<double> gaussian_kernel_1d(int ksize, double sigma) {
  if (ksize < 1 || ksize % 2 == 0)
    throw ParameterError("gaussian kernel size must be odd");
  if (sigma <= 0.0) sigma = 0.3 * ((ksize - 1) * 0.5 - 1) + 0.8;
  int r = ksize / 2;
  std::vector<double> k(ksize);
  double sum = 0.0;
  for (int i = 0; i < ksize; ++i) {
    double d = i - r;
    k[i] = std::exp(-(d * d) / (2.0 * sigma * sigma));
    sum += k[i];
  }
  for (double& v : k) v /= sum;
  return k;
}

/// Separable Gaussian convolution with replicate borders. sigma <= 0 selects
/// the pinned default 0.3*((ksize-1)*0.5 - 1) + 0.8.
inline Raster gaussian_blur(const Raster& img, int ksize, double sigma = 0.0) {
  img.require(PixelFormat::Gray8, "gaussian_blur");
  auto k = gaussian_kernel_1d(ksize, sigma);
  int w = img.width(), h = img.height(), r = ksize / 2;

  std::vector<double> tmp(static_cast<std::size_t>(w) * h, 0.0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -r; i <= r; ++i) acc += k[i + r] * img.at_clamped(x + i, y);
      tmp[static_cast<std::size_t>(y) * w + x] = acc;
    }

  Raster out(w, h, PixelFormat::Gray8);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -r; i <= r; ++i) {
        int yy = std::clamp(y + i, 0, h - 1);
        acc += k[i + r] * tmp[static_cast<std::size_t>(yy) * w + x];
      }
      out.set(x, y, clamp_u8(acc));
    }
  return out;
}

/// Integer nearest-neighbor upscale; used to meet engine minimum widths.
inline Raster scale_nearest(const Raster& img, int factor) {
  if (factor < 1) throw ParameterError("scale factor must be >= 1");
  if (factor == 1) return img;
  int ch = channels(img.format());
  Raster out(img.width() * factor, img.height() * factor, img.format());
  for (int y = 0; y < out.height(); ++y)
    for (int x = 0; x < out.width(); ++x)
      for (int c = 0; c < ch; ++c)
        out.data()[(static_cast<std::size_t>(y) * out.width() + x) * ch + c] =
            img.at(x / factor, y / factor, c);
  return out;
}

/// Population standard deviation of gray intensities.
inline double intensity_stddev(const Raster& img) {
  img.require(PixelFormat::Gray8, "intensity_stddev");
  const auto& d = img.data();
  double n = static_cast<double>(d.size());
  double sum = 0.0, sq = 0.0;
  for (std::uint8_t v : d) {
    sum += v;
    sq += static_cast<double>(v) * v;
  }
  double mean = sum / n;
  double var = sq / n - mean * mean;
  return var > 0 ? std::sqrt(var) : 0.0;
}

}  // namespace invextract

#endif  // INVEXTRACT_FILTERS_HPP
