#ifndef INVEXTRACT_COLOR_HPP
#define INVEXTRACT_COLOR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "invextract/core.hpp"

namespace invextract {

struct Hsv {
  double h = 0.0;  // [0, 360)
  double s = 0.0;  // [0, 1]
  double v = 0.0;  // [0, 1]
};

inline Hsv rgb_to_hsv(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8) {
  double r = r8 / 255.0, g = g8 / 255.0, b = b8 / 255.0;
  double mx = std::max({r, g, b});
  double mn = std::min({r, g, b});
  double d = mx - mn;
  Hsv out;
  out.v = mx;
  out.s = mx > 0.0 ? d / mx : 0.0;
  if (d <= 0.0) {
    out.h = 0.0;
  } else if (mx == r) {
    out.h = 60.0 * std::fmod((g - b) / d, 6.0);
  } else if (mx == g) {
    out.h = 60.0 * ((b - r) / d + 2.0);
  } else {
    out.h = 60.0 * ((r - g) / d + 4.0);
  }
  if (out.h < 0.0) out.h += 360.0;
  return out;
}

inline void hsv_to_rgb(const Hsv& in, std::uint8_t& r, std::uint8_t& g,
                       std::uint8_t& b) {
  double c = in.v * in.s;
  double hp = std::fmod(std::max(0.0, in.h), 360.0) / 60.0;
  double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r1 = 0, g1 = 0, b1 = 0;
  switch (static_cast<int>(hp)) {
    case 0: r1 = c; g1 = x; break;
    case 1: r1 = x; g1 = c; break;
    case 2: g1 = c; b1 = x; break;
    case 3: g1 = x; b1 = c; break;
    case 4: r1 = x; b1 = c; break;
    default: r1 = c; b1 = x; break;
  }
  double m = in.v - c;
  r = clamp_u8((r1 + m) * 255.0);
  g = clamp_u8((g1 + m) * 255.0);
  b = clamp_u8((b1 + m) * 255.0);
}

}  // namespace invextract

#endif  // INVEXTRACT_COLOR_HPP
