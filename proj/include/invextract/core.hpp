#ifndef INVEXTRACT_CORE_HPP
#define INVEXTRACT_CORE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace invextract {

// ---------------------------------------------------------------------------
// Error hierarchy. Recoverable absences (no lattice found, no boxes found)
// are modeled as std::optional returns, not exceptions.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raster has the wrong pixel format for the operation.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// An argument value violates the operation's preconditions.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Degenerate geometry: collinear corners, singular systems, zero-area quads.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// No component survives the document-boundary area filter.
class DocumentNotFoundError : public Error {
 public:
  using Error::Error;
};

/// Page could not be split into header/product sections.
class SegmentationError : public Error {
 public:
  using Error::Error;
};

/// Product table has no detectable header row.
class TableError : public Error {
 public:
  using Error::Error;
};

/// OCR engine process failed or produced unparseable output.
class EngineError : public Error {
 public:
  EngineError(const std::string& msg, std::string raw_output = {})
      : Error(msg), raw(std::move(raw_output)) {}
  std::string raw;
};

/// File or codec failure.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Fixture spec exceeds page capacity.
class GenerationError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Small geometry values shared by every module.
// ---------------------------------------------------------------------------

struct PointF {
  double x = 0.0;
  double y = 0.0;
};

inline bool operator==(const PointF& a, const PointF& b) {
  return a.x == b.x && a.y == b.y;
}

/// Axis-aligned pixel box, inclusive origin, exclusive right/bottom.
struct Box {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  int right() const { return x + w; }
  int bottom() const { return y + h; }
  long long area() const { return static_cast<long long>(w) * h; }
  double cx() const { return x + w / 2.0; }
  double cy() const { return y + h / 2.0; }

  bool contains(double px, double py) const {
    return px >= x && px < x + w && py >= y && py < y + h;
  }

  bool empty() const { return w <= 0 || h <= 0; }

  Box intersect(const Box& o) const {
    int x0 = std::max(x, o.x);
    int y0 = std::max(y, o.y);
    int x1 = std::min(right(), o.right());
    int y1 = std::min(bottom(), o.bottom());
    if (x1 <= x0 || y1 <= y0) return Box{0, 0, 0, 0};
    return Box{x0, y0, x1 - x0, y1 - y0};
  }

  Box unite(const Box& o) const {
    if (empty()) return o;
    if (o.empty()) return *this;
    int x0 = std::min(x, o.x);
    int y0 = std::min(y, o.y);
    int x1 = std::max(right(), o.right());
    int y1 = std::max(bottom(), o.bottom());
    return Box{x0, y0, x1 - x0, y1 - y0};
  }
};

inline bool operator==(const Box& a, const Box& b) {
  return a.x == b.x && a.y == b.y && a.w == b.w && a.h == b.h;
}

inline double iou(const Box& a, const Box& b) {
  long long inter = a.intersect(b).area();
  long long uni = a.area() + b.area() - inter;
  return uni > 0 ? static_cast<double>(inter) / static_cast<double>(uni) : 0.0;
}

// Round-half-up, the pinned rounding rule wherever intensities are produced.
inline int round_half_up(double v) {
  return static_cast<int>(std::floor(v + 0.5));
}

inline std::uint8_t clamp_u8(double v) {
  return static_cast<std::uint8_t>(std::clamp(round_half_up(v), 0, 255));
}

}  // namespace invextract

#endif  // INVEXTRACT_CORE_HPP
