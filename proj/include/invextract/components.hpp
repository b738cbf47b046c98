#ifndef INVEXTRACT_COMPONENTS_HPP
#define INVEXTRACT_COMPONENTS_HPP

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "invextract/raster.hpp"

namespace invextract {

struct Component {
  int label = 0;
  long long area = 0;
  Box bbox;
  std::vector<PointF> boundary;  // external contour, in tracing order
};

namespace detail {

// Clockwise neighbor order in image coordinates (y grows downward).
inline constexpr int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
inline constexpr int kDy[8] = {0, 1, 1, 1, 0, -1, -1, -1};

/// Moore-neighbor tracing of the external contour, clockwise, starting from
/// the component's topmost-leftmost pixel.
inline std::vector<PointF> trace_boundary(const std::vector<int>& labels,
                                          int w, int h, int label, int sx,
                                          int sy) {
  auto is_fg = [&](int x, int y) {
    return x >= 0 && x < w && y >= 0 && y < h &&
           labels[static_cast<std::size_t>(y) * w + x] == label;
  };

  std::vector<PointF> boundary;
  boundary.push_back({static_cast<double>(sx), static_cast<double>(sy)});

  // Backtrack starts west of the start pixel, which is background by choice
  // of the scan order. Jacob's criterion: stop when the start pixel is
  // re-entered with the same backtrack direction.
  int cx = sx, cy = sy;
  int back_dir = 4;
  const int start_back = back_dir;

  long long guard = 4LL * w * h + 16;
  while (guard-- > 0) {
    int found = -1;
    for (int i = 1; i <= 8; ++i) {
      int d = (back_dir + i) % 8;
      if (is_fg(cx + kDx[d], cy + kDy[d])) {
        found = d;
        break;
      }
    }
    if (found < 0) break;  // isolated pixel
    // New backtrack: the neighbor checked just before the found one,
    // re-expressed relative to the pixel we move onto.
    int prev = (found + 7) % 8;
    int bx = cx + kDx[prev], by = cy + kDy[prev];
    cx += kDx[found];
    cy += kDy[found];
    back_dir = -1;
    for (int d = 0; d < 8; ++d)
      if (cx + kDx[d] == bx && cy + kDy[d] == by) {
        back_dir = d;
        break;
      }
    if (cx == sx && cy == sy && back_dir == start_back) break;
    boundary.push_back({static_cast<double>(cx), static_cast<double>(cy)});
  }
  return boundary;
}

}  // namespace detail

/// 8-connectivity labeling of the foreground with external boundary tracing.
/// Components are ordered by (bbox.y, bbox.x) and relabeled 1..n in that
/// order.
inline std::vector<Component> connected_components(const Raster& img) {
  img.require(PixelFormat::Binary, "connected_components");
  int w = img.width(), h = img.height();
  std::vector<int> labels(static_cast<std::size_t>(w) * h, 0);
  std::vector<Component> comps;
  std::vector<std::pair<int, int>> stack;
  std::vector<std::pair<int, int>> seeds;

  int next = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (img.data()[i] == 0 || labels[i] != 0) continue;
      ++next;
      Component comp;
      comp.label = next;
      int minx = x, maxx = x, miny = y, maxy = y;
      stack.clear();
      stack.emplace_back(x, y);
      labels[i] = next;
      seeds.emplace_back(x, y);  // topmost-leftmost by scan order
      while (!stack.empty()) {
        auto [px, py] = stack.back();
        stack.pop_back();
        ++comp.area;
        minx = std::min(minx, px);
        maxx = std::max(maxx, px);
        miny = std::min(miny, py);
        maxy = std::max(maxy, py);
        for (int d = 0; d < 8; ++d) {
          int nx = px + detail::kDx[d], ny = py + detail::kDy[d];
          if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
          std::size_t ni = static_cast<std::size_t>(ny) * w + nx;
          if (img.data()[ni] != 0 && labels[ni] == 0) {
            labels[ni] = next;
            stack.emplace_back(nx, ny);
          }
        }
      }
      comp.bbox = Box{minx, miny, maxx - minx + 1, maxy - miny + 1};
      comps.push_back(std::move(comp));
    }

  for (std::size_t i = 0; i < comps.size(); ++i) {
    auto [sx, sy] = seeds[i];
    comps[i].boundary =
        detail::trace_boundary(labels, w, h, comps[i].label, sx, sy);
  }

  std::sort(comps.begin(), comps.end(), [](const Component& a,
                                           const Component& b) {
    if (a.bbox.y != b.bbox.y) return a.bbox.y < b.bbox.y;
    return a.bbox.x < b.bbox.x;
  });
  for (std::size_t i = 0; i < comps.size(); ++i)
    comps[i].label = static_cast<int>(i) + 1;
  return comps;
}

/// Paints the pixels of one labeled component into a fresh binary mask.
/// Convenience for shape tests on individual components.
inline Raster component_mask(const Raster& img, const Component& comp) {
  img.require(PixelFormat::Binary, "component_mask");
  // Rebuild by flood fill from the first boundary point.
  Raster out(img.width(), img.height(), PixelFormat::Binary);
  if (comp.boundary.empty()) return out;
  std::vector<std::pair<int, int>> stack;
  int sx = static_cast<int>(comp.boundary.front().x);
  int sy = static_cast<int>(comp.boundary.front().y);
  stack.emplace_back(sx, sy);
  out.set(sx, sy, 255);
  while (!stack.empty()) {
    auto [px, py] = stack.back();
    stack.pop_back();
    for (int d = 0; d < 8; ++d) {
      int nx = px + detail::kDx[d], ny = py + detail::kDy[d];
      if (!img.in_bounds(nx, ny)) continue;
      if (img.at(nx, ny) != 0 && out.at(nx, ny) == 0) {
        out.set(nx, ny, 255);
        stack.emplace_back(nx, ny);
      }
    }
  }
  return out;
}

inline double cross(const PointF& o, const PointF& a, const PointF& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// Monotone-chain convex hull. Returns vertices with positive signed area in
/// image coordinates; interior and collinear points are dropped.
inline std::vector<PointF> convex_hull(std::vector<PointF> pts) {
  std::sort(pts.begin(), pts.end(), [](const PointF& a, const PointF& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3)
    throw GeometryError("convex hull needs at least 3 distinct points");

  std::size_t n = pts.size();
  std::vector<PointF> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3)
    throw GeometryError("points are collinear; hull is degenerate");
  return hull;
}

}  // namespace invextract

#endif  // INVEXTRACT_COMPONENTS_HPP
