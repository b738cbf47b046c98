#ifndef INVEXTRACT_GEOMETRY_HPP
#define INVEXTRACT_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <vector>

#include "invextract/components.hpp"
#include "invextract/filters.hpp"
#include "invextract/morphology.hpp"
#include "invextract/raster.hpp"

namespace invextract {

/// Four ordered document corners in source-image pixel coordinates. The
/// stored order (tl, tr, br, bl) has positive signed area in image
/// coordinates and is strictly convex.
struct Quad {
  PointF tl, tr, br, bl;

  Quad(PointF a, PointF b, PointF c, PointF d) : tl(a), tr(b), br(c), bl(d) {
    validate();
  }

  std::array<PointF, 4> corners() const { return {tl, tr, br, bl}; }

  double area() const {
    auto c = corners();
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
      const PointF& p = c[i];
      const PointF& q = c[(i + 1) % 4];
      s += p.x * q.y - q.x * p.y;
    }
    return s / 2.0;
  }

  static Quad axis_aligned(double x, double y, double w, double h) {
    return Quad({x, y}, {x + w - 1, y}, {x + w - 1, y + h - 1},
                {x, y + h - 1});
  }

 private:
  void validate() const {
    auto c = corners();
    for (int i = 0; i < 4; ++i) {
      double turn = cross(c[i], c[(i + 1) % 4], c[(i + 2) % 4]);
      if (!(turn > 0.0))
        throw GeometryError("quad is not strictly convex in tl,tr,br,bl order");
    }
    if (!(area() > 0.0)) throw GeometryError("quad has non-positive area");
  }
};

/// 3x3 projective map, normalized so m[2][2] = 1.
struct Homography {
  std::array<std::array<double, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

  static Homography identity() { return Homography{}; }

  static Homography translation(double dx, double dy) {
    Homography h;
    h.m[0][2] = dx;
    h.m[1][2] = dy;
    return h;
  }

  static Homography scaling(double sx, double sy) {
    Homography h;
    h.m[0][0] = sx;
    h.m[1][1] = sy;
    return h;
  }

  PointF apply(const PointF& p) const {
    double w = m[2][0] * p.x + m[2][1] * p.y + m[2][2];
    if (std::abs(w) < 1e-12)
      throw GeometryError("point maps to infinity under homography");
    return {(m[0][0] * p.x + m[0][1] * p.y + m[0][2]) / w,
            (m[1][0] * p.x + m[1][1] * p.y + m[1][2]) / w};
  }

  double det() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }

  Homography inverse() const {
    double d = det();
    if (std::abs(d) < 1e-12) throw GeometryError("homography is singular");
    const auto& a = m;
    Homography r;
    r.m[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / d;
    r.m[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / d;
    r.m[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / d;
    r.m[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) / d;
    r.m[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / d;
    r.m[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / d;
    r.m[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) / d;
    r.m[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / d;
    r.m[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / d;
    return r.normalized();
  }

  /// this ∘ other: applies `other` first.
  Homography compose(const Homography& other) const {
    Homography r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += m[i][k] * other.m[k][j];
        r.m[i][j] = s;
      }
    return r.normalized();
  }

  Homography normalized() const {
    Homography r = *this;
    double s = r.m[2][2];
    if (std::abs(s) < 1e-12)
      throw GeometryError("homography cannot be normalized (m22 ~ 0)");
    for (auto& row : r.m)
      for (double& v : row) v /= s;
    return r;
  }
};

/// Removes a fixed strip from all four sides.
inline Raster crop_edges(const Raster& img, int margin = 10) {
  if (margin < 0) throw ParameterError("crop margin must be >= 0");
  if (margin == 0) return img;
  if (img.width() <= 2 * margin || img.height() <= 2 * margin)
    throw ParameterError("image too small for edge crop");
  return img.crop(
      Box{margin, margin, img.width() - 2 * margin, img.height() - 2 * margin});
}

/// Pads the image with a constant border, default white.
inline Raster pad_border(const Raster& img, int margin = 4,
                         std::uint8_t value = 255) {
  if (margin < 0) throw ParameterError("pad margin must be >= 0");
  if (margin == 0) return img;
  int ch = channels(img.format());
  Raster out(img.width() + 2 * margin, img.height() + 2 * margin, img.format(),
             value);
  for (int y = 0; y < img.height(); ++y)
    std::memcpy(
        &out.data()[(static_cast<std::size_t>(y + margin) * out.width() +
                     margin) *
                    ch],
        &img.data()[static_cast<std::size_t>(y) * img.width() * ch],
        static_cast<std::size_t>(img.width()) * ch);
  return out;
}

namespace detail {

// Smaller y, then smaller x breaks ties for every corner selection.
inline bool corner_tie_less(const PointF& a, const PointF& b) {
  if (a.y != b.y) return a.y < b.y;
  return a.x < b.x;
}

template <typename Score>
inline std::size_t select_corner(const std::vector<PointF>& pts,
                                 const std::vector<bool>& used, Score score,
                                 bool want_min) {
  std::size_t best = pts.size();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    if (best == pts.size()) {
      best = i;
      continue;
    }
    double si = score(pts[i]), sb = score(pts[best]);
    bool better = want_min ? si < sb : si > sb;
    if (better || (si == sb && corner_tie_less(pts[i], pts[best]))) best = i;
  }
  return best;
}

}  // namespace detail

/// Orders 4 points into (tl, tr, br, bl) with the sum/diff heuristic:
/// tl = argmin(x+y), br = argmax(x+y), tr = argmin(y-x), bl = the rest; ties
/// broken by smaller y then smaller x, each point used exactly once. When the
/// heuristic degenerates (diagonal ties), falls back to splitting the points
/// into left/right pairs by x and ordering each pair by y.
inline Quad order_corners(const std::vector<PointF>& pts) {
  if (pts.size() != 4) throw GeometryError("order_corners expects 4 points");
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (pts[i] == pts[j])
        throw GeometryError("order_corners: duplicate points");
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k)
        if (std::abs(cross(pts[i], pts[j], pts[k])) < 1e-12)
          throw GeometryError("order_corners: three points are collinear");

  auto sum = [](const PointF& p) { return p.x + p.y; };
  auto diff = [](const PointF& p) { return p.y - p.x; };

  std::vector<bool> used(4, false);
  std::size_t itl = detail::select_corner(pts, used, sum, true);
  used[itl] = true;
  std::size_t ibr = detail::select_corner(pts, used, sum, false);
  used[ibr] = true;
  std::size_t itr = detail::select_corner(pts, used, diff, true);
  used[itr] = true;
  std::size_t ibl = detail::select_corner(pts, used, diff, false);

  try {
    return Quad(pts[itl], pts[itr], pts[ibr], pts[ibl]);
  } catch (const GeometryError&) {
    // Diagonal tie made the sum/diff assignment fold; use the x-split rule.
    std::vector<PointF> sorted = pts;
    std::sort(sorted.begin(), sorted.end(),
              [](const PointF& a, const PointF& b) {
                if (a.x != b.x) return a.x < b.x;
                return a.y < b.y;
              });
    PointF tl = sorted[0], bl = sorted[1];
    if (bl.y < tl.y) std::swap(tl, bl);
    PointF tr = sorted[2], br = sorted[3];
    if (br.y < tr.y) std::swap(tr, br);
    return Quad(tl, tr, br, bl);
  }
}

/// Locates the document boundary: Otsu binarization, one 3x3 dilation,
/// connected components, area filter, convex hull of the largest survivor,
/// sum/diff corner extraction. The 35,000 px^2 default area floor assumes a
/// ~3 MP capture and is scaled linearly with the actual image area.
inline Quad detect_document_quad(const Raster& img, double min_area = 35000) {
  img.require(PixelFormat::Gray8, "detect_document_quad");
  double scale =
      static_cast<double>(img.width()) * img.height() / 3'000'000.0;
  double area_floor = min_area * scale;

  auto [binary, thr] = threshold_otsu(img);
  (void)thr;
  Raster grown = dilate(binary, Kernel::rect(3, 3), 1);
  auto comps = connected_components(grown);

  const Component* best = nullptr;
  for (const auto& c : comps) {
    if (static_cast<double>(c.area) < area_floor) continue;
    if (!best || c.area > best->area) best = &c;
  }
  if (!best)
    throw DocumentNotFoundError(
        "no document found: no component passes the area filter");

  std::vector<PointF> hull;
  try {
    hull = convex_hull(best->boundary);
  } catch (const GeometryError&) {
    throw GeometryError("document hull is degenerate");
  }

  std::vector<bool> used(hull.size(), false);
  auto sum = [](const PointF& p) { return p.x + p.y; };
  auto diff = [](const PointF& p) { return p.y - p.x; };
  std::size_t itl = detail::select_corner(hull, used, sum, true);
  used[itl] = true;
  std::size_t ibr = detail::select_corner(hull, used, sum, false);
  used[ibr] = true;
  std::size_t itr = detail::select_corner(hull, used, diff, true);
  used[itr] = true;
  std::size_t ibl = detail::select_corner(hull, used, diff, false);

  std::vector<PointF> corners{hull[itl], hull[itr], hull[ibr], hull[ibl]};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (corners[i] == corners[j])
        throw GeometryError("document hull yields fewer than 4 usable corners");
  return order_corners(corners);
}

/// Exact 4-point homography: solves the 8-unknown linear system mapping
/// src corners onto dst corners by Gaussian elimination with partial
/// pivoting.
inline Homography estimate_homography(const Quad& src, const Quad& dst) {
  auto s = src.corners();
  auto d = dst.corners();

  double a[8][9] = {};
  for (int i = 0; i < 4; ++i) {
    double x = s[i].x, y = s[i].y, u = d[i].x, v = d[i].y;
    double* r0 = a[2 * i];
    double* r1 = a[2 * i + 1];
    r0[0] = x;
    r0[1] = y;
    r0[2] = 1;
    r0[6] = -u * x;
    r0[7] = -u * y;
    r0[8] = u;
    r1[3] = x;
    r1[4] = y;
    r1[5] = 1;
    r1[6] = -v * x;
    r1[7] = -v * y;
    r1[8] = v;
  }

  for (int col = 0; col < 8; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 8; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-10)
      throw GeometryError("homography system is singular");
    if (pivot != col)
      for (int c = 0; c < 9; ++c) std::swap(a[pivot][c], a[col][c]);
    for (int r = 0; r < 8; ++r) {
      if (r == col) continue;
      double f = a[r][col] / a[col][col];
      for (int c = col; c < 9; ++c) a[r][c] -= f * a[col][c];
    }
  }

  Homography h;
  double* coef = &h.m[0][0];
  for (int i = 0; i < 8; ++i) coef[i] = a[i][8] / a[i][i];
  h.m[2][2] = 1.0;
  if (std::abs(h.det()) < 1e-9)
    throw GeometryError("estimated homography is singular");
  return h;
}

/// Inverse-mapped perspective warp with bilinear sampling. Samples falling
/// outside the source default to white (documents are white); Binary inputs
/// are re-thresholded at 128 to preserve the two-value invariant.
inline Raster warp_perspective(const Raster& img, const Homography& h,
                               int out_w, int out_h,
                               std::uint8_t fill = 255) {
  if (out_w < 1 || out_h < 1)
    throw ParameterError("warp output dimensions must be >= 1");
  if (img.format() == PixelFormat::Binary && fill != 0) fill = 255;
  Homography inv = h.inverse();
  int ch = channels(img.format());
  Raster out(out_w, out_h, img.format(), fill);
  double w_max = img.width() - 1.0, h_max = img.height() - 1.0;
  for (int y = 0; y < out_h; ++y)
    for (int x = 0; x < out_w; ++x) {
      PointF sp = inv.apply({static_cast<double>(x), static_cast<double>(y)});
      if (sp.x < 0.0 || sp.x > w_max || sp.y < 0.0 || sp.y > h_max)
        continue;  // keeps the fill value
      int x0 = static_cast<int>(std::floor(sp.x));
      int y0 = static_cast<int>(std::floor(sp.y));
      int x1 = std::min(x0 + 1, img.width() - 1);
      int y1 = std::min(y0 + 1, img.height() - 1);
      double fx = sp.x - x0, fy = sp.y - y0;
      for (int c = 0; c < ch; ++c) {
        double v00 = img.at(x0, y0, c), v10 = img.at(x1, y0, c);
        double v01 = img.at(x0, y1, c), v11 = img.at(x1, y1, c);
        double v = v00 * (1 - fx) * (1 - fy) + v10 * fx * (1 - fy) +
                   v01 * (1 - fx) * fy + v11 * fx * fy;
        std::uint8_t u = clamp_u8(v);
        if (img.format() == PixelFormat::Binary) u = u >= 128 ? 255 : 0;
        out.data()[(static_cast<std::size_t>(y) * out_w + x) * ch + c] = u;
      }
    }
  return out;
}

/// Output rectangle for rectifying a detected quad: width takes the longer of
/// the top and bottom edges, height the longer of the left and right edges.
inline std::pair<int, int> rectified_size(const Quad& q) {
  auto dist = [](const PointF& a, const PointF& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
  };
  int w = static_cast<int>(
      std::ceil(std::max(dist(q.tl, q.tr), dist(q.bl, q.br)))) + 1;
  int h = static_cast<int>(
      std::ceil(std::max(dist(q.tl, q.bl), dist(q.tr, q.br)))) + 1;
  return {std::max(w, 1), std::max(h, 1)};
}

}  // namespace invextract

#endif  // INVEXTRACT_GEOMETRY_HPP
