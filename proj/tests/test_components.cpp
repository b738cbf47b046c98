#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "helpers.hpp"
#include "invextract/components.hpp"
#include "invextract/edges.hpp"

using namespace invextract;

TEST_CASE("connected_components basics") {
  SECTION("empty image yields no components") {
    Raster img(10, 10, PixelFormat::Binary);
    CHECK(connected_components(img).empty());
  }
  SECTION("two disjoint 5x5 blocks") {
    Raster img(20, 10, PixelFormat::Binary);
    for (int y = 2; y < 7; ++y)
      for (int x = 1; x < 6; ++x) img.set(x, y, 255);
    for (int y = 3; y < 8; ++y)
      for (int x = 12; x < 17; ++x) img.set(x, y, 255);
    auto comps = connected_components(img);
    REQUIRE(comps.size() == 2);
    // Ordered by (bbox.y, bbox.x).
    CHECK(comps[0].bbox == Box{1, 2, 5, 5});
    CHECK(comps[1].bbox == Box{12, 3, 5, 5});
    for (const auto& c : comps) {
      CHECK(c.area == 25);
      CHECK(c.bbox.w == 5);
      CHECK(c.bbox.h == 5);
    }
  }
  SECTION("boundary points lie within the bbox and trace the contour") {
    Raster img(12, 12, PixelFormat::Binary);
    for (int y = 3; y < 9; ++y)
      for (int x = 2; x < 10; ++x) img.set(x, y, 255);
    auto comps = connected_components(img);
    REQUIRE(comps.size() == 1);
    const auto& c = comps[0];
    // Perimeter of an 8x6 rectangle traced pixel-by-pixel.
    CHECK(c.boundary.size() == 2u * (8 + 6) - 4);
    for (const auto& p : c.boundary) {
      CHECK(p.x >= c.bbox.x);
      CHECK(p.x < c.bbox.right());
      CHECK(p.y >= c.bbox.y);
      CHECK(p.y < c.bbox.bottom());
    }
  }
  SECTION("single-pixel component") {
    Raster img(5, 5, PixelFormat::Binary);
    img.set(2, 2, 255);
    auto comps = connected_components(img);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].area == 1);
    REQUIRE(comps[0].boundary.size() == 1);
    CHECK(comps[0].boundary[0] == PointF{2, 2});
  }
}

TEST_CASE("connected_components match the flood-fill oracle") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    Raster img = testutil::random_binary(32, 32, rng, 0.35);
    auto comps = connected_components(img);
    auto labels = testutil::flood_labels(img);

    int oracle_count = 0;
    std::map<int, long long> oracle_area;
    for (int v : labels)
      if (v) {
        oracle_count = std::max(oracle_count, v);
        ++oracle_area[v];
      }
    REQUIRE(comps.size() == static_cast<std::size_t>(oracle_count));

    std::multiset<long long> got, want;
    long long total_area = 0, fg = 0;
    for (const auto& c : comps) {
      got.insert(c.area);
      total_area += c.area;
    }
    for (auto& [k, v] : oracle_area) want.insert(v);
    REQUIRE(got == want);
    for (auto v : img.data()) fg += v != 0;
    REQUIRE(total_area == fg);  // areas partition the foreground
  }
}

namespace {

// Brute-force hull membership: a point is a hull vertex iff it is not
// strictly inside (or on the interior of an edge of) any triangle of the
// other points.
bool inside_triangle(const PointF& p, const PointF& a, const PointF& b,
                     const PointF& c) {
  double d1 = cross(a, b, p), d2 = cross(b, c, p), d3 = cross(c, a, p);
  bool has_neg = d1 < 0 || d2 < 0 || d3 < 0;
  bool has_pos = d1 > 0 || d2 > 0 || d3 > 0;
  return !(has_neg && has_pos);
}

std::set<std::pair<double, double>> hull_oracle(
    const std::vector<PointF>& pts) {
  std::set<std::pair<double, double>> verts;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool interior = false;
    for (std::size_t a = 0; a < pts.size() && !interior; ++a)
      for (std::size_t b = a + 1; b < pts.size() && !interior; ++b)
        for (std::size_t c = b + 1; c < pts.size() && !interior; ++c) {
          if (a == i || b == i || c == i) continue;
          if (inside_triangle(pts[i], pts[a], pts[b], pts[c]))
            interior = true;
        }
    if (!interior) verts.insert({pts[i].x, pts[i].y});
  }
  return verts;
}

}  // namespace

TEST_CASE("convex_hull") {
  SECTION("triangle is its own hull") {
    auto hull = convex_hull({{0, 0}, {10, 0}, {5, 8}});
    CHECK(hull.size() == 3);
  }
  SECTION("interior point excluded") {
    auto hull = convex_hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}});
    REQUIRE(hull.size() == 4);
    for (const auto& p : hull) CHECK(p != PointF{0.5, 0.5});
  }
  SECTION("degenerate inputs rejected") {
    CHECK_THROWS_AS(convex_hull({{0, 0}, {1, 1}}), GeometryError);
    CHECK_THROWS_AS(convex_hull({{0, 0}, {1, 1}, {2, 2}, {3, 3}}),
                    GeometryError);
  }
  SECTION("matches brute-force membership on random point sets") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> coord(0.0, 100.0);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<PointF> pts;
      for (int i = 0; i < 20; ++i) pts.push_back({coord(rng), coord(rng)});
      auto hull = convex_hull(pts);
      std::set<std::pair<double, double>> got;
      for (const auto& p : hull) got.insert({p.x, p.y});
      REQUIRE(got == hull_oracle(pts));
      // Positive signed area and strict convexity in traversal order.
      double area2 = 0.0;
      for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& p = hull[i];
        const auto& q = hull[(i + 1) % hull.size()];
        area2 += p.x * q.y - q.x * p.y;
        REQUIRE(cross(p, q, hull[(i + 2) % hull.size()]) > 0.0);
      }
      REQUIRE(area2 > 0.0);
    }
  }
}

TEST_CASE("canny_edges") {
  SECTION("constant image has no edges") {
    Raster img(16, 16, PixelFormat::Gray8, 90);
    CHECK(count_foreground(canny_edges(img, 50, 150)) == 0);
  }
  SECTION("parameter validation") {
    Raster img(16, 16, PixelFormat::Gray8, 0);
    CHECK_THROWS_AS(canny_edges(img, 150, 50), ParameterError);
    CHECK_THROWS_AS(canny_edges(img, 0, 50), ParameterError);
  }
  SECTION("vertical step produces a single thin line") {
    Raster img(20, 12, PixelFormat::Gray8);
    for (int y = 0; y < 12; ++y)
      for (int x = 0; x < 20; ++x) img.set(x, y, x < 10 ? 0 : 255);
    Raster edges = canny_edges(img, 100, 500);
    for (int y = 1; y < 11; ++y) {
      int count = 0, col = -1;
      for (int x = 0; x < 20; ++x)
        if (edges.at(x, y)) {
          ++count;
          col = x;
        }
      REQUIRE(count == 1);
      CHECK(std::abs(col - 10) <= 1);
    }
  }
  SECTION("hysteresis keeps weak segments only when connected to strong") {
    // Two ramps. First block: edge contrast decays linearly down the column,
    // strong at the top, weak at the bottom, one connected line. Second
    // block: uniformly weak contrast, isolated.
    Raster img(40, 24, PixelFormat::Gray8);
    for (int y = 0; y < 24; ++y) {
      int v = 255 - 10 * y;
      for (int x = 0; x < 40; ++x) {
        int px = 0;
        if (x >= 10 && x < 25) px = v;  // ramped block, edge at x=10
        if (x >= 30) px = 60;           // weak block, edge at x=30
        img.set(x, y, px);
      }
    }
    // Interior magnitude of a vertical step of height d is ~4d: rows with
    // v >= 150 are strong, below that weak (>= low while 4v >= 150).
    Raster edges = canny_edges(img, 150, 600);
    bool weak_connected_survives = false;
    for (int y = 14; y < 21; ++y)
      for (int x = 8; x <= 12; ++x)
        if (edges.at(x, y)) weak_connected_survives = true;
    CHECK(weak_connected_survives);
    for (int y = 2; y < 22; ++y)
      for (int x = 28; x <= 32; ++x)
        CHECK(edges.at(x, y) == 0);  // isolated weak segment suppressed
  }
}
