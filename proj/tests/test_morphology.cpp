#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "invextract/morphology.hpp"

using namespace invextract;

TEST_CASE("morphology basics") {
  SECTION("empty image stays empty") {
    Raster img(16, 16, PixelFormat::Binary);
    CHECK(count_foreground(dilate(img, Kernel::rect(5, 3))) == 0);
    CHECK(count_foreground(erode(img, Kernel::rect(3, 5))) == 0);
  }
  SECTION("single pixel dilates to a 3x3 block") {
    Raster img(9, 9, PixelFormat::Binary);
    img.set(4, 4, 255);
    Raster out = dilate(img, Kernel::rect(3, 3));
    CHECK(count_foreground(out) == 9);
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) CHECK(out.at(4 + dx, 4 + dy) == 255);
  }
  SECTION("non-binary input rejected") {
    Raster img(4, 4, PixelFormat::Gray8, 7);
    CHECK_THROWS_AS(dilate(img, Kernel::rect(3, 3)), FormatError);
    CHECK_THROWS_AS(erode(img, Kernel::rect(3, 3)), FormatError);
  }
}

TEST_CASE("dilate/erode match the naive oracle on random images") {
  std::mt19937 rng(123);
  std::uniform_int_distribution<int> ksize(0, 3);
  for (int trial = 0; trial < 60; ++trial) {
    Raster img = testutil::random_binary(32, 32, rng, 0.4);
    Kernel k = Kernel::rect(2 * ksize(rng) + 1, 2 * ksize(rng) + 1);
    REQUIRE(dilate(img, k) == testutil::naive_morph(img, k, true));
    REQUIRE(erode(img, k) == testutil::naive_morph(img, k, false));
  }
  SECTION("ellipse kernels too") {
    for (int trial = 0; trial < 10; ++trial) {
      Raster img = testutil::random_binary(24, 24, rng, 0.4);
      Kernel k = Kernel::ellipse(5, 3);
      REQUIRE(dilate(img, k) == testutil::naive_morph(img, k, true));
      REQUIRE(erode(img, k) == testutil::naive_morph(img, k, false));
    }
  }
  SECTION("iterations compose") {
    Raster img = testutil::random_binary(24, 24, rng, 0.3);
    Kernel k = Kernel::rect(3, 3);
    CHECK(dilate(img, k, 2) == dilate(dilate(img, k), k));
  }
}

TEST_CASE("morphology properties") {
  std::mt19937 rng(321);
  SECTION("dilation monotonicity: A subset B implies dilate(A) subset dilate(B)") {
    for (int trial = 0; trial < 20; ++trial) {
      Raster b = testutil::random_binary(32, 32, rng, 0.4);
      Raster a = b;
      std::bernoulli_distribution drop(0.5);
      for (auto& v : a.data())
        if (v && drop(rng)) v = 0;
      Raster da = dilate(a, Kernel::rect(3, 3));
      Raster db = dilate(b, Kernel::rect(3, 3));
      for (std::size_t i = 0; i < da.data().size(); ++i)
        REQUIRE((da.data()[i] == 0 || db.data()[i] == 255));
    }
  }
  SECTION("duality: erode = NOT dilate NOT, away from the border") {
    // Foreground cleared within a kernel-radius margin makes the border-0
    // convention consistent across the complement.
    for (int trial = 0; trial < 20; ++trial) {
      Raster img = testutil::random_binary(32, 32, rng, 0.4);
      for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 32; ++x)
          if (x < 3 || y < 3 || x >= 29 || y >= 29) img.set(x, y, 0);
      Kernel k = Kernel::rect(3, 3);
      CHECK(erode(img, k) == binary_not(dilate(binary_not(img), k)));
    }
  }
  SECTION("opening is idempotent") {
    for (int trial = 0; trial < 20; ++trial) {
      Raster img = testutil::random_binary(32, 32, rng, 0.5);
      Kernel k = trial % 2 ? Kernel::rect(3, 3) : Kernel::ellipse(3, 3);
      Raster once = open(img, k);
      CHECK(open(once, k) == once);
    }
  }
}

TEST_CASE("binary combinators") {
  std::mt19937 rng(9);
  Raster a = testutil::random_binary(16, 16, rng);
  Raster b = testutil::random_binary(16, 16, rng);
  Raster o = binary_or(a, b);
  Raster n = binary_and(a, b);
  Raster s = binary_subtract(a, b);
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    bool av = a.data()[i] != 0, bv = b.data()[i] != 0;
    CHECK((o.data()[i] != 0) == (av || bv));
    CHECK((n.data()[i] != 0) == (av && bv));
    CHECK((s.data()[i] != 0) == (av && !bv));
  }
  CHECK(binary_not(binary_not(a)) == a);
  Raster small(4, 4, PixelFormat::Binary);
  CHECK_THROWS_AS(binary_or(a, small), ParameterError);
}
