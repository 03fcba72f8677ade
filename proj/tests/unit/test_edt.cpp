// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "ltshape/edt.hpp"
#include "ltshape/errors.hpp"
#include "ltshape/synth.hpp"

using namespace ltshape;

namespace {

// Nearest background by exhaustive search, written independently of the library.
template <std::size_t Rank>
Grid<double, Rank> naive_edt(const Mask<Rank>& m) {
  Grid<double, Rank> out(m.shape(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    const auto p = m.coord(i);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j]) continue;
      const auto q = m.coord(j);
      double s = 0.0;
      for (std::size_t d = 0; d < Rank; ++d) {
        const double t = static_cast<double>(p[d]) - static_cast<double>(q[d]);
        s += t * t;
      }
      best = std::min(best, s);
    }
    out[i] = std::sqrt(best);
  }
  return out;
}

}  // namespace

TEST_CASE("single background center in a 3x3 block") {
  Mask<2> m({3, 3}, 1);
  m.set({1, 1}, 0);
  const auto d = edt(m);
  CHECK(d.get({1, 1}) == 0.0);
  CHECK(d.get({0, 1}) == 1.0);
  CHECK(d.get({1, 0}) == 1.0);
  CHECK(d.get({0, 0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(d.get({2, 2}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("the grid border is not background") {
  // One background element at the right end of a single row.
  Mask<2> m({1, 5}, std::vector<std::uint8_t>{1, 1, 1, 1, 0});
  const auto d = edt(m);
  CHECK(d.get({0, 0}) == 4.0);
  CHECK(d.get({0, 3}) == 1.0);
}

TEST_CASE("all-foreground and all-background masks") {
  CHECK_THROWS_AS(edt(Mask<2>({4, 4}, 1)), NoBackground);
  CHECK_THROWS_AS(edt(Mask<3>({2, 3, 4}, 1)), NoBackground);
  const auto zero = edt(Mask<3>({2, 3, 4}, 0));
  for (double v : zero.data()) CHECK(v == 0.0);
}

TEST_CASE("squared distances are integers and match the distances") {
  const auto m = random_blob_mask<2>({30, 40}, 5);
  const auto sq = squared_edt(m);
  const auto d = edt(m);
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(sq[i] >= 0);
    CHECK(d[i] == std::sqrt(static_cast<double>(sq[i])));
  }
}

TEST_CASE("matches an exhaustive search on random masks") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto m2 = random_blob_mask<2>({17 + seed, 23}, seed, 1, 0.6);
    CHECK(edt(m2) == naive_edt(m2));
    CHECK(edt_bruteforce(m2) == naive_edt(m2));
    const auto m3 = random_blob_mask<3>({7, 9 + seed, 8}, seed, 1, 0.6);
    CHECK(edt(m3) == naive_edt(m3));
  }
}

TEST_CASE("label values are treated as foreground") {
  Grid2D<std::uint32_t> labels({3, 4}, std::vector<std::uint32_t>{0, 0, 0, 0, 0, 7, 9, 0, 0, 0, 0, 0});
  const auto d = edt(labels);
  CHECK(d.get({1, 1}) == 1.0);
  CHECK(d.get({1, 2}) == 1.0);
}

TEST_CASE("translation inside the canvas shifts the field") {
  Mask<2> a({40, 40}, 0), b({40, 40}, 0);
  const auto obj = random_blob_mask<2>({12, 15}, 3, 1, 0.7);
  for (std::size_t i = 0; i < obj.size(); ++i) {
    const auto c = obj.coord(i);
    a.set({c[0] + 5, c[1] + 6}, obj[i]);
    b.set({c[0] + 20, c[1] + 17}, obj[i]);
  }
  const auto da = edt(a), db = edt(b);
  for (std::size_t i = 0; i < obj.size(); ++i) {
    const auto c = obj.coord(i);
    CHECK(da.get({c[0] + 5, c[1] + 6}) == db.get({c[0] + 20, c[1] + 17}));
  }
}

TEST_CASE("ball in 3D") {
  ShapeSpec s;
  s.kind = ShapeKind::sphere;
  s.axes = {6, 6, 6};
  s.canvas = {17, 17, 17};
  const auto m = rasterize<3>(s);
  const auto d = edt(m);
  // Center (8, 8, 8): nearest outside centers lie at squared distance 37.
  CHECK(d.get({8, 8, 8}) == std::sqrt(37.0));
}
