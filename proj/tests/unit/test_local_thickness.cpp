// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ltshape/edt.hpp"
#include "ltshape/labeling.hpp"
#include "ltshape/local_thickness.hpp"
#include "ltshape/synth.hpp"

using namespace ltshape;

namespace {

// LT(p) = max d(q) over q with |p - q| < d(q), by direct enumeration of (p, q).
template <std::size_t Rank>
Grid<double, Rank> naive_lt(const Grid<double, Rank>& dist) {
  Grid<double, Rank> out(dist.shape(), 0.0);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] <= 0.0) continue;
    const auto p = dist.coord(i);
    double best = 0.0;
    for (std::size_t j = 0; j < dist.size(); ++j) {
      if (dist[j] <= best) continue;
      const auto q = dist.coord(j);
      double s = 0.0;
      for (std::size_t d = 0; d < Rank; ++d) {
        const double t = static_cast<double>(p[d]) - static_cast<double>(q[d]);
        s += t * t;
      }
      // Squared radii are integers: compare exactly.
      if (s < std::round(dist[j] * dist[j])) best = dist[j];
    }
    out[i] = best;
  }
  return out;
}

}  // namespace

TEST_CASE("infinite strip of width 5 has constant thickness 3") {
  // Rows 1..5 foreground; the grid ends left and right are not background.
  Mask<2> m({7, 30}, 0);
  for (std::size_t r = 1; r <= 5; ++r)
    for (std::size_t c = 0; c < 30; ++c) m.set({r, c}, 1);
  const auto lt = local_thickness_fast(edt(m));
  for (std::size_t i = 0; i < m.size(); ++i) CHECK(lt[i] == (m[i] ? 3.0 : 0.0));
  CHECK(local_thickness_exact(edt(m)) == lt);
}

TEST_CASE("disk is covered by its central ball") {
  ShapeSpec s;
  s.kind = ShapeKind::disk;
  s.axes = {15, 15, 15};
  s.canvas = {41, 41};
  const auto m = rasterize<2>(s);
  const auto d = edt(m);
  const auto lt = local_thickness_fast(d);
  const double top = *std::max_element(d.data().begin(), d.data().end());
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i]) CHECK(lt[i] == top);
}

TEST_CASE("fast and exact agree with direct enumeration") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto m2 = random_blob_mask<2>({24, 28}, seed, 2, 0.55);
    const auto d2 = edt(m2);
    const auto ref2 = naive_lt(d2);
    CHECK(local_thickness_exact(d2) == ref2);
    CHECK(local_thickness_fast(d2) == ref2);

    const auto m3 = random_blob_mask<3>({10, 11, 12}, seed, 1, 0.6);
    const auto d3 = edt(m3);
    const auto ref3 = naive_lt(d3);
    CHECK(local_thickness_exact(d3) == ref3);
    CHECK(local_thickness_fast(d3) == ref3);
  }
}

TEST_CASE("thickness bounds on random blobs") {
  const auto m = random_blob_mask<3>({30, 30, 30}, 21, 2, 0.5);
  const auto d = edt(m);
  const auto lt = local_thickness(d);
  const auto labels = label_components(m, 26);
  std::vector<double> object_max(max_label(labels) + 1, 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) object_max[labels[i]] = std::max(object_max[labels[i]], d[i]);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) {
      CHECK(lt[i] == 0.0);
      continue;
    }
    CHECK(lt[i] >= d[i]);
    CHECK(lt[i] <= object_max[labels[i]]);
  }
}

TEST_CASE("empty foreground gives an empty field") {
  const Grid<double, 2> d({5, 5}, 0.0);
  const auto lt = local_thickness_fast(d);
  for (double v : lt.data()) CHECK(v == 0.0);
}

TEST_CASE("method selector") {
  const auto d = edt(random_blob_mask<2>({20, 20}, 4));
  CHECK(local_thickness(d, ThicknessMethod::exact) == local_thickness_exact(d));
  CHECK(local_thickness(d, ThicknessMethod::fast) == local_thickness_fast(d));
}

TEST_CASE("thickness_stats per label") {
  ThicknessField<2> lt({2, 3}, std::vector<double>{1.0, 2.0, 0.0, 4.0, 0.0, 3.0});
  LabelField<2> labels({2, 3}, std::vector<std::uint32_t>{1, 1, 0, 3, 0, 3});
  const auto s = thickness_stats(lt, labels);
  REQUIRE(s.size() == 2);
  CHECK(s[0].label == 1);
  CHECK(s[0].count == 2);
  CHECK(s[0].mean_lt == 1.5);
  CHECK(s[0].max_lt == 2.0);
  CHECK(s[1].label == 3);
  CHECK(s[1].mean_lt == 3.5);
  CHECK(s[1].max_lt == 4.0);
  CHECK_THROWS_AS(thickness_stats(lt, LabelField<2>({3, 2}, 0)), InvalidArgument);
}
