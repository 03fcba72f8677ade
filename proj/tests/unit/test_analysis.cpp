// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ltshape/analysis.hpp"
#include "ltshape/boundary.hpp"
#include "ltshape/edt.hpp"
#include "ltshape/errors.hpp"
#include "ltshape/metrics.hpp"
#include "ltshape/synth.hpp"

using namespace ltshape;

namespace {

// Ten balls of radius 8 on a 2 x 5 lattice.
LabelField<3> ten_spheres() {
  LabelField<3> l({22, 42, 102}, 0);
  std::uint32_t label = 0;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 5; ++k) {
      ++label;
      const double cy = 10.5 + 20 * j, cx = 10.5 + 20 * k, cz = 10.5;
      for (std::size_t i = 0; i < l.size(); ++i) {
        const auto c = l.coord(i);
        const double dz = c[0] - cz, dy = c[1] - cy, dx = c[2] - cx;
        if (dx * dx + dy * dy + dz * dz <= 64.0) l[i] = label;
      }
    }
  return l;
}

template <std::size_t Rank>
Mask<Rank> only(const LabelField<Rank>& l, std::uint32_t label) {
  Mask<Rank> m(l.shape(), 0);
  for (std::size_t i = 0; i < l.size(); ++i) m[i] = l[i] == label;
  return m;
}

}  // namespace

TEST_CASE("ten spheres") {
  const auto l = ten_spheres();
  const auto a = analyze(l);
  REQUIRE(a.records.size() == 10);
  CHECK(a.has_thickness);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(a.records[i].label == i + 1);
    CHECK(a.metrics[i].label == i + 1);
    CHECK(*a.metrics[i].sphericity_lt >= 0.95);
    CHECK(*a.metrics[i].roundness_lt >= 0.9);
    CHECK(a.metrics[i].reliable);
    CHECK_FALSE(a.metrics[i].sphericity_wl.has_value());
  }
  CHECK(a.warnings.empty());
}

TEST_CASE("metric subsets") {
  const auto l = ten_spheres();
  AnalyzeOptions o;
  o.metrics = MetricSet::parse("sphericity_wl");
  const auto a = analyze(l, o);
  CHECK_FALSE(a.has_thickness);
  CHECK_FALSE(a.metrics[0].sphericity_lt.has_value());
  CHECK_FALSE(a.metrics[0].roundness_lt.has_value());
  CHECK(*a.metrics[0].sphericity_wl == doctest::Approx(1.0).epsilon(0.01));
  CHECK(a.records[0].mean_lt == 0.0);

  o.metrics = MetricSet::parse("roundness,mc");
  const auto b = analyze(l, o);
  CHECK_FALSE(b.metrics[0].sphericity_lt.has_value());
  CHECK(b.metrics[0].roundness_lt.has_value());
  CHECK(b.metrics[0].sphericity_mc.has_value());

  const auto all = MetricSet::parse("all");
  CHECK(all.sphericity);
  CHECK(all.mesh);
  CHECK(MetricSet::parse(all.to_string()).to_string() == all.to_string());
  CHECK_THROWS_AS(MetricSet::parse("sphericity,bogus"), InvalidArgument);
}

TEST_CASE("empty input yields no records") {
  const auto a = analyze(LabelField<2>({8, 8}, 0));
  CHECK(a.records.empty());
  CHECK(a.metrics.empty());
}

TEST_CASE("union and per-label scopes agree for separated objects") {
  const auto l = blob_field<3>({48, 48, 48}, 8, 3, 6, 2);
  AnalyzeOptions o;
  o.metrics = MetricSet::parse("sphericity,roundness");
  const auto u = analyze(l, o);
  o.scope = ThicknessScope::per_label;
  const auto p = analyze(l, o);
  REQUIRE(u.records.size() == p.records.size());
  for (std::size_t i = 0; i < u.records.size(); ++i) {
    CHECK(u.records[i].mean_lt == doctest::Approx(p.records[i].mean_lt).epsilon(1e-12));
    CHECK(u.records[i].max_lt == p.records[i].max_lt);
    CHECK(u.records[i].boundary_mean_lt == doctest::Approx(p.records[i].boundary_mean_lt).epsilon(1e-12));
    CHECK(*u.metrics[i].roundness_lt == doctest::Approx(*p.metrics[i].roundness_lt).epsilon(1e-12));
  }
}

TEST_CASE("per-label scope equals isolating each touching object") {
  LabelField<2> l({20, 30}, 0);
  for (std::size_t r = 3; r < 17; ++r)
    for (std::size_t c = 3; c < 27; ++c) l.set({r, c}, c < 12 ? 1 : 2);
  AnalyzeOptions o;
  o.scope = ThicknessScope::per_label;
  const auto a = analyze(l, o);
  REQUIRE(a.records.size() == 2);
  for (std::uint32_t label = 1; label <= 2; ++label) {
    const auto m = only(l, label);
    const auto lt = local_thickness_exact(edt(m));
    const auto b = extract_boundary(m);
    double sum = 0.0, bsum = 0.0, top = 0.0;
    std::size_t n = 0, nb = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      sum += lt[i];
      ++n;
      top = std::max(top, lt[i]);
      if (b[i]) {
        bsum += lt[i];
        ++nb;
      }
    }
    const auto& r = a.records[label - 1];
    CHECK(r.volume == n);
    CHECK(r.mean_lt == doctest::Approx(sum / n).epsilon(1e-12));
    CHECK(r.max_lt == top);
    CHECK(r.boundary_mean_lt == doctest::Approx(bsum / nb).epsilon(1e-12));
    CHECK(*a.metrics[label - 1].sphericity_lt == doctest::Approx(sphericity_2d(n, sum / n).value));
  }
  // Under the union the two halves share one thick rectangle.
  const auto u = analyze(l);
  CHECK(u.records[0].max_lt > a.records[0].max_lt);
}

TEST_CASE("fast and exact thickness give identical metrics") {
  const auto l = blob_field<2>({120, 120}, 15, 4, 9, 4);
  AnalyzeOptions o;
  const auto fast = analyze(l, o);
  o.method = ThicknessMethod::exact;
  const auto exact = analyze(l, o);
  for (std::size_t i = 0; i < fast.records.size(); ++i) {
    CHECK(fast.records[i].mean_lt == exact.records[i].mean_lt);
    CHECK(fast.metrics[i].sphericity_lt == exact.metrics[i].sphericity_lt);
    CHECK(fast.metrics[i].roundness_lt == exact.metrics[i].roundness_lt);
  }
}

TEST_CASE("elongated ellipse: roundness above sphericity") {
  ShapeSpec s;
  s.kind = ShapeKind::ellipse;
  s.axes = {40, 10, 10};
  s.canvas = {30, 90};
  const auto a = analyze(label_components(rasterize<2>(s)));
  CHECK(*a.metrics[0].roundness_lt > *a.metrics[0].sphericity_lt);
}

TEST_CASE("spiky star: roundness below width-to-length and below a rounded star") {
  ShapeSpec s;
  s.kind = ShapeKind::star;
  s.axes = {30, 30, 30};
  s.inner_radius = 15;
  s.canvas = {70, 70};
  AnalyzeOptions o;
  o.metrics = MetricSet::parse("roundness,wl");
  const auto spiky = analyze(label_components(rasterize<2>(s)), o);
  s.rounded = true;
  const auto smooth = analyze(label_components(rasterize<2>(s)), o);
  CHECK(*spiky.metrics[0].roundness_lt < *spiky.metrics[0].sphericity_wl);
  CHECK(*spiky.metrics[0].roundness_lt < *smooth.metrics[0].roundness_lt);
}

TEST_CASE("disk and sphere pipelines") {
  ShapeSpec s;
  s.kind = ShapeKind::disk;
  s.axes = {20, 20, 20};
  s.canvas = {50, 50};
  AnalyzeOptions o;
  o.metrics = MetricSet::parse("all");
  const auto d = analyze(label_components(rasterize<2>(s)), o);
  CHECK(*d.metrics[0].sphericity_lt >= 0.99);
  CHECK(*d.metrics[0].roundness_lt == doctest::Approx(1.0).epsilon(0.02));
  CHECK(d.metrics[0].model_a == doctest::Approx(20.0).epsilon(0.03));
  CHECK(*d.metrics[0].sphericity_mc < 1.0);

  s.kind = ShapeKind::sphere;
  s.axes = {12, 12, 12};
  s.canvas = {32, 32, 32};
  const auto b = analyze(label_components(rasterize<3>(s)), o);
  CHECK(*b.metrics[0].sphericity_lt >= 0.97);
  CHECK(*b.metrics[0].roundness_lt >= 0.95);
  CHECK(*b.metrics[0].sphericity_lt_raw >= *b.metrics[0].sphericity_lt);
}

TEST_CASE("tiny objects are flagged") {
  LabelField<2> l({10, 10}, 0);
  l.set({2, 2}, 1);
  for (std::size_t r = 4; r < 9; ++r)
    for (std::size_t c = 4; c < 9; ++c) l.set({r, c}, 2);
  const auto a = analyze(l);
  CHECK_FALSE(a.metrics[0].reliable);
  CHECK(a.metrics[1].reliable);
  CHECK(a.warnings.size() == 1);
}

TEST_CASE("prepare_labels") {
  Mask<2> m({8, 10}, 0);
  m.set({0, 0}, 1);  // touches the border
  for (std::size_t r = 2; r < 5; ++r)
    for (std::size_t c = 2; c < 5; ++c) m.set({r, c}, 1);
  m.set({6, 7}, 1);
  LabelField<2> in(m.shape(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) in[i] = m[i];

  PrepareOptions p;
  CHECK(max_label(prepare_labels(in, p)) == 3);
  p.exclude_edge = true;
  CHECK(max_label(prepare_labels(in, p)) == 2);
  p.min_volume = 2;
  CHECK(max_label(prepare_labels(in, p)) == 1);
  p.pad = 2;
  const auto padded = prepare_labels(in, p);
  CHECK(padded.shape() == LabelField<2>::Shape{12, 14});
  CHECK(padded.get({4, 4}) == 1);

  LabelField<2> labeled({1, 4}, std::vector<std::uint32_t>{5, 5, 9, 0});
  PrepareOptions q;
  q.labeled = true;
  CHECK(prepare_labels(labeled, q).values() == std::vector<std::uint32_t>{1, 1, 2, 0});
  q.labeled = false;
  CHECK(prepare_labels(labeled, q).values() == std::vector<std::uint32_t>{1, 1, 1, 0});
  q.connectivity = 6;
  CHECK_THROWS_AS(prepare_labels(labeled, q), InvalidArgument);
}
