// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "ltshape/errors.hpp"
#include "ltshape/labeling.hpp"
#include "ltshape/synth.hpp"

using namespace ltshape;
constexpr double kPi = std::numbers::pi;

namespace {

template <std::size_t Rank>
std::size_t count(const Mask<Rank>& m) {
  std::size_t n = 0;
  for (auto v : m.data()) n += v != 0;
  return n;
}

template <typename F>
double simpson(F f, double lo, double hi, int n = 4000) {
  const double h = (hi - lo) / n;
  double s = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) s += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

double wadell(double volume, double surface) {
  return std::cbrt(kPi) * std::pow(6.0 * volume, 2.0 / 3.0) / surface;
}

}  // namespace

TEST_CASE("disk and sphere element counts follow the continuum") {
  ShapeSpec d;
  d.kind = ShapeKind::disk;
  d.axes = {20, 20, 20};
  d.canvas = {50, 50};
  CHECK(count(rasterize<2>(d)) == 1264);
  CHECK(std::abs(count(rasterize<2>(d)) - kPi * 400.0) / (kPi * 400.0) < 0.02);

  ShapeSpec s;
  s.kind = ShapeKind::sphere;
  s.axes = {12, 12, 12};
  s.canvas = {32, 32, 32};
  const double v = 4.0 / 3.0 * kPi * 1728.0;
  CHECK(count(rasterize<3>(s)) == 7208);
  CHECK(std::abs(count(rasterize<3>(s)) - v) / v < 0.03);
}

TEST_CASE("axes follow (x, y, z) = (col, row, slice)") {
  ShapeSpec s;
  s.kind = ShapeKind::bar;
  s.axes = {6, 2, 0};
  s.canvas = {11, 21};
  const auto m = rasterize<2>(s);
  // Center (5, 10); half extents 2 rows and 6 cols.
  CHECK(m.get({5, 4}) == 1);
  CHECK(m.get({5, 16}) == 1);
  CHECK(m.get({5, 3}) == 0);
  CHECK(m.get({3, 10}) == 1);
  CHECK(m.get({2, 10}) == 0);
  CHECK(count(m) == 5 * 13);
}

TEST_CASE("rasterization is symmetric about the canvas center") {
  ShapeSpec s;
  s.kind = ShapeKind::spheroid;
  s.axes = {7, 5, 9};
  s.canvas = {23, 17, 19};
  const auto m = rasterize<3>(s);
  const auto sh = m.shape();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto c = m.coord(i);
    CHECK(m[i] == m.get({sh[0] - 1 - c[0], sh[1] - 1 - c[1], sh[2] - 1 - c[2]}));
  }
}

TEST_CASE("offset shifts the shape") {
  ShapeSpec s;
  s.kind = ShapeKind::disk;
  s.axes = {4, 4, 4};
  s.canvas = {21, 21};
  const auto centered = rasterize<2>(s);
  s.offset = {3, -2, 0};
  const auto moved = rasterize<2>(s);
  for (std::size_t r = 3; r < 18; ++r)
    for (std::size_t c = 0; c < 15; ++c) CHECK(centered.get({r, c}) == moved.get({r - 2, c + 3}));
}

TEST_CASE("sharp star is not convex") {
  ShapeSpec s;
  s.kind = ShapeKind::star;
  s.axes = {30, 30, 30};
  s.inner_radius = 15;
  s.spikes = 5;
  s.canvas = {70, 70};
  const auto m = rasterize<2>(s);
  const double cx = 34.5, cy = 34.5;
  // Tip at angle 0 and notch at angle pi/5.
  CHECK(m.get({static_cast<std::size_t>(cy), static_cast<std::size_t>(cx + 28.5)}) == 1);
  const double notch = 20.0;
  CHECK(m.get({static_cast<std::size_t>(cy + notch * std::sin(kPi / 5) + 0.5),
               static_cast<std::size_t>(cx + notch * std::cos(kPi / 5) + 0.5)}) == 0);
  // Two neighbouring tips are inside, the middle of the chord between them is not.
  const double mx = cx + 28.0 * 0.5 * (1.0 + std::cos(2 * kPi / 5));
  const double my = cy + 28.0 * 0.5 * std::sin(2 * kPi / 5);
  CHECK(m.get({static_cast<std::size_t>(my + 0.5), static_cast<std::size_t>(mx + 0.5)}) == 0);

  const auto g = ground_truth(s);
  const double area = 5.0 * 30.0 * 15.0 * std::sin(kPi / 5);
  CHECK(*g.size == doctest::Approx(area));
  CHECK(std::abs(count(m) - area) / area < 0.03);
}

TEST_CASE("rounded star lies between its radii") {
  ShapeSpec s;
  s.kind = ShapeKind::star;
  s.rounded = true;
  s.axes = {20, 20, 20};
  s.inner_radius = 10;
  s.spikes = 6;
  s.canvas = {50, 50};
  const auto n = count(rasterize<2>(s));
  CHECK(n > kPi * 100.0);
  CHECK(n < kPi * 400.0);
  // Mean of r(phi)^2 / 2 over a period: (r^2 + r dr + 3 dr^2 / 8) with dr = R - r.
  const double area = kPi * (100.0 + 10.0 * 10.0 + 3.0 * 100.0 / 8.0);
  CHECK(*ground_truth(s).size == doctest::Approx(area).epsilon(1e-9));
}

TEST_CASE("ellipse 2:1 ground truth") {
  ShapeSpec s;
  s.kind = ShapeKind::ellipse;
  s.axes = {20, 10, 10};
  const double e2 = 0.75;
  const double perimeter =
      80.0 * simpson([&](double t) { return std::sqrt(1.0 - e2 * std::sin(t) * std::sin(t)); }, 0.0, kPi / 2);
  const double expected = 2.0 * std::sqrt(kPi * kPi * 200.0) / perimeter;
  const auto g = ground_truth(s);
  CHECK(g.available);
  CHECK(*g.sphericity == doctest::Approx(expected).epsilon(1e-10));
  CHECK(*g.sphericity == doctest::Approx(0.917151).epsilon(1e-5));
  CHECK(*g.sphericity_wl == 0.5);
  CHECK_FALSE(g.roundness.has_value());
  CHECK(ellipse_perimeter(20, 10) == doctest::Approx(perimeter).epsilon(1e-12));
}

TEST_CASE("box and spheroid ground truth") {
  ShapeSpec b;
  b.kind = ShapeKind::box;
  b.axes = {1, 1, 4};
  CHECK(*ground_truth(b).sphericity == doctest::Approx(wadell(32.0, 72.0)).epsilon(1e-14));
  CHECK(*ground_truth(b).sphericity_wl == 0.25);

  ShapeSpec s;
  s.kind = ShapeKind::spheroid;
  s.axes = {6, 6, 24};
  const double surface = 2.0 * kPi * simpson([](double t) {
                           return 6.0 * std::sin(t) * std::hypot(6.0 * std::cos(t), 24.0 * std::sin(t));
                         }, 0.0, kPi);
  CHECK(*ground_truth(s).measure == doctest::Approx(surface).epsilon(1e-9));
  CHECK(*ground_truth(s).sphericity == doctest::Approx(wadell(4.0 / 3.0 * kPi * 864.0, surface)).epsilon(1e-9));
  // Axis order does not matter.
  s.axes = {24, 6, 6};
  CHECK(*ground_truth(s).measure == doctest::Approx(surface).epsilon(1e-9));
}

TEST_CASE("triaxial ellipsoid quadrature") {
  // Degenerate to a spheroid, then compare a triaxial case with Thomsen's
  // formula (relative error below 1.1%).
  CHECK(ellipsoid_surface_area(3, 3, 7) == doctest::Approx(2.0 * kPi * simpson([](double t) {
          return 3.0 * std::sin(t) * std::hypot(3.0 * std::cos(t), 7.0 * std::sin(t));
        }, 0.0, kPi)).epsilon(1e-9));
  const double a = 5, b = 3, c = 2, p = 1.6075;
  const double thomsen =
      4.0 * kPi *
      std::pow((std::pow(a * b, p) + std::pow(a * c, p) + std::pow(b * c, p)) / 3.0, 1.0 / p);
  CHECK(std::abs(ellipsoid_surface_area(a, b, c) - thomsen) / thomsen < 0.011);
  CHECK(ellipsoid_surface_area(a, b, c) == doctest::Approx(ellipsoid_surface_area(c, a, b)).epsilon(1e-9));
}

TEST_CASE("disk and sphere references") {
  ShapeSpec d;
  d.kind = ShapeKind::disk;
  const auto g = ground_truth(d);
  CHECK(*g.sphericity == 1.0);
  CHECK(*g.roundness == 1.0);
  d.kind = ShapeKind::sphere;
  CHECK(*ground_truth(d).roundness == 1.0);
  d.kind = ShapeKind::blob;
  CHECK_FALSE(ground_truth(d).available);
  CHECK_FALSE(ground_truth(d).sphericity.has_value());
}

TEST_CASE("invalid specs") {
  ShapeSpec s;
  s.kind = ShapeKind::disk;
  s.axes = {32, 32, 32};
  s.canvas = {64, 64};
  CHECK_THROWS_AS(rasterize<2>(s), InvalidArgument);
  s.axes = {10, 10, 10};
  CHECK_THROWS_AS(rasterize<3>(s), InvalidArgument);
  s.kind = ShapeKind::sphere;
  s.canvas = {30, 30, 30};
  CHECK_THROWS_AS(rasterize<2>(s), InvalidArgument);
  s.axes = {0.1, 0.1, 0.1};
  s.offset = {0.4, 0.4, 0.4};
  CHECK_THROWS_AS(rasterize<3>(s), InvalidArgument);
  ShapeSpec star;
  star.kind = ShapeKind::star;
  star.spikes = 2;
  CHECK_THROWS_AS(ground_truth(star), InvalidArgument);
  star.spikes = 5;
  star.inner_radius = 12;
  CHECK_THROWS_AS(rasterize<2>(star), InvalidArgument);
  CHECK_THROWS_AS(parse_shape_kind("hexagon"), InvalidArgument);
  CHECK(parse_shape_kind("superellipse") == ShapeKind::superellipse);
}

TEST_CASE("blob rasterization is deterministic and connected") {
  ShapeSpec s;
  s.kind = ShapeKind::blob;
  s.axes = {12, 12, 12};
  s.canvas = {40, 40, 40};
  s.seed = 9;
  const auto a = rasterize<3>(s);
  CHECK(a == rasterize<3>(s));
  CHECK(max_label(label_components(a)) == 1);
  s.seed = 10;
  CHECK_FALSE(a == rasterize<3>(s));
  s.canvas = {40, 40};
  CHECK(max_label(label_components(rasterize<2>(s))) == 1);
}

TEST_CASE("SplitMix64 is reproducible and uniform") {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  SplitMix64 r(1);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(sum / 20000 == doctest::Approx(0.5).epsilon(0.02));
  for (int i = 0; i < 1000; ++i) CHECK(r.below(7) < 7);
}

TEST_CASE("random_blob_mask fill fraction") {
  const auto m = random_blob_mask<2>({80, 90}, 3, 2, 0.5);
  CHECK(static_cast<double>(count(m)) / m.size() == doctest::Approx(0.5).epsilon(0.02));
  CHECK(m == random_blob_mask<2>({80, 90}, 3, 2, 0.5));
  CHECK_THROWS_AS(random_blob_mask<2>({8, 8}, 0, 1, 1.0), InvalidArgument);
}

TEST_CASE("blob_field places separated objects") {
  const auto l = blob_field<3>({60, 60, 60}, 12, 3, 6, 5);
  CHECK(max_label(l) == 12);
  CHECK(l == blob_field<3>({60, 60, 60}, 12, 3, 6, 5));
  // Each label is one component and no two labels touch.
  std::set<std::uint32_t> seen;
  Mask<3> fg(l.shape(), 0);
  for (std::size_t i = 0; i < l.size(); ++i) {
    fg[i] = l[i] != 0;
    if (l[i]) seen.insert(l[i]);
  }
  CHECK(seen.size() == 12);
  CHECK(max_label(label_components(fg, 26)) == 12);
  for (const auto& r : object_records(l, ThicknessField<3>{})) CHECK_FALSE(r.touches_edge);
  CHECK_THROWS_AS(blob_field<2>({20, 20}, 50, 5, 6, 1), InvalidArgument);
}
