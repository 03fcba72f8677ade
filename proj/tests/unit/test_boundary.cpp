// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ltshape/boundary.hpp"
#include "ltshape/errors.hpp"

using namespace ltshape;

TEST_CASE("3x3 square keeps its ring") {
  Mask<2> m({5, 5}, 0);
  for (std::size_t r = 1; r <= 3; ++r)
    for (std::size_t c = 1; c <= 3; ++c) m.set({r, c}, 1);
  const auto b = extract_boundary(m);
  std::size_t n = 0;
  for (auto v : b.data()) n += v;
  CHECK(n == 8);
  CHECK(b.get({2, 2}) == 0);
  CHECK(b.get({1, 1}) == 1);
}

TEST_CASE("flush against the border: no boundary on that side") {
  Mask<2> m({3, 4}, 0);
  for (std::size_t c = 0; c < 4; ++c) {
    m.set({0, c}, 1);
    m.set({1, c}, 1);
  }
  const auto b = extract_boundary(m);
  for (std::size_t c = 0; c < 4; ++c) {
    CHECK(b.get({0, c}) == 0);
    CHECK(b.get({1, c}) == 1);
  }
}

TEST_CASE("face neighbours only") {
  // A 3x3x3 cube: only the center is interior.
  Mask<3> m({5, 5, 5}, 0);
  for (std::size_t z = 1; z <= 3; ++z)
    for (std::size_t y = 1; y <= 3; ++y)
      for (std::size_t x = 1; x <= 3; ++x) m.set({z, y, x}, 1);
  const auto b = extract_boundary(m);
  std::size_t n = 0;
  for (auto v : b.data()) n += v;
  CHECK(n == 26);
  CHECK(b.get({2, 2, 2}) == 0);
}

TEST_CASE("touching labels") {
  LabelField<2> l({3, 4}, 0);
  for (std::size_t r = 0; r < 3; ++r) {
    l.set({r, 0}, 1);
    l.set({r, 1}, 1);
    l.set({r, 2}, 2);
    l.set({r, 3}, 2);
  }
  const auto merged = extract_boundary(l);
  for (auto v : merged.data()) CHECK(v == 0);
  const auto split = extract_boundary(l, true);
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(split.get({r, 1}) == 1);
    CHECK(split.get({r, 2}) == 1);
    CHECK(split.get({r, 0}) == 0);
  }
}

TEST_CASE("boundary mean thickness") {
  LabelField<2> l({1, 5}, std::vector<std::uint32_t>{1, 1, 0, 2, 2});
  Mask<2> b({1, 5}, std::vector<std::uint8_t>{0, 1, 0, 1, 1});
  ThicknessField<2> lt({1, 5}, std::vector<double>{9, 2, 0, 3, 5});
  const auto s = boundary_mean_lt(b, lt, l);
  REQUIRE(s.size() == 2);
  CHECK(s[0].label == 1);
  CHECK(s[0].count == 1);
  CHECK(s[0].mean_lt == 2.0);
  CHECK(s[1].mean_lt == 4.0);
  CHECK_THROWS_AS(boundary_mean_lt(b, lt, LabelField<2>({5, 1}, 0)), InvalidArgument);
}

TEST_CASE("records without boundary are reported") {
  std::vector<ObjectRecord<2>> records(3);
  records[0].label = 1;
  records[1].label = 2;
  records[2].label = 3;
  const std::vector<BoundaryStats> stats{{1, 4, 2.5}, {3, 2, 1.0}};
  const auto missing = fill_boundary_mean_lt(records, stats);
  CHECK(missing == std::vector<std::uint32_t>{2});
  CHECK(records[0].boundary_mean_lt == 2.5);
  CHECK(records[1].boundary_mean_lt == 0.0);
  CHECK(records[2].boundary_mean_lt == 1.0);
}
