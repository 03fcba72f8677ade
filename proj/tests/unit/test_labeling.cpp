// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ltshape/errors.hpp"
#include "ltshape/labeling.hpp"
#include "ltshape/synth.hpp"

using namespace ltshape;

namespace {

Mask<2> mask2(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> v) {
  return Mask<2>({rows, cols}, std::move(v));
}

}  // namespace

TEST_CASE("diagonal neighbours depend on connectivity") {
  const auto m = mask2(3, 3, {1, 0, 0,  //
                              0, 1, 0,  //
                              0, 0, 1});
  CHECK(max_label(label_components(m, 4)) == 3);
  CHECK(max_label(label_components(m, 8)) == 1);
  CHECK(max_label(label_components(m)) == 1);
}

TEST_CASE("labels follow first encounter in a row-major scan") {
  const auto m = mask2(3, 5, {0, 0, 0, 1, 1,  //
                              1, 0, 0, 0, 0,  //
                              1, 0, 1, 0, 0});
  const auto l = label_components(m, 4);
  CHECK(l.get({0, 3}) == 1);
  CHECK(l.get({0, 4}) == 1);
  CHECK(l.get({1, 0}) == 2);
  CHECK(l.get({2, 0}) == 2);
  CHECK(l.get({2, 2}) == 3);
}

TEST_CASE("U shape merges late") {
  // Two arms meet only on the last row; labels must still be dense.
  const auto m = mask2(3, 5, {1, 0, 1, 0, 1,  //
                              1, 0, 1, 0, 1,  //
                              1, 1, 1, 1, 1});
  const auto l = label_components(m, 4);
  CHECK(max_label(l) == 1);
}

TEST_CASE("invalid connectivity") {
  CHECK_THROWS_AS(label_components(Mask<2>({2, 2}, 1), 6), InvalidArgument);
  CHECK_THROWS_AS(label_components(Mask<3>({2, 2, 2}, 1), 8), InvalidArgument);
}

TEST_CASE("3D face versus full connectivity") {
  Mask<3> m({2, 2, 2}, 0);
  m.set({0, 0, 0}, 1);
  m.set({1, 1, 1}, 1);
  CHECK(max_label(label_components(m, 6)) == 2);
  CHECK(max_label(label_components(m, 26)) == 1);
  m.set({0, 0, 1}, 1);
  m.set({0, 1, 1}, 1);
  CHECK(max_label(label_components(m, 6)) == 1);
}

TEST_CASE("labeling is idempotent") {
  const auto m = random_blob_mask<3>({16, 18, 20}, 9, 1, 0.45);
  const auto l = label_components(m);
  CHECK(label_components(l) == l);
  CHECK(compact_labels(l) == l);
}

TEST_CASE("remove_edge_objects drops border objects and compacts") {
  const auto m = mask2(5, 6, {1, 0, 0, 0, 0, 0,  //
                              0, 0, 1, 0, 0, 0,  //
                              0, 0, 0, 0, 1, 0,  //
                              0, 0, 0, 0, 0, 0,  //
                              0, 0, 0, 0, 0, 1});
  const auto l = label_components(m, 8);
  REQUIRE(max_label(l) == 4);
  const auto kept = remove_edge_objects(l);
  CHECK(max_label(kept) == 2);
  CHECK(kept.get({1, 2}) == 1);
  CHECK(kept.get({2, 4}) == 2);
  CHECK(kept.get({0, 0}) == 0);
  CHECK(kept.get({4, 5}) == 0);
}

TEST_CASE("filter_small") {
  const auto m = mask2(3, 6, {1, 1, 0, 1, 0, 1,  //
                              1, 1, 0, 0, 0, 1,  //
                              0, 0, 0, 0, 0, 1});
  const auto l = label_components(m, 4);
  REQUIRE(max_label(l) == 3);
  const auto f = filter_small(l, 3);
  CHECK(max_label(f) == 2);
  CHECK(f.get({0, 0}) == 1);
  CHECK(f.get({0, 5}) == 2);
  CHECK(f.get({0, 3}) == 0);
  CHECK(filter_small(l, 1) == l);
  CHECK_THROWS_AS(filter_small(l, 0), InvalidArgument);
}

TEST_CASE("compact_labels keeps relative order") {
  LabelField<2> l({1, 5}, std::vector<std::uint32_t>{9, 0, 4, 9, 7});
  const auto c = compact_labels(l);
  CHECK(c.values() == std::vector<std::uint32_t>{3, 0, 1, 3, 2});
}

TEST_CASE("object_records") {
  LabelField<2> l({3, 4}, std::vector<std::uint32_t>{0, 1, 1, 0,  //
                                                      0, 1, 0, 0,  //
                                                      2, 0, 0, 0});
  ThicknessField<2> lt({3, 4}, std::vector<double>{0, 1, 2, 0,  //
                                                   0, 3, 0, 0,  //
                                                   5, 0, 0, 0});
  const auto r = object_records(l, lt);
  REQUIRE(r.size() == 2);
  CHECK(r[0].label == 1);
  CHECK(r[0].volume == 3);
  CHECK(r[0].mean_lt == 2.0);
  CHECK(r[0].max_lt == 3.0);
  CHECK(r[0].bbox == BoundingBox<2>{{0, 1}, {1, 2}});
  CHECK(r[0].touches_edge);
  CHECK(r[1].label == 2);
  CHECK(r[1].mean_lt == 5.0);
  CHECK(r[1].touches_edge);

  const auto geo = object_records(l, ThicknessField<2>{});
  CHECK(geo[0].volume == 3);
  CHECK(geo[0].max_lt == 0.0);

  LabelField<2> inner({3, 3}, 0);
  inner.set({1, 1}, 1);
  CHECK_FALSE(object_records(inner, ThicknessField<2>{})[0].touches_edge);
}

TEST_CASE("volumes sum to the foreground count") {
  const auto m = random_blob_mask<2>({50, 60}, 2);
  const auto l = label_components(m);
  std::size_t fg = 0, total = 0;
  for (auto v : m.data()) fg += v;
  for (const auto& r : object_records(l, ThicknessField<2>{})) total += r.volume;
  CHECK(total == fg);
}
