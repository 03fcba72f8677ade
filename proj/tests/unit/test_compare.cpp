// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ltshape/analysis.hpp"
#include "ltshape/compare.hpp"
#include "ltshape/errors.hpp"
#include "ltshape/io.hpp"
#include "ltshape/synth.hpp"

using namespace ltshape;

TEST_CASE("pearson") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> neg;
  for (double v : x) neg.push_back(-3.0 * v + 1.0);
  CHECK(pearson(x, x) == doctest::Approx(1.0));
  CHECK(pearson(x, neg) == doctest::Approx(-1.0));
  // Hand computation: mean 2, deviations (-1, 0, 1) and (-1, 1, 0).
  CHECK(pearson({1, 2, 3}, {1, 3, 2}) == doctest::Approx(0.5));
  CHECK(std::isnan(pearson({1, 2, 3}, {4, 4, 4})));
  CHECK_THROWS_AS(pearson({1}, {1}), InvalidArgument);
  CHECK_THROWS_AS(pearson({1, 2}, {1, 2, 3}), InvalidArgument);
}

TEST_CASE("linear fit") {
  // Points (0,1), (1,3), (2,2): slope 1/2, intercept 3/2.
  const auto f = linear_fit({0, 1, 2}, {1, 3, 2});
  CHECK(f.slope == doctest::Approx(0.5));
  CHECK(f.intercept == doctest::Approx(1.5));
}

TEST_CASE("compare tables over shared labels") {
  const auto a = parse_csv("label,s,r\n1,0.5,1\n2,0.7,\n3,0.9,0.8\n4,1.0,0.9\n");
  const auto b = parse_csv("label,s,q\n2,0.6,1\n3,0.8,2\n4,0.9,3\n9,0.1,4\n");
  const auto rep = compare_tables(a, b);
  CHECK(rep.shared_labels == 3);
  REQUIRE(rep.columns.size() == 1);
  const auto& c = rep.columns[0];
  CHECK(c.column_a == "s");
  CHECK(c.n == 3);
  CHECK(c.pearson == doctest::Approx(1.0));
  CHECK(c.fit.slope == doctest::Approx(1.0));
  CHECK(c.fit.intercept == doctest::Approx(-0.1));
  CHECK(c.mean_abs_diff == doctest::Approx(0.1));
  REQUIRE(c.residuals.size() == 3);
  CHECK(c.residuals[0].label == 2);
  CHECK(std::abs(c.residuals[0].residual) < 1e-12);

  // Empty cells drop the row: label 2 has no r.
  const auto pr = compare_tables(a, b, {{"r", "q"}});
  CHECK(pr.columns[0].n == 2);
  CHECK(pr.format_csv().rfind("column_a,column_b,n,pearson,slope,intercept,mean_abs_diff\n", 0) == 0);
  CHECK(pr.format_residuals_csv().rfind("column_a,column_b,label,a,b,residual\n", 0) == 0);

  CHECK_THROWS_AS(compare_tables(a, parse_csv("label,s\n7,1\n")), InvalidArgument);
  CHECK_THROWS_AS(compare_tables(a, b, {{"s", "missing"}}), InvalidArgument);
}

TEST_CASE("thickness and mesh sphericity correlate over an ellipse sweep") {
  std::vector<double> lt, mc;
  for (double ratio = 1.0; ratio <= 6.0; ratio += 0.5) {
    ShapeSpec s;
    s.kind = ShapeKind::ellipse;
    s.axes = {8.0 * ratio, 8.0, 8.0};
    s.canvas = {22, static_cast<std::size_t>(16.0 * ratio + 6)};
    AnalyzeOptions o;
    o.metrics = MetricSet::parse("sphericity,mc");
    const auto a = analyze(label_components(rasterize<2>(s)), o);
    lt.push_back(*a.metrics[0].sphericity_lt);
    mc.push_back(*a.metrics[0].sphericity_mc);
  }
  CHECK(pearson(lt, mc) >= 0.95);
}
