// SPDX-License-Identifier: Apache-2.0
#include "ltshape/compare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

namespace ltshape {

namespace {

void require_series(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidArgument("series lengths differ");
  if (x.size() < 2) throw InvalidArgument("need at least two points");
}

std::string real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::map<std::uint32_t, std::size_t> rows_by_label(const CsvTable& t) {
  const std::size_t col = t.column("label");
  std::map<std::uint32_t, std::size_t> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto v = t.number(r, col);
    if (!v || *v < 0 || *v != std::floor(*v)) throw FormatError("bad label in row " + std::to_string(r + 1), 0);
    if (!out.emplace(static_cast<std::uint32_t>(*v), r).second)
      throw FormatError("duplicate label " + std::to_string(static_cast<std::uint32_t>(*v)), 0);
  }
  return out;
}

}  // namespace

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  require_series(x, y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  require_series(x, y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  LinearFit f;
  f.slope = sxx == 0.0 ? 0.0 : sxy / sxx;
  f.intercept = my - f.slope * mx;
  return f;
}

ComparisonReport compare_tables(const CsvTable& a, const CsvTable& b,
                                std::vector<std::pair<std::string, std::string>> pairs) {
  const auto ra = rows_by_label(a);
  const auto rb = rows_by_label(b);
  std::vector<std::uint32_t> shared;
  for (const auto& [label, row] : ra)
    if (rb.count(label)) shared.push_back(label);
  if (shared.empty()) throw InvalidArgument("the tables share no labels");

  if (pairs.empty())
    for (const auto& name : a.header)
      if (name != "label" && b.has_column(name)) pairs.emplace_back(name, name);

  ComparisonReport report;
  report.shared_labels = shared.size();
  for (const auto& [name_a, name_b] : pairs) {
    const std::size_t ca = a.column(name_a);
    const std::size_t cb = b.column(name_b);
    ColumnComparison cmp;
    cmp.column_a = name_a;
    cmp.column_b = name_b;
    std::vector<double> xs, ys;
    std::vector<std::uint32_t> labels;
    for (std::uint32_t l : shared) {
      const auto x = a.number(ra.at(l), ca);
      const auto y = b.number(rb.at(l), cb);
      if (!x || !y) continue;
      xs.push_back(*x);
      ys.push_back(*y);
      labels.push_back(l);
    }
    cmp.n = xs.size();
    if (cmp.n >= 2) {
      cmp.pearson = pearson(xs, ys);
      cmp.fit = linear_fit(xs, ys);
    } else {
      cmp.pearson = std::numeric_limits<double>::quiet_NaN();
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      cmp.mean_abs_diff += std::abs(xs[i] - ys[i]);
      cmp.residuals.push_back({labels[i], xs[i], ys[i], ys[i] - (cmp.fit.slope * xs[i] + cmp.fit.intercept)});
    }
    if (cmp.n > 0) cmp.mean_abs_diff /= static_cast<double>(cmp.n);
    report.columns.push_back(std::move(cmp));
  }
  return report;
}

std::string ComparisonReport::format_csv() const {
  std::string out = "column_a,column_b,n,pearson,slope,intercept,mean_abs_diff\n";
  for (const auto& c : columns)
    out += c.column_a + ',' + c.column_b + ',' + std::to_string(c.n) + ',' + real(c.pearson) + ',' +
           real(c.fit.slope) + ',' + real(c.fit.intercept) + ',' + real(c.mean_abs_diff) + '\n';
  return out;
}

std::string ComparisonReport::format_residuals_csv() const {
  std::string out = "column_a,column_b,label,a,b,residual\n";
  for (const auto& c : columns)
    for (const auto& r : c.residuals)
      out += c.column_a + ',' + c.column_b + ',' + std::to_string(r.label) + ',' + real(r.x) + ',' +
             real(r.y) + ',' + real(r.residual) + '\n';
  return out;
}

}  // namespace ltshape
