// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ltshape/io.hpp"

namespace ltshape {

/// Pearson correlation; NaN when either series has zero variance. Throws
/// InvalidArgument on length mismatch or fewer than two points.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least squares y = slope * x + intercept.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

struct Residual {
  std::uint32_t label = 0;
  double x = 0.0;
  double y = 0.0;
  double residual = 0.0;  // y - fit(x)
};

struct ColumnComparison {
  std::string column_a;
  std::string column_b;
  std::size_t n = 0;
  double pearson = 0.0;
  LinearFit fit;
  double mean_abs_diff = 0.0;
  std::vector<Residual> residuals;  // sorted by label
};

struct ComparisonReport {
  std::size_t shared_labels = 0;
  std::vector<ColumnComparison> columns;

  /// `column_a,column_b,n,pearson,slope,intercept,mean_abs_diff`
  std::string format_csv() const;
  /// `column_a,column_b,label,a,b,residual`
  std::string format_residuals_csv() const;
};

/// Compare two tables over the labels present in both. Each pair names a
/// column of `a` and a column of `b`; with no pairs, every column shared by
/// name (except `label`) is compared with itself. Rows where either cell is
/// empty are skipped. Throws InvalidArgument if no label is shared.
ComparisonReport compare_tables(const CsvTable& a, const CsvTable& b,
                                std::vector<std::pair<std::string, std::string>> pairs = {});

}  // namespace ltshape
