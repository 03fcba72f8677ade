// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ltshape/grid.hpp"
#include "ltshape/labeling.hpp"
#include "ltshape/local_thickness.hpp"

namespace ltshape {

struct MetricSet {
  bool sphericity = true;
  bool roundness = true;
  bool width_length = false;
  bool mesh = false;

  bool needs_thickness() const { return sphericity || roundness; }

  /// Comma separated names: sphericity, roundness, sphericity_wl (or wl),
  /// sphericity_mc (or mc), all. Throws InvalidArgument on unknown names.
  static MetricSet parse(const std::string& list);
  std::string to_string() const;
};

enum class ThicknessScope {
  /// One thickness field over the union of all objects.
  union_foreground,
  /// Each object on its own, as if it were alone on the canvas.
  per_label,
};

struct AnalyzeOptions {
  MetricSet metrics;
  ThicknessMethod method = ThicknessMethod::fast;
  ThicknessScope scope = ThicknessScope::union_foreground;
  /// Objects smaller than this are flagged unreliable.
  std::size_t reliable_min_volume = 10;
};

struct ShapeMetrics {
  std::uint32_t label = 0;
  std::optional<double> sphericity_lt;
  std::optional<double> sphericity_lt_raw;  // before clamping to 1
  std::optional<double> roundness_lt;
  std::optional<double> sphericity_wl;
  std::optional<double> sphericity_mc;
  /// Spheroid (a, c) in 3D or ellipse (a, b) in 2D; 0 when sphericity is off.
  double model_a = 0.0;
  double model_c_or_b = 0.0;
  bool reliable = true;
};

template <std::size_t Rank>
struct Analysis {
  std::vector<ObjectRecord<Rank>> records;
  std::vector<ShapeMetrics> metrics;  // aligned with records
  std::vector<std::string> warnings;
  bool has_thickness = false;
};

struct PrepareOptions {
  /// Input already holds label values; otherwise nonzero elements are
  /// labeled into connected components.
  bool labeled = false;
  /// 0 selects the rank default (8 in 2D, 26 in 3D).
  int connectivity = 0;
  /// Drop objects touching the border of the input grid.
  bool exclude_edge = false;
  std::size_t min_volume = 1;
  /// Background elements added around the grid after filtering.
  std::size_t pad = 0;
};

/// Label, filter and pad an input grid; labels come out dense in 1..K.
template <std::size_t Rank>
LabelField<Rank> prepare_labels(const LabelField<Rank>& input, const PrepareOptions& options);

/// Per-object metrics for every label, sorted by label. Sphericity and
/// roundness share a single local thickness computation.
template <std::size_t Rank>
Analysis<Rank> analyze(const LabelField<Rank>& labels, const AnalyzeOptions& options = {});

}  // namespace ltshape
