// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltshape/grid.hpp"
#include "ltshape/local_thickness.hpp"
#include "ltshape/synth.hpp"

namespace ltshape {

// Timing harness. All times are wall-clock seconds from a monotonic clock,
// measured in-process so that thickness reuse between metrics is visible.

enum class BenchMethod { lt_sphericity, lt_roundness, lt_both, mc_sphericity };

std::string to_string(BenchMethod method);
BenchMethod parse_bench_method(const std::string& name);
std::vector<BenchMethod> all_bench_methods();

struct SpeedRow {
  std::size_t value = 0;  // object count or object size
  BenchMethod method = BenchMethod::lt_both;
  unsigned threads = 0;
  double mean_seconds = 0.0;
  double std_seconds = 0.0;
  std::size_t repeats = 0;
};

struct SpeedReport {
  std::string variable = "object_count";  // or "object_size"
  std::vector<SpeedRow> rows;
  std::vector<std::string> warnings;

  /// `<variable>,method,threads,mean_seconds,std_seconds,repeats`
  std::string format_csv() const;
};

/// Run one method once over every label; returns elapsed seconds.
template <std::size_t Rank>
double time_method(const LabelField<Rank>& labels, BenchMethod method,
                   ThicknessMethod lt_method = ThicknessMethod::fast);

/// About `n` distinct integers in [1, max], spaced evenly in log scale.
std::vector<std::size_t> log_spaced_counts(std::size_t max, std::size_t n = 10);

/// `count` distinct values of 1..k drawn without replacement (partial
/// Fisher-Yates), returned sorted.
std::vector<std::uint32_t> sample_labels(std::uint32_t k, std::size_t count, SplitMix64& rng);

/// Keep only `chosen` labels (sorted), crop to their union bounding box
/// plus `pad` elements (clipped to the grid) and renumber 1..n.
template <std::size_t Rank>
LabelField<Rank> restrict_to_labels(const LabelField<Rank>& labels,
                                    const std::vector<std::uint32_t>& chosen, std::size_t pad = 1);

struct BenchCountOptions {
  /// Empty: log-spaced counts up to min(2000, labels present).
  std::vector<std::size_t> counts;
  std::size_t repeats = 10;
  std::vector<BenchMethod> methods = all_bench_methods();
  std::uint64_t seed = 0;
  /// Thread settings to time; 0 means hardware concurrency.
  std::vector<unsigned> threads{0};
  std::size_t pad = 1;
  ThicknessMethod lt_method = ThicknessMethod::fast;
};

/// For every count and repeat, sample labels, build the sub-volume and time
/// each method on it. One warm-up run per count and method is discarded.
/// Counts above the number of labels are capped with a warning.
template <std::size_t Rank>
SpeedReport bench_count(const LabelField<Rank>& labels, const BenchCountOptions& options);

struct BenchSizeOptions {
  /// Radii of the timed objects.
  std::vector<double> sizes{4, 8, 16, 32};
  ShapeKind kind = ShapeKind::blob;
  std::size_t repeats = 10;
  std::vector<BenchMethod> methods = all_bench_methods();
  std::uint64_t seed = 0;
  std::vector<unsigned> threads{0};
  ThicknessMethod lt_method = ThicknessMethod::fast;
};

/// Time each method on a single object of growing radius, drawn on a canvas
/// with a two-element margin. `Rank` selects disks/2D blobs or spheres/3D blobs.
template <std::size_t Rank>
SpeedReport bench_size(const BenchSizeOptions& options);

/// Batched against one-object-at-a-time processing of the same label field.
struct BatchComparison {
  std::size_t objects = 0;
  /// analyze() once over all labels, sphericity and roundness.
  double batch_seconds = 0.0;
  /// Sphericity and roundness for each label alone on the full canvas.
  double single_seconds = 0.0;
  /// Same, each label alone on a crop around it.
  double single_cropped_seconds = 0.0;
  /// Marching cubes/squares sphericity, each label masked on the full canvas.
  double mesh_seconds = 0.0;
  /// Same, each label meshed on a crop around it.
  double mesh_cropped_seconds = 0.0;
};

template <std::size_t Rank>
BatchComparison compare_batch(const LabelField<Rank>& labels,
                              ThicknessMethod lt_method = ThicknessMethod::fast);

}  // namespace ltshape
