// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "ltshape/grid.hpp"

namespace ltshape {

/// 8 in 2D, 26 in 3D.
template <std::size_t Rank>
constexpr int default_connectivity() {
  return Rank == 2 ? 8 : 26;
}

/// Label connected foreground components (nonzero elements).
///
/// Connectivity is 4 or 8 in 2D and 6 or 26 in 3D. Labels are 1..K in order of
/// first encounter in a row-major scan, independent of the thread count.
template <typename T, std::size_t Rank>
LabelField<Rank> label_components(const Grid<T, Rank>& mask,
                                  int connectivity = default_connectivity<Rank>());

/// Renumber arbitrary label values to 1..K keeping their relative order.
template <std::size_t Rank>
LabelField<Rank> compact_labels(const LabelField<Rank>& labels);

/// Zero every label touching the grid border, then compact.
template <std::size_t Rank>
LabelField<Rank> remove_edge_objects(const LabelField<Rank>& labels);

/// Zero every label with fewer than `min_volume` elements, then compact.
template <std::size_t Rank>
LabelField<Rank> filter_small(const LabelField<Rank>& labels, std::size_t min_volume);

/// Largest label value present.
template <std::size_t Rank>
std::uint32_t max_label(const LabelField<Rank>& labels);

/// Per-object aggregate. Volume is the element count (area in 2D).
template <std::size_t Rank>
struct ObjectRecord {
  std::uint32_t label = 0;
  std::size_t volume = 0;
  double mean_lt = 0.0;
  double max_lt = 0.0;
  double boundary_mean_lt = 0.0;  // filled by fill_boundary_mean_lt()
  BoundingBox<Rank> bbox{};
  bool touches_edge = false;
};

/// One record per label present, sorted by label. `lt` may be empty (default
/// constructed) to collect geometry only.
template <std::size_t Rank>
std::vector<ObjectRecord<Rank>> object_records(const LabelField<Rank>& labels,
                                               const ThicknessField<Rank>& lt);

}  // namespace ltshape
