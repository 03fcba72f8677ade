// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "ltshape/grid.hpp"
#include "ltshape/labeling.hpp"

namespace ltshape {

/// Foreground elements with at least one face neighbour (4 in 2D, 6 in 3D)
/// that is background. Elements beyond the grid border are not background.
/// With `separate_labels`, a neighbour carrying a different nonzero value also
/// marks the element as boundary.
template <typename T, std::size_t Rank>
Mask<Rank> extract_boundary(const Grid<T, Rank>& mask, bool separate_labels = false);

struct BoundaryStats {
  std::uint32_t label = 0;
  std::size_t count = 0;
  double mean_lt = 0.0;
};

/// Mean local thickness over each label's boundary elements, sorted by label.
/// Labels without boundary elements are omitted.
template <std::size_t Rank>
std::vector<BoundaryStats> boundary_mean_lt(const Mask<Rank>& boundary,
                                            const ThicknessField<Rank>& lt,
                                            const LabelField<Rank>& labels);

/// Copy boundary means into matching records. Returns the labels that had no
/// boundary element (their field is left at 0).
template <std::size_t Rank>
std::vector<std::uint32_t> fill_boundary_mean_lt(std::vector<ObjectRecord<Rank>>& records,
                                                 const std::vector<BoundaryStats>& stats);

}  // namespace ltshape
