// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "ltshape/grid.hpp"

namespace ltshape {

/// Exact Euclidean distance transform.
///
/// Any nonzero element is foreground. The result holds, for every foreground
/// element, the center-to-center distance to the nearest background element
/// and 0 on background. Elements outside the grid are not background: pad the
/// input if objects touching the border should be closed there.
///
/// Squared distances are computed in integer arithmetic with one lower-envelope
/// pass per axis, so the output is exactly sqrt(k) for integer k.
///
/// Throws NoBackground if the mask has foreground but no background element.
template <typename T, std::size_t Rank>
DistanceField<Rank> edt(const Grid<T, Rank>& mask);

/// Same as edt() but returns the integer squared distances.
template <typename T, std::size_t Rank>
Grid<std::int64_t, Rank> squared_edt(const Grid<T, Rank>& mask);

/// Reference implementation: nearest background by scanning every background
/// element for every foreground element. O(n^2); for testing only.
template <typename T, std::size_t Rank>
DistanceField<Rank> edt_bruteforce(const Grid<T, Rank>& mask);

}  // namespace ltshape
