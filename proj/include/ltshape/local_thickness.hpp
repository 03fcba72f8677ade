// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "ltshape/grid.hpp"

namespace ltshape {

// Local thickness LT(p) is the radius of the largest ball that lies inside the
// foreground and covers p:
//
//     LT(p) = max { d(q) : |p - q| < d(q) }
//
// with d the Euclidean distance field. Ball membership is strict, so the ball
// centred at p always qualifies and LT >= d. Both implementations below need
// squared radii to be integers, which holds for any field produced by edt().

/// Reference implementation: every foreground element paints its own ball.
/// O(n * r^D); used as the test oracle.
template <std::size_t Rank>
ThicknessField<Rank> local_thickness_exact(const DistanceField<Rank>& dist);

/// Production implementation.
///
/// Balls contained in a neighbour's ball are dropped (integer containment
/// test), the remaining centres are visited by decreasing radius and each ball
/// is written one scan-line span at a time. A per-line skip list lets every
/// element be written once, so the cost is dominated by the number of spans.
/// Produces the same field as local_thickness_exact().
template <std::size_t Rank>
ThicknessField<Rank> local_thickness_fast(const DistanceField<Rank>& dist);

enum class ThicknessMethod { fast, exact };

template <std::size_t Rank>
ThicknessField<Rank> local_thickness(const DistanceField<Rank>& dist,
                                     ThicknessMethod method = ThicknessMethod::fast);

struct ThicknessStats {
  std::uint32_t label = 0;
  std::size_t count = 0;
  double mean_lt = 0.0;
  double max_lt = 0.0;
};

/// Mean and max local thickness over each label's support in a single pass.
/// Labels without support are omitted; output is sorted by label.
template <std::size_t Rank>
std::vector<ThicknessStats> thickness_stats(const ThicknessField<Rank>& lt,
                                            const LabelField<Rank>& labels);

}  // namespace ltshape
