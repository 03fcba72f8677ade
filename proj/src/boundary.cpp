// SPDX-License-Identifier: Apache-2.0
#include "ltshape/boundary.hpp"

#include <algorithm>

#include "ltshape/parallel.hpp"

namespace ltshape {

template <typename T, std::size_t Rank>
Mask<Rank> extract_boundary(const Grid<T, Rank>& mask, bool separate_labels) {
  const std::size_t nz = mask.depth(), ny = mask.rows(), nx = mask.cols();
  const std::size_t plane = ny * nx;
  Mask<Rank> out(mask.shape(), 0);

  parallel_for(0, nz * ny, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t row = lo; row < hi; ++row) {
      const std::size_t z = row / ny, y = row % ny;
      for (std::size_t x = 0; x < nx; ++x) {
        const std::size_t i = row * nx + x;
        const T v = mask[i];
        if (v == T{}) continue;
        auto differs = [&](std::size_t j) {
          const T n = mask[j];
          return n == T{} || (separate_labels && n != v);
        };
        const bool edge = (x > 0 && differs(i - 1)) || (x + 1 < nx && differs(i + 1)) ||
                          (y > 0 && differs(i - nx)) || (y + 1 < ny && differs(i + nx)) ||
                          (z > 0 && differs(i - plane)) || (z + 1 < nz && differs(i + plane));
        if (edge) out[i] = 1;
      }
    }
  });
  return out;
}

template <std::size_t Rank>
std::vector<BoundaryStats> boundary_mean_lt(const Mask<Rank>& boundary,
                                            const ThicknessField<Rank>& lt,
                                            const LabelField<Rank>& labels) {
  if (boundary.shape() != labels.shape() || lt.shape() != labels.shape())
    throw InvalidArgument("boundary, thickness and label shapes differ");
  const std::uint32_t top = max_label(labels);
  std::vector<std::size_t> counts(static_cast<std::size_t>(top) + 1, 0);
  std::vector<double> sums(counts.size(), 0.0);
  std::vector<double> peaks(counts.size(), 0.0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::uint32_t l = labels[i];
    if (l == 0 || boundary[i] == 0) continue;
    ++counts[l];
    sums[l] += lt[i];
    peaks[l] = std::max(peaks[l], lt[i]);
  }
  std::vector<BoundaryStats> out;
  for (std::uint32_t l = 1; l <= top; ++l) {
    if (counts[l] == 0) continue;
    // Summation rounding must not lift the mean above the largest sample.
    const double mean = std::min(peaks[l], sums[l] / static_cast<double>(counts[l]));
    out.push_back({l, counts[l], mean});
  }
  return out;
}

template <std::size_t Rank>
std::vector<std::uint32_t> fill_boundary_mean_lt(std::vector<ObjectRecord<Rank>>& records,
                                                 const std::vector<BoundaryStats>& stats) {
  std::vector<std::uint32_t> missing;
  auto it = stats.begin();
  for (auto& r : records) {
    while (it != stats.end() && it->label < r.label) ++it;
    if (it != stats.end() && it->label == r.label)
      r.boundary_mean_lt = it->mean_lt;
    else
      missing.push_back(r.label);
  }
  return missing;
}

#define LTSHAPE_INSTANTIATE_BOUNDARY(R)                                                      \
  template Mask<R> extract_boundary<std::uint8_t, R>(const Grid<std::uint8_t, R>&, bool);    \
  template Mask<R> extract_boundary<std::uint32_t, R>(const Grid<std::uint32_t, R>&, bool);  \
  template std::vector<BoundaryStats> boundary_mean_lt<R>(                                   \
      const Mask<R>&, const ThicknessField<R>&, const LabelField<R>&);                       \
  template std::vector<std::uint32_t> fill_boundary_mean_lt<R>(std::vector<ObjectRecord<R>>&, \
                                                               const std::vector<BoundaryStats>&);

LTSHAPE_INSTANTIATE_BOUNDARY(2)
LTSHAPE_INSTANTIATE_BOUNDARY(3)

#undef LTSHAPE_INSTANTIATE_BOUNDARY

}  // namespace ltshape
