// SPDX-License-Identifier: Apache-2.0
#include "ltshape/local_thickness.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "ltshape/parallel.hpp"

namespace ltshape {

namespace {

std::int64_t isqrt(std::int64_t v) {
  if (v <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

std::int64_t squared_radius(double d) { return std::llround(d * d); }

struct Center {
  std::int64_t r2;  // squared radius
  std::size_t index;
};

// True if the ball (center q, squared radius kq) lies inside the ball of the
// neighbour at squared offset s with squared radius kn:
// sqrt(kn) >= sqrt(kq) + sqrt(s), evaluated without rounding.
bool contained(std::int64_t kq, std::int64_t kn, std::int64_t s) {
  const std::int64_t t = kn - kq - s;
  return t >= 0 && t * t >= 4 * kq * s;
}

}  // namespace

template <std::size_t Rank>
ThicknessField<Rank> local_thickness_exact(const DistanceField<Rank>& dist) {
  const auto nz = static_cast<std::int64_t>(dist.depth());
  const auto ny = static_cast<std::int64_t>(dist.rows());
  const auto nx = static_cast<std::int64_t>(dist.cols());
  ThicknessField<Rank> lt(dist.shape(), 0.0);

  for (std::int64_t cz = 0; cz < nz; ++cz)
    for (std::int64_t cy = 0; cy < ny; ++cy)
      for (std::int64_t cx = 0; cx < nx; ++cx) {
        const double radius = dist[static_cast<std::size_t>((cz * ny + cy) * nx + cx)];
        if (radius <= 0.0) continue;
        const std::int64_t k = squared_radius(radius);
        const std::int64_t r = isqrt(k - 1);
        for (std::int64_t z = std::max<std::int64_t>(0, cz - r); z <= std::min(nz - 1, cz + r); ++z)
          for (std::int64_t y = std::max<std::int64_t>(0, cy - r); y <= std::min(ny - 1, cy + r); ++y)
            for (std::int64_t x = std::max<std::int64_t>(0, cx - r); x <= std::min(nx - 1, cx + r); ++x) {
              const std::int64_t s =
                  (z - cz) * (z - cz) + (y - cy) * (y - cy) + (x - cx) * (x - cx);
              if (s >= k) continue;
              const auto p = static_cast<std::size_t>((z * ny + y) * nx + x);
              if (dist[p] > 0.0 && lt[p] < radius) lt[p] = radius;
            }
      }
  return lt;
}

template <std::size_t Rank>
ThicknessField<Rank> local_thickness_fast(const DistanceField<Rank>& dist) {
  const auto nz = static_cast<std::int64_t>(dist.depth());
  const auto ny = static_cast<std::int64_t>(dist.rows());
  const auto nx = static_cast<std::int64_t>(dist.cols());
  const std::int64_t dz_max = nz > 1 ? 1 : 0;
  ThicknessField<Rank> lt(dist.shape(), 0.0);

  // Centres whose ball is not swallowed by a neighbouring ball. Dropping the
  // others is exact: containment strictly increases the radius, so every
  // dropped ball sits inside some kept ball.
  std::vector<Center> centers;
  std::mutex centers_mutex;
  parallel_for(0, static_cast<std::size_t>(nz * ny), [&](std::size_t lo, std::size_t hi) {
    std::vector<Center> local;
    for (std::size_t row = lo; row < hi; ++row) {
      const auto cz = static_cast<std::int64_t>(row) / ny;
      const auto cy = static_cast<std::int64_t>(row) % ny;
      for (std::int64_t cx = 0; cx < nx; ++cx) {
        const std::size_t i = row * static_cast<std::size_t>(nx) + static_cast<std::size_t>(cx);
        if (dist[i] <= 0.0) continue;
        const std::int64_t k = squared_radius(dist[i]);
        bool swallowed = false;
        for (std::int64_t dz = -dz_max; dz <= dz_max && !swallowed; ++dz) {
          const std::int64_t z = cz + dz;
          if (z < 0 || z >= nz) continue;
          for (std::int64_t dy = -1; dy <= 1 && !swallowed; ++dy) {
            const std::int64_t y = cy + dy;
            if (y < 0 || y >= ny) continue;
            for (std::int64_t dx = -1; dx <= 1; ++dx) {
              const std::int64_t x = cx + dx;
              if (x < 0 || x >= nx || (dz == 0 && dy == 0 && dx == 0)) continue;
              const double dn = dist[static_cast<std::size_t>((z * ny + y) * nx + x)];
              if (dn <= 0.0) continue;
              if (contained(k, squared_radius(dn), dz * dz + dy * dy + dx * dx)) {
                swallowed = true;
                break;
              }
            }
          }
        }
        if (!swallowed) local.push_back({k, i});
      }
    }
    std::lock_guard lock(centers_mutex);
    centers.insert(centers.end(), local.begin(), local.end());
  });
  std::sort(centers.begin(), centers.end(), [](const Center& a, const Center& b) {
    return a.r2 != b.r2 ? a.r2 > b.r2 : a.index < b.index;
  });

  // Skip list over each scan line; slot nx of every line is a sentinel that is
  // never filled, so lookups stay inside their own line.
  const std::size_t stride = static_cast<std::size_t>(nx) + 1;
  const std::size_t lines = static_cast<std::size_t>(nz * ny);
  std::vector<std::uint32_t> next(lines * stride);
  if (next.size() >= 0xffffffffu) throw InvalidArgument("grid too large for local thickness");
  for (std::size_t i = 0; i < next.size(); ++i) next[i] = static_cast<std::uint32_t>(i);

  auto find = [&next](std::uint32_t i) {
    while (next[i] != i) {
      next[i] = next[next[i]];
      i = next[i];
    }
    return i;
  };

  parallel_for(0, lines, [&](std::size_t lo, std::size_t hi) {
    const auto z_lo = static_cast<std::int64_t>(lo) / ny;
    const auto z_hi = static_cast<std::int64_t>(hi - 1) / ny;
    for (const Center& c : centers) {
      const auto cz = static_cast<std::int64_t>(c.index) / (ny * nx);
      const auto cy = (static_cast<std::int64_t>(c.index) / nx) % ny;
      const auto cx = static_cast<std::int64_t>(c.index) % nx;
      const std::int64_t r = isqrt(c.r2 - 1);
      const std::int64_t rz = nz > 1 ? r : 0;
      if (cz + rz < z_lo || cz - rz > z_hi) continue;
      const double radius = dist[c.index];
      for (std::int64_t z = std::max(z_lo, cz - rz); z <= std::min(z_hi, cz + rz); ++z) {
        const std::int64_t rem_z = c.r2 - 1 - (z - cz) * (z - cz);
        const std::int64_t ry = isqrt(rem_z);
        for (std::int64_t y = std::max<std::int64_t>(0, cy - ry); y <= std::min(ny - 1, cy + ry);
             ++y) {
          const auto line = static_cast<std::size_t>(z * ny + y);
          if (line < lo || line >= hi) continue;
          const std::int64_t w = isqrt(rem_z - (y - cy) * (y - cy));
          const std::int64_t x0 = std::max<std::int64_t>(0, cx - w);
          const std::int64_t x1 = std::min(nx - 1, cx + w);
          const std::size_t slot_base = line * stride;
          const std::size_t elem_base = line * static_cast<std::size_t>(nx);
          auto j = find(static_cast<std::uint32_t>(slot_base + static_cast<std::size_t>(x0)));
          const auto end = static_cast<std::uint32_t>(slot_base + static_cast<std::size_t>(x1));
          while (j <= end) {
            const std::size_t e = elem_base + (j - slot_base);
            if (dist[e] > 0.0) lt[e] = radius;
            next[j] = j + 1;
            j = find(j + 1);
          }
        }
      }
    }
  });
  return lt;
}

template <std::size_t Rank>
ThicknessField<Rank> local_thickness(const DistanceField<Rank>& dist, ThicknessMethod method) {
  return method == ThicknessMethod::exact ? local_thickness_exact(dist)
                                          : local_thickness_fast(dist);
}

template <std::size_t Rank>
std::vector<ThicknessStats> thickness_stats(const ThicknessField<Rank>& lt,
                                            const LabelField<Rank>& labels) {
  if (lt.shape() != labels.shape()) throw InvalidArgument("thickness and label shapes differ");
  std::uint32_t max_label = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) max_label = std::max(max_label, labels[i]);

  std::vector<ThicknessStats> acc(static_cast<std::size_t>(max_label) + 1);
  std::vector<double> sums(acc.size(), 0.0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::uint32_t l = labels[i];
    if (l == 0) continue;
    auto& a = acc[l];
    ++a.count;
    sums[l] += lt[i];
    a.max_lt = std::max(a.max_lt, lt[i]);
  }
  std::vector<ThicknessStats> out;
  for (std::uint32_t l = 1; l <= max_label; ++l) {
    if (acc[l].count == 0) continue;
    acc[l].label = l;
    acc[l].mean_lt = sums[l] / static_cast<double>(acc[l].count);
    out.push_back(acc[l]);
  }
  return out;
}

template ThicknessField<2> local_thickness_exact<2>(const DistanceField<2>&);
template ThicknessField<3> local_thickness_exact<3>(const DistanceField<3>&);
template ThicknessField<2> local_thickness_fast<2>(const DistanceField<2>&);
template ThicknessField<3> local_thickness_fast<3>(const DistanceField<3>&);
template ThicknessField<2> local_thickness<2>(const DistanceField<2>&, ThicknessMethod);
template ThicknessField<3> local_thickness<3>(const DistanceField<3>&, ThicknessMethod);
template std::vector<ThicknessStats> thickness_stats<2>(const ThicknessField<2>&,
                                                        const LabelField<2>&);
template std::vector<ThicknessStats> thickness_stats<3>(const ThicknessField<3>&,
                                                        const LabelField<3>&);

}  // namespace ltshape
