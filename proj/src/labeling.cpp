// SPDX-License-Identifier: Apache-2.0
#include "ltshape/labeling.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

namespace ltshape {

namespace {

class DisjointSet {
 public:
  std::uint32_t make() {
    parent_.push_back(static_cast<std::uint32_t>(parent_.size()));
    return parent_.back();
  }

  std::uint32_t find(std::uint32_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::uint32_t> parent_;
};

struct Offset {
  int dz, dy, dx;
};

// Neighbours already visited by a row-major scan.
std::vector<Offset> causal_offsets(int connectivity, bool is3d) {
  std::vector<Offset> out;
  const int zr = is3d ? 1 : 0;
  for (int dz = -zr; dz <= 0; ++dz)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const bool before = dz < 0 || (dz == 0 && (dy < 0 || (dy == 0 && dx < 0)));
        if (!before) continue;
        const int nonzero = (dz != 0) + (dy != 0) + (dx != 0);
        const bool face_only = connectivity == 4 || connectivity == 6;
        if (face_only && nonzero > 1) continue;
        out.push_back({dz, dy, dx});
      }
  return out;
}

template <std::size_t Rank>
LabelField<Rank> relabel(const LabelField<Rank>& labels, const std::vector<std::uint32_t>& map) {
  LabelField<Rank> out(labels.shape(), 0);
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = map[labels[i]];
  return out;
}

}  // namespace

template <typename T, std::size_t Rank>
LabelField<Rank> label_components(const Grid<T, Rank>& mask, int connectivity) {
  const bool valid = Rank == 2 ? (connectivity == 4 || connectivity == 8)
                               : (connectivity == 6 || connectivity == 26);
  if (!valid)
    throw InvalidArgument("invalid connectivity " + std::to_string(connectivity) + " for " +
                          std::to_string(Rank) + "D");

  const auto nz = static_cast<long>(mask.depth());
  const auto ny = static_cast<long>(mask.rows());
  const auto nx = static_cast<long>(mask.cols());
  const auto offsets = causal_offsets(connectivity, Rank == 3);

  LabelField<Rank> provisional(mask.shape(), 0);
  DisjointSet sets;
  sets.make();  // 0 = background

  for (long z = 0; z < nz; ++z)
    for (long y = 0; y < ny; ++y)
      for (long x = 0; x < nx; ++x) {
        const auto i = static_cast<std::size_t>((z * ny + y) * nx + x);
        if (mask[i] == T{}) continue;
        std::uint32_t current = 0;
        for (const Offset& o : offsets) {
          const long zz = z + o.dz, yy = y + o.dy, xx = x + o.dx;
          if (zz < 0 || yy < 0 || xx < 0 || yy >= ny || xx >= nx) continue;
          const std::uint32_t n = provisional[static_cast<std::size_t>((zz * ny + yy) * nx + xx)];
          if (n == 0) continue;
          if (current == 0)
            current = n;
          else
            sets.unite(current, n);
        }
        if (current == 0) {
          if (sets.size() >= std::numeric_limits<std::uint32_t>::max())
            throw InvalidArgument("too many components");
          current = sets.make();
        }
        provisional[i] = current;
      }

  // Final numbering by first encounter of each root in scan order.
  std::vector<std::uint32_t> final_label(sets.size(), 0);
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < provisional.size(); ++i) {
    if (provisional[i] == 0) continue;
    const std::uint32_t root = sets.find(provisional[i]);
    if (final_label[root] == 0) final_label[root] = ++next;
    provisional[i] = final_label[root];
  }
  return provisional;
}

template <std::size_t Rank>
std::uint32_t max_label(const LabelField<Rank>& labels) {
  std::uint32_t m = 0;
  for (std::uint32_t v : labels.data()) m = std::max(m, v);
  return m;
}

template <std::size_t Rank>
LabelField<Rank> compact_labels(const LabelField<Rank>& labels) {
  const std::uint32_t top = max_label(labels);
  std::vector<std::uint32_t> map(static_cast<std::size_t>(top) + 1, 0);
  for (std::uint32_t v : labels.data()) map[v] = 1;
  std::uint32_t next = 0;
  for (std::uint32_t l = 1; l <= top; ++l)
    if (map[l]) map[l] = ++next;
  map[0] = 0;
  return relabel(labels, map);
}

template <std::size_t Rank>
LabelField<Rank> remove_edge_objects(const LabelField<Rank>& labels) {
  const std::uint32_t top = max_label(labels);
  std::vector<std::uint32_t> map(static_cast<std::size_t>(top) + 1);
  std::iota(map.begin(), map.end(), 0u);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 0) continue;
    const auto c = labels.coord(i);
    for (std::size_t d = 0; d < Rank; ++d)
      if (c[d] == 0 || c[d] + 1 == labels.shape()[d]) map[labels[i]] = 0;
  }
  return compact_labels(relabel(labels, map));
}

template <std::size_t Rank>
LabelField<Rank> filter_small(const LabelField<Rank>& labels, std::size_t min_volume) {
  if (min_volume < 1) throw InvalidArgument("min_volume must be at least 1");
  const std::uint32_t top = max_label(labels);
  std::vector<std::size_t> volume(static_cast<std::size_t>(top) + 1, 0);
  for (std::uint32_t v : labels.data()) ++volume[v];
  std::vector<std::uint32_t> map(volume.size(), 0);
  for (std::uint32_t l = 1; l <= top; ++l) map[l] = volume[l] >= min_volume ? l : 0;
  return compact_labels(relabel(labels, map));
}

template <std::size_t Rank>
std::vector<ObjectRecord<Rank>> object_records(const LabelField<Rank>& labels,
                                               const ThicknessField<Rank>& lt) {
  const bool with_lt = !lt.empty();
  if (with_lt && lt.shape() != labels.shape())
    throw InvalidArgument("thickness and label shapes differ");
  const std::uint32_t top = max_label(labels);
  std::vector<ObjectRecord<Rank>> acc(static_cast<std::size_t>(top) + 1);
  std::vector<double> sums(acc.size(), 0.0);

  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::uint32_t l = labels[i];
    if (l == 0) continue;
    auto& r = acc[l];
    const auto c = labels.coord(i);
    if (r.volume == 0) {
      r.bbox.min = c;
      r.bbox.max = c;
    } else {
      for (std::size_t d = 0; d < Rank; ++d) {
        r.bbox.min[d] = std::min(r.bbox.min[d], c[d]);
        r.bbox.max[d] = std::max(r.bbox.max[d], c[d]);
      }
    }
    ++r.volume;
    if (with_lt) {
      sums[l] += lt[i];
      r.max_lt = std::max(r.max_lt, lt[i]);
    }
  }

  std::vector<ObjectRecord<Rank>> out;
  for (std::uint32_t l = 1; l <= top; ++l) {
    auto& r = acc[l];
    if (r.volume == 0) continue;
    r.label = l;
    if (with_lt) r.mean_lt = std::min(r.max_lt, sums[l] / static_cast<double>(r.volume));
    for (std::size_t d = 0; d < Rank; ++d)
      if (r.bbox.min[d] == 0 || r.bbox.max[d] + 1 == labels.shape()[d]) r.touches_edge = true;
    out.push_back(r);
  }
  return out;
}

#define LTSHAPE_INSTANTIATE_LABELING(R)                                                     \
  template LabelField<R> label_components<std::uint8_t, R>(const Grid<std::uint8_t, R>&, int); \
  template LabelField<R> label_components<std::uint32_t, R>(const Grid<std::uint32_t, R>&,  \
                                                            int);                           \
  template LabelField<R> compact_labels<R>(const LabelField<R>&);                           \
  template LabelField<R> remove_edge_objects<R>(const LabelField<R>&);                      \
  template LabelField<R> filter_small<R>(const LabelField<R>&, std::size_t);                \
  template std::uint32_t max_label<R>(const LabelField<R>&);                                \
  template std::vector<ObjectRecord<R>> object_records<R>(const LabelField<R>&,             \
                                                          const ThicknessField<R>&);

LTSHAPE_INSTANTIATE_LABELING(2)
LTSHAPE_INSTANTIATE_LABELING(3)

#undef LTSHAPE_INSTANTIATE_LABELING

}  // namespace ltshape
