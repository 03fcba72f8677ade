// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ltshape/errors.hpp"

namespace ltshape {

/// Dense row-major grid with isotropic unit spacing.
///
/// Rank 2 is (rows, cols), rank 3 is (depth, rows, cols). The last axis is
/// contiguous: flat index = ((z * rows) + y) * cols + x. Grids are plain
/// values; copies are deep.
template <typename T, std::size_t Rank>
class Grid {
  static_assert(Rank == 2 || Rank == 3, "only 2D and 3D grids are supported");

 public:
  using value_type = T;
  using Shape = std::array<std::size_t, Rank>;
  using Coord = std::array<std::size_t, Rank>;
  static constexpr std::size_t rank = Rank;

  Grid() = default;

  explicit Grid(const Shape& shape, T fill = T{}) : shape_(shape) {
    std::size_t n = 1;
    for (std::size_t d : shape) {
      if (d == 0) throw InvalidArgument("grid dimensions must be at least 1");
      n *= d;
    }
    data_.assign(n, fill);
  }

  Grid(const Shape& shape, std::vector<T> data) : Grid(shape) {
    if (data.size() != data_.size())
      throw InvalidArgument("data length " + std::to_string(data.size()) +
                            " does not match grid size " + std::to_string(data_.size()));
    data_ = std::move(data);
  }

  const Shape& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  // Extents with 2D grids reported as depth 1.
  std::size_t depth() const noexcept { return Rank == 3 ? shape_[0] : 1; }
  std::size_t rows() const noexcept { return shape_[Rank - 2]; }
  std::size_t cols() const noexcept { return shape_[Rank - 1]; }

  bool contains(const Coord& c) const noexcept {
    for (std::size_t d = 0; d < Rank; ++d)
      if (c[d] >= shape_[d]) return false;
    return true;
  }

  std::size_t index(const Coord& c) const {
    if (!contains(c)) throw InvalidArgument("grid coordinate out of bounds");
    std::size_t flat = 0;
    for (std::size_t d = 0; d < Rank; ++d) flat = flat * shape_[d] + c[d];
    return flat;
  }

  Coord coord(std::size_t flat) const noexcept {
    Coord c{};
    for (std::size_t d = Rank; d-- > 0;) {
      c[d] = flat % shape_[d];
      flat /= shape_[d];
    }
    return c;
  }

  T get(const Coord& c) const { return data_[index(c)]; }
  void set(const Coord& c, T value) { data_[index(c)] = value; }

  T& operator[](std::size_t flat) noexcept { return data_[flat]; }
  const T& operator[](std::size_t flat) const noexcept { return data_[flat]; }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }
  const std::vector<T>& values() const noexcept { return data_; }

  bool operator==(const Grid&) const = default;

 private:
  Shape shape_{};
  std::vector<T> data_;
};

template <typename T> using Grid2D = Grid<T, 2>;
template <typename T> using Grid3D = Grid<T, 3>;

template <std::size_t Rank> using Mask = Grid<std::uint8_t, Rank>;
template <std::size_t Rank> using LabelField = Grid<std::uint32_t, Rank>;
/// Euclidean distances; every value is the square root of a nonnegative integer.
template <std::size_t Rank> using DistanceField = Grid<double, Rank>;
/// Local thickness radii; drawn from the values of a DistanceField.
template <std::size_t Rank> using ThicknessField = Grid<double, Rank>;

/// Inclusive axis-aligned bounds.
template <std::size_t Rank>
struct BoundingBox {
  std::array<std::size_t, Rank> min{};
  std::array<std::size_t, Rank> max{};
  bool operator==(const BoundingBox&) const = default;
};

template <typename T, std::size_t Rank>
Grid<T, Rank> grid_new(const typename Grid<T, Rank>::Shape& shape, T fill) {
  return Grid<T, Rank>(shape, fill);
}

/// Surround the grid with `width` elements of `fill` on every side.
template <typename T, std::size_t Rank>
Grid<T, Rank> pad(const Grid<T, Rank>& in, std::size_t width, T fill = T{}) {
  typename Grid<T, Rank>::Shape shape = in.shape();
  for (auto& d : shape) d += 2 * width;
  Grid<T, Rank> out(shape, fill);
  for (std::size_t i = 0; i < in.size(); ++i) {
    auto c = in.coord(i);
    for (auto& v : c) v += width;
    out[out.index(c)] = in[i];
  }
  return out;
}

/// Copy the region [box.min, box.max] (inclusive) into a new grid, optionally
/// surrounded by `margin` elements of `fill`.
template <typename T, std::size_t Rank>
Grid<T, Rank> crop(const Grid<T, Rank>& in, const BoundingBox<Rank>& box, std::size_t margin = 0,
                   T fill = T{}) {
  typename Grid<T, Rank>::Shape shape{};
  for (std::size_t d = 0; d < Rank; ++d) {
    if (box.min[d] > box.max[d] || box.max[d] >= in.shape()[d])
      throw InvalidArgument("crop box outside grid");
    shape[d] = box.max[d] - box.min[d] + 1 + 2 * margin;
  }
  Grid<T, Rank> out(shape, fill);
  const std::size_t inner_cols = box.max[Rank - 1] - box.min[Rank - 1] + 1;
  // Copy contiguous rows of the innermost axis.
  typename Grid<T, Rank>::Coord src = box.min;
  while (true) {
    typename Grid<T, Rank>::Coord dst{};
    for (std::size_t d = 0; d < Rank; ++d) dst[d] = src[d] - box.min[d] + margin;
    const std::size_t s = in.index(src);
    const std::size_t t = out.index(dst);
    for (std::size_t x = 0; x < inner_cols; ++x) out[t + x] = in[s + x];
    // Advance over the outer axes.
    std::size_t d = Rank - 1;
    while (d-- > 0) {
      if (++src[d] <= box.max[d]) break;
      src[d] = box.min[d];
    }
    if (d == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

}  // namespace ltshape
