// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "ltshape/grid.hpp"

namespace ltshape {

// Marching squares / marching cubes on binary masks at iso-value 0.5. Every
// crossing sits at an edge midpoint. Elements outside the grid are treated as
// background, so objects touching the border are closed off there.

/// Iso-contour as unordered line segments, points in (x, y) = (col, row).
struct ContourSet {
  std::vector<std::array<std::array<double, 2>, 2>> segments;
  double length() const;
};

/// Indexed triangle mesh, vertices in (x, y, z) = (col, row, slice).
struct SurfaceMesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;

  double area() const;
  /// Every undirected edge is shared by exactly two triangles.
  bool is_closed() const;
};

/// Saddle cells (two diagonal corners inside) keep the inside corners apart.
template <typename T>
ContourSet marching_squares(const Grid2D<T>& mask);

template <typename T>
double marching_squares_perimeter(const Grid2D<T>& mask);

/// Vertices shared between neighbouring cells are merged.
template <typename T>
SurfaceMesh marching_cubes(const Grid3D<T>& mask);

/// Total area of the marching cubes surface, from per-case area constants.
template <typename T>
double marching_cubes_area(const Grid3D<T>& mask);

/// ASCII OFF export for inspection in mesh viewers.
void write_off(const SurfaceMesh& mesh, const std::filesystem::path& path);

/// Sphericity from the measured perimeter (2D) or surface area (3D) of each
/// label, computed on a crop around the object. Sorted by label.
template <std::size_t Rank>
std::vector<std::pair<std::uint32_t, double>> sphericity_mc(const LabelField<Rank>& labels);

/// Perimeter (2D) or surface area (3D) of the nonzero elements of `mask`.
template <typename T, std::size_t Rank>
double mesh_measure(const Grid<T, Rank>& mask);

}  // namespace ltshape
