// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ltshape/grid.hpp"

namespace ltshape {

// Sphericity and roundness from local thickness.
//
// 3D sphericity models the object as a spheroid whose two equal semi-axes are
// the mean local thickness and whose third semi-axis preserves the measured
// volume. The surface area of that spheroid replaces the measured surface in
// Wadell's ratio  pi^(1/3) (6V)^(2/3) / S.
//
// 2D sphericity does the same with an ellipse: one semi-axis is the mean local
// thickness, the other preserves the area, and Ramanujan's perimeter of that
// ellipse is compared with the perimeter of the equal-area circle.
//
// Roundness is the mean local thickness over the object boundary divided by
// the maximum local thickness (the radius of the largest inscribed ball), so
// it can never exceed 1.

/// Spheroid with semi-axes (a, a, c).
struct SpheroidModel {
  double a = 0.0;
  double c = 0.0;
  double eccentricity = 0.0;
};

/// Ellipse with semi-axes a and b.
struct EllipseModel {
  double a = 0.0;
  double b = 0.0;
};

/// sqrt(1 - c^2/a^2) for oblate (c < a), sqrt(1 - a^2/c^2) for prolate.
double spheroid_eccentricity(double a, double c);

/// Surface area of the spheroid (a, a, c). Exactly 4 pi a^2 when c == a.
double spheroid_surface_area(double a, double c);

/// pi (3(a+b) - sqrt((3a+b)(a+3b))).
double ramanujan_perimeter(double a, double b);

struct Sphericity3D {
  double value = 0.0;  // clamped to <= 1
  double raw = 0.0;    // before clamping
  double surface_area = 0.0;
  SpheroidModel model;
};

struct Sphericity2D {
  double value = 0.0;  // clamped to <= 1
  double raw = 0.0;
  double model_perimeter = 0.0;
  double circle_perimeter = 0.0;
  EllipseModel model;
};

Sphericity3D sphericity_3d(double volume, double mean_lt);
Sphericity2D sphericity_2d(double area, double mean_lt);

/// Wadell's volume-equivalent sphericity for a measured surface area.
double sphericity_from_area(double volume, double surface_area);
/// Perimeter ratio 2 sqrt(pi A) / P for a measured perimeter.
double sphericity_from_perimeter(double area, double perimeter);

/// boundary_mean_lt / max_lt. Throws InconsistencyError if the boundary mean
/// exceeds the maximum, InvalidArgument on nonpositive input.
double roundness_lt(double boundary_mean_lt, double max_lt);

/// Width-to-length ratio per label from the coordinate covariance: axis
/// length = 4 sqrt(eigenvalue), each element treated as a unit cell (adds
/// 1/12 per axis). In 3D the two largest axes are used. Sorted by label.
template <std::size_t Rank>
std::vector<std::pair<std::uint32_t, double>> sphericity_wl(const LabelField<Rank>& labels);

}  // namespace ltshape
