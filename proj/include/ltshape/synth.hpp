// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ltshape/grid.hpp"

namespace ltshape {

// Rasterized shapes with known continuum geometry. An element is foreground
// iff its center satisfies the shape's implicit inequality. Shapes are
// centred on the canvas center plus `offset`.

enum class ShapeKind { disk, ellipse, square, bar, star, superellipse, sphere, spheroid, box, blob };

std::string to_string(ShapeKind kind);
/// Throws InvalidArgument for unknown names.
ShapeKind parse_shape_kind(const std::string& name);
/// Rank of the canvas a kind is drawn on; blobs take the rank of the canvas.
std::optional<std::size_t> shape_rank(ShapeKind kind);

struct ShapeSpec {
  ShapeKind kind = ShapeKind::disk;
  /// Semi-axes along (x, y, z). Disk/sphere/square use axes[0] as radius or
  /// half side; bar and box use them as half extents.
  std::array<double, 3> axes{10.0, 10.0, 10.0};
  /// Star: inner radius (outer radius is axes[0]) and spike count.
  double inner_radius = 5.0;
  int spikes = 5;
  /// Star: sinusoidal radial profile instead of a sharp polygon.
  bool rounded = false;
  /// Superellipse exponent n in |x/a|^n + |y/b|^n <= 1.
  double exponent = 4.0;
  /// In-plane rotation in radians (2D kinds).
  double rotation = 0.0;
  /// Canvas shape: (rows, cols) or (depth, rows, cols).
  std::vector<std::size_t> canvas{64, 64};
  /// Shift of the shape center from the canvas center, (x, y, z).
  std::array<double, 3> offset{0.0, 0.0, 0.0};
  /// Blob: noise seed and relative boundary roughness.
  std::uint64_t seed = 0;
  double roughness = 0.35;
};

/// Throws InvalidArgument if the shape is empty, does not keep one element of
/// background margin inside the canvas, or the canvas rank does not match.
template <std::size_t Rank>
Mask<Rank> rasterize(const ShapeSpec& spec);

/// Continuum reference values. Sphericity follows the perimeter ratio in 2D
/// and Wadell's area ratio in 3D; roundness is only known for disks and
/// spheres. `available` is false for blobs.
struct GroundTruth {
  bool available = false;
  std::optional<double> sphericity;
  std::optional<double> roundness;
  std::optional<double> sphericity_wl;
  std::optional<double> measure;  // perimeter (2D) or surface area (3D)
  std::optional<double> size;     // area (2D) or volume (3D)
};

GroundTruth ground_truth(const ShapeSpec& spec);

/// Perimeter of the ellipse with semi-axes a, b (periodic trapezoid rule on
/// the arc-length integrand, accurate to rounding).
double ellipse_perimeter(double a, double b);
/// Surface area of the ellipsoid (a, b, c) by tensor-product quadrature.
double ellipsoid_surface_area(double a, double b, double c);

/// Deterministic pseudo-random generator used by every synthetic routine.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t state_;
};

/// Thresholded, box-smoothed uniform noise: roughly `fill` of the elements
/// become foreground, in irregular clumps of size ~`smoothing`.
template <std::size_t Rank>
Mask<Rank> random_blob_mask(const typename Mask<Rank>::Shape& shape, std::uint64_t seed,
                            int smoothing = 2, double fill = 0.5);

/// Canvas with `count` separated blobs, labels 1..count. Radii are drawn
/// uniformly from [min_radius, max_radius]; blobs keep at least `gap`
/// elements between their bounding spheres and one element from the border.
/// Throws InvalidArgument if the blobs cannot be placed.
template <std::size_t Rank>
LabelField<Rank> blob_field(const typename LabelField<Rank>::Shape& shape, std::size_t count,
                            double min_radius, double max_radius, std::uint64_t seed,
                            double gap = 2.0);

}  // namespace ltshape
