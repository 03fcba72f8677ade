// SPDX-License-Identifier: Apache-2.0
#include "ltshape/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ltshape/labeling.hpp"
#include "ltshape/metrics.hpp"

namespace ltshape {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Smooth value noise in [-1, 1] on an integer lattice.
double lattice_value(std::uint64_t seed, long ix, long iy, long iz) {
  std::uint64_t h = mix(seed ^ 0x9e3779b97f4a7c15ULL);
  h = mix(h ^ static_cast<std::uint64_t>(ix) * 0x100000001b3ULL);
  h = mix(h ^ static_cast<std::uint64_t>(iy) * 0xc2b2ae3d27d4eb4fULL);
  h = mix(h ^ static_cast<std::uint64_t>(iz) * 0x165667b19e3779f9ULL);
  return static_cast<double>(h >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

double value_noise(std::uint64_t seed, double x, double y, double z) {
  const double fx = std::floor(x), fy = std::floor(y), fz = std::floor(z);
  const auto ix = static_cast<long>(fx), iy = static_cast<long>(fy), iz = static_cast<long>(fz);
  auto smooth = [](double t) { return t * t * (3.0 - 2.0 * t); };
  const double tx = smooth(x - fx), ty = smooth(y - fy), tz = smooth(z - fz);
  double acc = 0.0;
  for (int dz = 0; dz <= 1; ++dz)
    for (int dy = 0; dy <= 1; ++dy)
      for (int dx = 0; dx <= 1; ++dx) {
        const double w = (dx ? tx : 1.0 - tx) * (dy ? ty : 1.0 - ty) * (dz ? tz : 1.0 - tz);
        acc += w * lattice_value(seed, ix + dx, iy + dy, iz + dz);
      }
  return acc;
}

// Blob boundary radius along the unit direction (ux, uy, uz).
double blob_radius(double radius, double roughness, std::uint64_t seed, double ux, double uy,
                   double uz) {
  // Two octaves sampled on a sphere of lattice radius 1.6 / 3.2.
  const double n = 0.7 * value_noise(seed, 1.6 * ux, 1.6 * uy, 1.6 * uz) +
                   0.3 * value_noise(seed + 1, 3.2 * ux, 3.2 * uy, 3.2 * uz);
  return radius * (1.0 + roughness * n);
}

bool inside_star(double u, double v, const ShapeSpec& s) {
  const double outer = s.axes[0];
  const double r = std::hypot(u, v);
  double phi = std::atan2(v, u);
  if (phi < 0.0) phi += 2.0 * kPi;
  const double k = s.spikes;
  if (s.rounded) {
    const double edge = s.inner_radius + (outer - s.inner_radius) * (0.5 + 0.5 * std::cos(k * phi));
    return r <= edge;
  }
  const double sector = 2.0 * kPi / k;
  double alpha = std::fmod(phi, sector);
  if (alpha > sector / 2.0) alpha = sector - alpha;
  // Edge from the spike tip (outer, 0) to the notch at angle pi/k.
  const double p1x = outer, p1y = 0.0;
  const double p2x = s.inner_radius * std::cos(sector / 2.0), p2y = s.inner_radius * std::sin(sector / 2.0);
  const double qx = r * std::cos(alpha), qy = r * std::sin(alpha);
  const double ex = p2x - p1x, ey = p2y - p1y;
  const double side_q = ex * (qy - p1y) - ey * (qx - p1x);
  const double side_o = ex * (0.0 - p1y) - ey * (0.0 - p1x);
  return side_q * side_o >= 0.0;
}

bool inside_2d(double u, double v, const ShapeSpec& s) {
  const double a = s.axes[0], b = s.axes[1];
  switch (s.kind) {
    case ShapeKind::disk: return u * u + v * v <= a * a;
    case ShapeKind::ellipse: return (u / a) * (u / a) + (v / b) * (v / b) <= 1.0;
    case ShapeKind::square: return std::max(std::abs(u), std::abs(v)) <= a;
    case ShapeKind::bar: return std::abs(u) <= a && std::abs(v) <= b;
    case ShapeKind::star: return inside_star(u, v, s);
    case ShapeKind::superellipse:
      return std::pow(std::abs(u / a), s.exponent) + std::pow(std::abs(v / b), s.exponent) <= 1.0;
    default: return false;
  }
}

bool inside_3d(double x, double y, double z, const ShapeSpec& s) {
  const double a = s.axes[0], b = s.axes[1], c = s.axes[2];
  switch (s.kind) {
    case ShapeKind::sphere: return x * x + y * y + z * z <= a * a;
    case ShapeKind::spheroid: return (x / a) * (x / a) + (y / b) * (y / b) + (z / c) * (z / c) <= 1.0;
    case ShapeKind::box: return std::abs(x) <= a && std::abs(y) <= b && std::abs(z) <= c;
    default: return false;
  }
}

// Keep only the largest connected component of `value` inside `grid`.
template <std::size_t Rank>
void keep_largest(LabelField<Rank>& grid, std::uint32_t value, const BoundingBox<Rank>& box) {
  auto local = crop(grid, box);
  Mask<Rank> mask(local.shape(), 0);
  for (std::size_t i = 0; i < local.size(); ++i) mask[i] = local[i] == value;
  const auto comps = label_components(mask);
  std::vector<std::size_t> sizes(static_cast<std::size_t>(max_label(comps)) + 1, 0);
  for (std::uint32_t c : comps.data()) ++sizes[c];
  if (sizes.size() <= 2) return;
  const auto best = static_cast<std::uint32_t>(
      std::max_element(sizes.begin() + 1, sizes.end()) - sizes.begin());
  for (std::size_t i = 0; i < local.size(); ++i) {
    if (comps[i] == 0 || comps[i] == best) continue;
    auto c = local.coord(i);
    for (std::size_t d = 0; d < Rank; ++d) c[d] += box.min[d];
    grid.set(c, 0);
  }
}

// Paint a blob into `grid` with `value`; returns its bounding box.
template <std::size_t Rank>
BoundingBox<Rank> paint_blob(LabelField<Rank>& grid, const std::array<double, 3>& center,
                             double radius, double roughness, std::uint64_t seed,
                             std::uint32_t value) {
  const double reach = radius * (1.0 + roughness) + 1.0;
  BoundingBox<Rank> box;
  // center is (x, y, z); grid axes are (z,) y, x.
  for (std::size_t d = 0; d < Rank; ++d) {
    const double c = center[Rank - 1 - d];
    const double lo = std::max(0.0, std::floor(c - reach));
    const double hi = std::min(static_cast<double>(grid.shape()[d] - 1), std::ceil(c + reach));
    box.min[d] = static_cast<std::size_t>(lo);
    box.max[d] = static_cast<std::size_t>(hi);
  }
  bool any = false;
  std::array<std::size_t, Rank> c = box.min;
  while (true) {
    double p[3] = {0.0, 0.0, 0.0};  // (x, y, z) relative to center
    for (std::size_t d = 0; d < Rank; ++d)
      p[Rank - 1 - d] = static_cast<double>(c[d]) - center[Rank - 1 - d];
    const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    bool inside = r == 0.0;
    if (!inside)
      inside = r <= blob_radius(radius, roughness, seed, p[0] / r, p[1] / r, p[2] / r);
    if (inside) {
      grid.set(c, value);
      any = true;
    }
    std::size_t d = Rank;
    while (d-- > 0) {
      if (++c[d] <= box.max[d]) break;
      c[d] = box.min[d];
    }
    if (d == static_cast<std::size_t>(-1)) break;
  }
  if (any) keep_largest(grid, value, box);
  return box;
}

template <std::size_t Rank>
typename Mask<Rank>::Shape canvas_shape(const ShapeSpec& spec) {
  if (spec.canvas.size() != Rank)
    throw InvalidArgument("canvas rank " + std::to_string(spec.canvas.size()) + " does not match " +
                          to_string(spec.kind) + " (" + std::to_string(Rank) + "D)");
  typename Mask<Rank>::Shape shape{};
  for (std::size_t d = 0; d < Rank; ++d) shape[d] = spec.canvas[d];
  return shape;
}

void validate(const ShapeSpec& s) {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  const std::size_t rank = shape_rank(s.kind).value_or(s.canvas.size());
  for (std::size_t d = 0; d < std::min<std::size_t>(rank, 3); ++d)
    if (!positive(s.axes[d]) && s.kind != ShapeKind::disk && s.kind != ShapeKind::sphere &&
        s.kind != ShapeKind::square && s.kind != ShapeKind::star && s.kind != ShapeKind::blob)
      throw InvalidArgument("shape axes must be positive");
  if (!positive(s.axes[0])) throw InvalidArgument("shape size must be positive");
  if (s.kind == ShapeKind::star) {
    if (s.spikes < 3) throw InvalidArgument("star needs at least 3 spikes");
    if (!positive(s.inner_radius) || s.inner_radius >= s.axes[0])
      throw InvalidArgument("star inner radius must be in (0, outer radius)");
  }
  if (s.kind == ShapeKind::superellipse && !positive(s.exponent))
    throw InvalidArgument("superellipse exponent must be positive");
  if (s.kind == ShapeKind::blob && (s.roughness < 0.0 || s.roughness >= 1.0))
    throw InvalidArgument("blob roughness must be in [0, 1)");
}

}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix(state_);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t SplitMix64::below(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("empty range");
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v = next();
  while (v >= limit) v = next();
  return v % n;
}

std::string to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::disk: return "disk";
    case ShapeKind::ellipse: return "ellipse";
    case ShapeKind::square: return "square";
    case ShapeKind::bar: return "bar";
    case ShapeKind::star: return "star";
    case ShapeKind::superellipse: return "superellipse";
    case ShapeKind::sphere: return "sphere";
    case ShapeKind::spheroid: return "spheroid";
    case ShapeKind::box: return "box";
    case ShapeKind::blob: return "blob";
  }
  return "unknown";
}

ShapeKind parse_shape_kind(const std::string& name) {
  for (auto k : {ShapeKind::disk, ShapeKind::ellipse, ShapeKind::square, ShapeKind::bar,
                 ShapeKind::star, ShapeKind::superellipse, ShapeKind::sphere, ShapeKind::spheroid,
                 ShapeKind::box, ShapeKind::blob})
    if (to_string(k) == name) return k;
  throw InvalidArgument("unknown shape kind '" + name + "'");
}

std::optional<std::size_t> shape_rank(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::sphere:
    case ShapeKind::spheroid:
    case ShapeKind::box: return 3;
    case ShapeKind::blob: return std::nullopt;
    default: return 2;
  }
}

template <std::size_t Rank>
Mask<Rank> rasterize(const ShapeSpec& spec) {
  validate(spec);
  if (const auto r = shape_rank(spec.kind); r && *r != Rank)
    throw InvalidArgument(to_string(spec.kind) + " is a " + std::to_string(*r) + "D shape");
  const auto shape = canvas_shape<Rank>(spec);

  // Center in (x, y, z).
  std::array<double, 3> center{0.0, 0.0, 0.0};
  for (std::size_t d = 0; d < Rank; ++d)
    center[Rank - 1 - d] = (static_cast<double>(shape[d]) - 1.0) / 2.0 + spec.offset[Rank - 1 - d];

  Mask<Rank> out(shape, 0);
  if (spec.kind == ShapeKind::blob) {
    LabelField<Rank> tmp(shape, 0);
    paint_blob(tmp, center, spec.axes[0], spec.roughness, spec.seed, 1u);
    for (std::size_t i = 0; i < tmp.size(); ++i) out[i] = tmp[i] ? 1 : 0;
  } else {
    const double cs = std::cos(spec.rotation), sn = std::sin(spec.rotation);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto c = out.coord(i);
      double p[3] = {0.0, 0.0, 0.0};
      for (std::size_t d = 0; d < Rank; ++d)
        p[Rank - 1 - d] = static_cast<double>(c[d]) - center[Rank - 1 - d];
      bool inside = false;
      if constexpr (Rank == 2) {
        const double u = cs * p[0] + sn * p[1];
        const double v = -sn * p[0] + cs * p[1];
        inside = inside_2d(u, v, spec);
      } else {
        inside = inside_3d(p[0], p[1], p[2], spec);
      }
      out[i] = inside ? 1 : 0;
    }
  }

  bool any = false;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!out[i]) continue;
    any = true;
    const auto c = out.coord(i);
    for (std::size_t d = 0; d < Rank; ++d)
      if (c[d] == 0 || c[d] + 1 == shape[d])
        throw InvalidArgument(to_string(spec.kind) + " does not fit inside the canvas with a margin");
  }
  if (!any) throw InvalidArgument(to_string(spec.kind) + " covers no element centre");
  return out;
}

double ellipse_perimeter(double a, double b) {
  // Trapezoid rule on a smooth periodic integrand converges geometrically.
  constexpr int n = 4096;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * i / n;
    sum += std::hypot(a * std::sin(t), b * std::cos(t));
  }
  return sum * 2.0 * kPi / n;
}

double ellipsoid_surface_area(double a, double b, double c) {
  // Gauss-Legendre in theta (computed by Newton on P_n), trapezoid in phi.
  constexpr int nt = 96, np = 256;
  std::vector<double> nodes(nt), weights(nt);
  for (int i = 0; i < nt; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (nt + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= nt; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      const double dp = nt * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        break;
      }
    }
  }
  double sum = 0.0;
  for (int i = 0; i < nt; ++i) {
    const double theta = kPi / 2.0 * (nodes[i] + 1.0);
    const double st = std::sin(theta), ct = std::cos(theta);
    double inner = 0.0;
    for (int j = 0; j < np; ++j) {
      const double phi = 2.0 * kPi * j / np;
      const double cp = std::cos(phi), sp = std::sin(phi);
      inner += st * std::sqrt(b * b * c * c * st * st * cp * cp + a * a * c * c * st * st * sp * sp +
                              a * a * b * b * ct * ct);
    }
    sum += weights[i] * inner * 2.0 * kPi / np;
  }
  return sum * kPi / 2.0;
}

GroundTruth ground_truth(const ShapeSpec& spec) {
  validate(spec);
  GroundTruth g;
  const double a = spec.axes[0], b = spec.axes[1], c = spec.axes[2];
  auto planar = [&](double perimeter, double area) {
    g.available = true;
    g.measure = perimeter;
    g.size = area;
    g.sphericity = sphericity_from_perimeter(area, perimeter);
  };
  auto solid = [&](double surface, double volume) {
    g.available = true;
    g.measure = surface;
    g.size = volume;
    g.sphericity = sphericity_from_area(volume, surface);
  };
  auto ratio = [](std::array<double, 3> v, std::size_t n) {
    std::sort(v.begin(), v.begin() + static_cast<long>(n), std::greater<>());
    return v[1] / v[0];
  };

  switch (spec.kind) {
    case ShapeKind::disk:
      planar(2.0 * kPi * a, kPi * a * a);
      g.sphericity = 1.0;
      g.roundness = 1.0;
      g.sphericity_wl = 1.0;
      break;
    case ShapeKind::ellipse:
      planar(ellipse_perimeter(a, b), kPi * a * b);
      g.sphericity_wl = ratio({a, b, 0.0}, 2);
      break;
    case ShapeKind::square:
      planar(8.0 * a, 4.0 * a * a);
      g.sphericity_wl = 1.0;
      break;
    case ShapeKind::bar:
      planar(4.0 * (a + b), 4.0 * a * b);
      g.sphericity_wl = ratio({a, b, 0.0}, 2);
      break;
    case ShapeKind::star: {
      const double k = spec.spikes;
      const double r = spec.inner_radius;
      if (spec.rounded) {
        constexpr int n = 8192;
        double perimeter = 0.0, area = 0.0;
        for (int i = 0; i < n; ++i) {
          const double phi = 2.0 * kPi * i / n;
          const double rho = r + (a - r) * (0.5 + 0.5 * std::cos(k * phi));
          const double drho = -(a - r) * 0.5 * k * std::sin(k * phi);
          perimeter += std::hypot(rho, drho);
          area += 0.5 * rho * rho;
        }
        planar(perimeter * 2.0 * kPi / n, area * 2.0 * kPi / n);
      } else {
        const double half = kPi / k;
        const double edge = std::hypot(a - r * std::cos(half), r * std::sin(half));
        planar(2.0 * k * edge, k * a * r * std::sin(half));
      }
      g.sphericity_wl = 1.0;
      break;
    }
    case ShapeKind::superellipse: {
      constexpr int n = 20000;
      double perimeter = 0.0;
      auto point = [&](double t) {
        const double ct = std::cos(t), st = std::sin(t);
        return std::array<double, 2>{a * std::copysign(std::pow(std::abs(ct), 2.0 / spec.exponent), ct),
                                     b * std::copysign(std::pow(std::abs(st), 2.0 / spec.exponent), st)};
      };
      auto prev = point(0.0);
      for (int i = 1; i <= n; ++i) {
        const auto cur = point(2.0 * kPi * i / n);
        perimeter += std::hypot(cur[0] - prev[0], cur[1] - prev[1]);
        prev = cur;
      }
      const double e = spec.exponent;
      const double area = 4.0 * a * b * std::tgamma(1.0 + 1.0 / e) * std::tgamma(1.0 + 1.0 / e) /
                          std::tgamma(1.0 + 2.0 / e);
      planar(perimeter, area);
      if (a == b) g.sphericity_wl = 1.0;
      break;
    }
    case ShapeKind::sphere:
      solid(4.0 * kPi * a * a, 4.0 / 3.0 * kPi * a * a * a);
      g.sphericity = 1.0;
      g.roundness = 1.0;
      g.sphericity_wl = 1.0;
      break;
    case ShapeKind::spheroid: {
      double surface = 0.0;
      if (a == b)
        surface = spheroid_surface_area(a, c);
      else if (a == c)
        surface = spheroid_surface_area(a, b);
      else if (b == c)
        surface = spheroid_surface_area(b, a);
      else
        surface = ellipsoid_surface_area(a, b, c);
      solid(surface, 4.0 / 3.0 * kPi * a * b * c);
      g.sphericity_wl = ratio({a, b, c}, 3);
      break;
    }
    case ShapeKind::box:
      solid(8.0 * (a * b + b * c + c * a), 8.0 * a * b * c);
      g.sphericity_wl = ratio({a, b, c}, 3);
      break;
    case ShapeKind::blob:
      break;
  }
  return g;
}

template <std::size_t Rank>
Mask<Rank> random_blob_mask(const typename Mask<Rank>::Shape& shape, std::uint64_t seed,
                            int smoothing, double fill) {
  if (smoothing < 0) throw InvalidArgument("smoothing must be nonnegative");
  if (!(fill > 0.0 && fill < 1.0)) throw InvalidArgument("fill must be in (0, 1)");
  Grid<double, Rank> field(shape, 0.0);
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < field.size(); ++i) field[i] = rng.uniform();

  // Two rounds of separable box filtering (clamped at the border).
  for (int round = 0; round < 2 && smoothing > 0; ++round)
    for (std::size_t axis = 0; axis < Rank; ++axis) {
      Grid<double, Rank> next(shape, 0.0);
      for (std::size_t i = 0; i < field.size(); ++i) {
        auto c = field.coord(i);
        const long pos = static_cast<long>(c[axis]);
        double sum = 0.0;
        int n = 0;
        for (long o = -smoothing; o <= smoothing; ++o) {
          const long q = pos + o;
          if (q < 0 || q >= static_cast<long>(shape[axis])) continue;
          c[axis] = static_cast<std::size_t>(q);
          sum += field.get(c);
          ++n;
        }
        next[i] = sum / n;
      }
      field = std::move(next);
    }

  std::vector<double> sorted(field.values());
  const auto cut = static_cast<std::size_t>((1.0 - fill) * static_cast<double>(sorted.size()));
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(std::min(cut, sorted.size() - 1)),
                   sorted.end());
  const double threshold = sorted[std::min(cut, sorted.size() - 1)];
  Mask<Rank> out(shape, 0);
  for (std::size_t i = 0; i < field.size(); ++i) out[i] = field[i] > threshold ? 1 : 0;
  return out;
}

template <std::size_t Rank>
LabelField<Rank> blob_field(const typename LabelField<Rank>::Shape& shape, std::size_t count,
                            double min_radius, double max_radius, std::uint64_t seed, double gap) {
  if (!(min_radius > 0.0) || max_radius < min_radius)
    throw InvalidArgument("blob radii must satisfy 0 < min <= max");
  constexpr double roughness = 0.3;
  SplitMix64 rng(seed);
  struct Placed {
    std::array<double, 3> center;
    double reach;
  };
  std::vector<Placed> placed;
  LabelField<Rank> out(shape, 0);
  for (std::size_t i = 0; i < count; ++i) {
    bool ok = false;
    for (int attempt = 0; attempt < 20000 && !ok; ++attempt) {
      const double radius = min_radius + (max_radius - min_radius) * rng.uniform();
      const double reach = radius * (1.0 + roughness) + 1.0;
      std::array<double, 3> center{0.0, 0.0, 0.0};
      bool fits = true;
      for (std::size_t d = 0; d < Rank; ++d) {
        const double span = static_cast<double>(shape[d]) - 1.0 - 2.0 * reach;
        if (span < 0.0) fits = false;
        center[Rank - 1 - d] = reach + std::max(0.0, span) * rng.uniform();
      }
      if (!fits) continue;
      ok = std::all_of(placed.begin(), placed.end(), [&](const Placed& p) {
        double s = 0.0;
        for (int d = 0; d < 3; ++d) s += (p.center[d] - center[d]) * (p.center[d] - center[d]);
        return std::sqrt(s) >= p.reach + reach + gap;
      });
      if (ok) {
        placed.push_back({center, reach});
        paint_blob(out, center, radius, roughness, seed + 1000003ULL * (i + 1),
                   static_cast<std::uint32_t>(i + 1));
      }
    }
    if (!ok)
      throw InvalidArgument("could not place blob " + std::to_string(i + 1) + " of " +
                            std::to_string(count));
  }
  return out;
}

template Mask<2> rasterize<2>(const ShapeSpec&);
template Mask<3> rasterize<3>(const ShapeSpec&);
template Mask<2> random_blob_mask<2>(const Mask<2>::Shape&, std::uint64_t, int, double);
template Mask<3> random_blob_mask<3>(const Mask<3>::Shape&, std::uint64_t, int, double);
template LabelField<2> blob_field<2>(const LabelField<2>::Shape&, std::size_t, double, double,
                                     std::uint64_t, double);
template LabelField<3> blob_field<3>(const LabelField<3>::Shape&, std::size_t, double, double,
                                     std::uint64_t, double);

}  // namespace ltshape
