// SPDX-License-Identifier: Apache-2.0
#include "ltshape/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "ltshape/labeling.hpp"

namespace ltshape {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be positive");
}

// Eigenvalues of a symmetric 3x3 matrix, descending.
std::array<double, 3> symmetric_eigenvalues(const std::array<std::array<double, 3>, 3>& m) {
  const double p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
  std::array<double, 3> e{};
  if (p1 == 0.0) {
    e = {m[0][0], m[1][1], m[2][2]};
  } else {
    const double q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    const double p2 = (m[0][0] - q) * (m[0][0] - q) + (m[1][1] - q) * (m[1][1] - q) +
                      (m[2][2] - q) * (m[2][2] - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    std::array<std::array<double, 3>, 3> b{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) b[i][j] = (m[i][j] - (i == j ? q : 0.0)) / p;
    const double det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                       b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                       b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    const double r = std::clamp(det / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    e[0] = q + 2.0 * p * std::cos(phi);
    e[2] = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
    e[1] = 3.0 * q - e[0] - e[2];
  }
  std::sort(e.begin(), e.end(), std::greater<>());
  return e;
}

}  // namespace

double spheroid_eccentricity(double a, double c) {
  require_positive(a, "spheroid semi-axis a");
  require_positive(c, "spheroid semi-axis c");
  if (c < a) return std::sqrt(1.0 - (c * c) / (a * a));
  if (c > a) return std::sqrt(1.0 - (a * a) / (c * c));
  return 0.0;
}

double spheroid_surface_area(double a, double c) {
  const double e = spheroid_eccentricity(a, c);
  if (e == 0.0) return 4.0 * kPi * a * a;
  if (c < a) return 2.0 * kPi * a * a * (1.0 + (1.0 - e * e) / e * std::atanh(e));
  return 2.0 * kPi * a * a * (1.0 + c / (a * e) * std::asin(e));
}

double ramanujan_perimeter(double a, double b) {
  require_positive(a, "ellipse semi-axis a");
  require_positive(b, "ellipse semi-axis b");
  return kPi * (3.0 * (a + b) - std::sqrt((3.0 * a + b) * (a + 3.0 * b)));
}

double sphericity_from_area(double volume, double surface_area) {
  require_positive(volume, "volume");
  require_positive(surface_area, "surface area");
  return std::cbrt(kPi) * std::pow(6.0 * volume, 2.0 / 3.0) / surface_area;
}

double sphericity_from_perimeter(double area, double perimeter) {
  require_positive(area, "area");
  require_positive(perimeter, "perimeter");
  return 2.0 * std::sqrt(kPi * area) / perimeter;
}

Sphericity3D sphericity_3d(double volume, double mean_lt) {
  require_positive(volume, "volume");
  require_positive(mean_lt, "mean local thickness");
  Sphericity3D s;
  s.model.a = mean_lt;
  s.model.c = 3.0 * volume / (4.0 * kPi * mean_lt * mean_lt);
  s.model.eccentricity = spheroid_eccentricity(s.model.a, s.model.c);
  s.surface_area = spheroid_surface_area(s.model.a, s.model.c);
  s.raw = sphericity_from_area(volume, s.surface_area);
  s.value = std::min(1.0, s.raw);
  return s;
}

Sphericity2D sphericity_2d(double area, double mean_lt) {
  require_positive(area, "area");
  require_positive(mean_lt, "mean local thickness");
  Sphericity2D s;
  s.model.a = mean_lt;
  s.model.b = area / (kPi * mean_lt);
  s.model_perimeter = ramanujan_perimeter(s.model.a, s.model.b);
  s.circle_perimeter = 2.0 * std::sqrt(kPi * area);
  s.raw = s.circle_perimeter / s.model_perimeter;
  s.value = std::min(1.0, s.raw);
  return s;
}

double roundness_lt(double boundary_mean_lt, double max_lt) {
  require_positive(boundary_mean_lt, "boundary mean local thickness");
  require_positive(max_lt, "maximum local thickness");
  if (boundary_mean_lt > max_lt * (1.0 + 1e-12))
    throw InconsistencyError("boundary mean local thickness " + std::to_string(boundary_mean_lt) +
                             " exceeds maximum " + std::to_string(max_lt));
  return std::min(boundary_mean_lt, max_lt) / max_lt;
}

template <std::size_t Rank>
std::vector<std::pair<std::uint32_t, double>> sphericity_wl(const LabelField<Rank>& labels) {
  struct Moments {
    std::size_t n = 0;
    std::array<double, Rank> ref{};
    std::array<double, Rank> sum{};
    std::array<std::array<double, Rank>, Rank> outer{};
  };
  std::vector<Moments> acc(static_cast<std::size_t>(max_label(labels)) + 1);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::uint32_t l = labels[i];
    if (l == 0) continue;
    auto& m = acc[l];
    const auto c = labels.coord(i);
    if (m.n == 0)
      for (std::size_t d = 0; d < Rank; ++d) m.ref[d] = static_cast<double>(c[d]);
    std::array<double, Rank> v{};
    for (std::size_t d = 0; d < Rank; ++d) v[d] = static_cast<double>(c[d]) - m.ref[d];
    ++m.n;
    for (std::size_t a = 0; a < Rank; ++a) {
      m.sum[a] += v[a];
      for (std::size_t b = 0; b < Rank; ++b) m.outer[a][b] += v[a] * v[b];
    }
  }

  std::vector<std::pair<std::uint32_t, double>> out;
  for (std::uint32_t l = 1; l < acc.size(); ++l) {
    const auto& m = acc[l];
    if (m.n == 0) continue;
    const double n = static_cast<double>(m.n);
    std::array<std::array<double, 3>, 3> cov{};
    for (std::size_t a = 0; a < Rank; ++a)
      for (std::size_t b = 0; b < Rank; ++b)
        cov[a][b] = m.outer[a][b] / n - (m.sum[a] / n) * (m.sum[b] / n) + (a == b ? 1.0 / 12.0 : 0.0);
    double major = 0.0, minor = 0.0;
    if constexpr (Rank == 2) {
      const double tr = cov[0][0] + cov[1][1];
      const double det = cov[0][0] * cov[1][1] - cov[0][1] * cov[1][0];
      const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
      major = tr / 2.0 + disc;
      minor = tr / 2.0 - disc;
    } else {
      const auto e = symmetric_eigenvalues(cov);
      major = e[0];
      minor = e[1];
    }
    const double ratio = major > 0.0 ? std::sqrt(std::max(0.0, minor) / major) : 1.0;
    out.emplace_back(l, std::clamp(ratio, 0.0, 1.0));
  }
  return out;
}

template std::vector<std::pair<std::uint32_t, double>> sphericity_wl<2>(const LabelField<2>&);
template std::vector<std::pair<std::uint32_t, double>> sphericity_wl<3>(const LabelField<3>&);

}  // namespace ltshape
