// SPDX-License-Identifier: Apache-2.0
#include "ltshape/mesh.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <unordered_map>

#include "ltshape/labeling.hpp"
#include "ltshape/metrics.hpp"
#include "ltshape/parallel.hpp"
#include "mc_tables.hpp"

namespace ltshape {

namespace {

using detail::kCornerOffset;
using detail::kEdgeCorners;
using detail::kTriangleTable;

using Point3 = std::array<double, 3>;

// Binary copy with one background layer on every side.
template <typename T>
std::vector<std::uint8_t> padded_binary(const Grid3D<T>& mask, std::size_t& pz, std::size_t& py,
                                        std::size_t& px) {
  pz = mask.depth() + 2;
  py = mask.rows() + 2;
  px = mask.cols() + 2;
  std::vector<std::uint8_t> out(pz * py * px, 0);
  for (std::size_t z = 0; z < mask.depth(); ++z)
    for (std::size_t y = 0; y < mask.rows(); ++y) {
      const std::size_t src = (z * mask.rows() + y) * mask.cols();
      const std::size_t dst = ((z + 1) * py + (y + 1)) * px + 1;
      for (std::size_t x = 0; x < mask.cols(); ++x) out[dst + x] = mask[src + x] != T{} ? 1 : 0;
    }
  return out;
}

Point3 edge_midpoint(int edge) {
  const auto& a = kCornerOffset[kEdgeCorners[edge][0]];
  const auto& b = kCornerOffset[kEdgeCorners[edge][1]];
  return {(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0, (a[2] + b[2]) / 2.0};
}

double triangle_area(const Point3& a, const Point3& b, const Point3& c) {
  const Point3 u{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
  const Point3 v{c[0] - a[0], c[1] - a[1], c[2] - a[2]};
  const Point3 n{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
  return 0.5 * std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
}

// With midpoint crossings every case contributes a fixed area.
const std::array<double, 256>& case_areas() {
  static const std::array<double, 256> table = [] {
    std::array<double, 256> t{};
    for (int c = 0; c < 256; ++c)
      for (int k = 0; kTriangleTable[c][k] != -1; k += 3)
        t[c] += triangle_area(edge_midpoint(kTriangleTable[c][k]),
                              edge_midpoint(kTriangleTable[c][k + 1]),
                              edge_midpoint(kTriangleTable[c][k + 2]));
    return t;
  }();
  return table;
}

// Marching squares corners: 0 (0,0) 1 (1,0) 2 (1,1) 3 (0,1) in (x, y); bit set
// when the corner is inside. Edges: 0 bottom, 1 right, 2 top, 3 left.
constexpr int kSquareSegments[16][4] = {
    {-1, -1, -1, -1}, {3, 0, -1, -1}, {0, 1, -1, -1}, {3, 1, -1, -1},
    {1, 2, -1, -1},   {3, 0, 1, 2},   {0, 2, -1, -1}, {3, 2, -1, -1},
    {2, 3, -1, -1},   {0, 2, -1, -1}, {0, 1, 2, 3},   {1, 2, -1, -1},
    {1, 3, -1, -1},   {0, 1, -1, -1}, {3, 0, -1, -1}, {-1, -1, -1, -1}};

constexpr double kSquareMid[4][2] = {{0.5, 0.0}, {1.0, 0.5}, {0.5, 1.0}, {0.0, 0.5}};

const std::array<double, 16>& square_case_lengths() {
  static const std::array<double, 16> table = [] {
    std::array<double, 16> t{};
    for (int c = 0; c < 16; ++c)
      for (int k = 0; k < 4 && kSquareSegments[c][k] != -1; k += 2) {
        const auto& a = kSquareMid[kSquareSegments[c][k]];
        const auto& b = kSquareMid[kSquareSegments[c][k + 1]];
        t[c] += std::hypot(a[0] - b[0], a[1] - b[1]);
      }
    return t;
  }();
  return table;
}

template <typename T>
std::vector<std::uint8_t> padded_binary_2d(const Grid2D<T>& mask, std::size_t& py,
                                           std::size_t& px) {
  py = mask.rows() + 2;
  px = mask.cols() + 2;
  std::vector<std::uint8_t> out(py * px, 0);
  for (std::size_t y = 0; y < mask.rows(); ++y)
    for (std::size_t x = 0; x < mask.cols(); ++x)
      out[(y + 1) * px + x + 1] = mask[y * mask.cols() + x] != T{} ? 1 : 0;
  return out;
}

}  // namespace

double ContourSet::length() const {
  double total = 0.0;
  for (const auto& s : segments) total += std::hypot(s[1][0] - s[0][0], s[1][1] - s[0][1]);
  return total;
}

double SurfaceMesh::area() const {
  double total = 0.0;
  for (const auto& t : triangles) total += triangle_area(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
  return total;
}

bool SurfaceMesh::is_closed() const {
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> uses;
  for (const auto& t : triangles)
    for (int k = 0; k < 3; ++k) {
      auto a = t[k], b = t[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      ++uses[{a, b}];
    }
  for (const auto& [edge, n] : uses)
    if (n != 2) return false;
  return true;
}

template <typename T>
ContourSet marching_squares(const Grid2D<T>& mask) {
  std::size_t py = 0, px = 0;
  const auto v = padded_binary_2d(mask, py, px);
  ContourSet out;
  for (std::size_t y = 0; y + 1 < py; ++y)
    for (std::size_t x = 0; x + 1 < px; ++x) {
      const int c = v[y * px + x] | (v[y * px + x + 1] << 1) | (v[(y + 1) * px + x + 1] << 2) |
                    (v[(y + 1) * px + x] << 3);
      // Padded cell (x, y) has its origin at grid position (x - 1, y - 1).
      const double ox = static_cast<double>(x) - 1.0, oy = static_cast<double>(y) - 1.0;
      for (int k = 0; k < 4 && kSquareSegments[c][k] != -1; k += 2) {
        const auto& a = kSquareMid[kSquareSegments[c][k]];
        const auto& b = kSquareMid[kSquareSegments[c][k + 1]];
        out.segments.push_back({{{ox + a[0], oy + a[1]}, {ox + b[0], oy + b[1]}}});
      }
    }
  return out;
}

template <typename T>
double marching_squares_perimeter(const Grid2D<T>& mask) {
  std::size_t py = 0, px = 0;
  const auto v = padded_binary_2d(mask, py, px);
  const auto& lengths = square_case_lengths();
  double total = 0.0;
  for (std::size_t y = 0; y + 1 < py; ++y)
    for (std::size_t x = 0; x + 1 < px; ++x) {
      const int c = v[y * px + x] | (v[y * px + x + 1] << 1) | (v[(y + 1) * px + x + 1] << 2) |
                    (v[(y + 1) * px + x] << 3);
      total += lengths[c];
    }
  return total;
}

template <typename T>
SurfaceMesh marching_cubes(const Grid3D<T>& mask) {
  std::size_t pz = 0, py = 0, px = 0;
  const auto v = padded_binary(mask, pz, py, px);
  SurfaceMesh mesh;
  std::unordered_map<std::uint64_t, std::uint32_t> vertex_of_edge;

  for (std::size_t z = 0; z + 1 < pz; ++z)
    for (std::size_t y = 0; y + 1 < py; ++y)
      for (std::size_t x = 0; x + 1 < px; ++x) {
        int c = 0;
        for (int k = 0; k < 8; ++k) {
          const auto& o = kCornerOffset[k];
          if (!v[((z + o[2]) * py + (y + o[1])) * px + (x + o[0])]) c |= 1 << k;
        }
        if (c == 0 || c == 255) continue;
        std::uint32_t ids[3];
        for (int k = 0; kTriangleTable[c][k] != -1; k += 3) {
          for (int j = 0; j < 3; ++j) {
            const int edge = kTriangleTable[c][k + j];
            const auto& a = kCornerOffset[kEdgeCorners[edge][0]];
            const auto& b = kCornerOffset[kEdgeCorners[edge][1]];
            // Key the edge by its lower endpoint and axis.
            const std::size_t lx = x + std::min(a[0], b[0]), ly = y + std::min(a[1], b[1]),
                              lz = z + std::min(a[2], b[2]);
            const int axis = a[0] != b[0] ? 0 : (a[1] != b[1] ? 1 : 2);
            const std::uint64_t key = ((lz * py + ly) * px + lx) * 3 + static_cast<std::uint64_t>(axis);
            auto [it, inserted] =
                vertex_of_edge.try_emplace(key, static_cast<std::uint32_t>(mesh.vertices.size()));
            if (inserted) {
              const Point3 m = edge_midpoint(edge);
              mesh.vertices.push_back({static_cast<double>(x) - 1.0 + m[0],
                                       static_cast<double>(y) - 1.0 + m[1],
                                       static_cast<double>(z) - 1.0 + m[2]});
            }
            ids[j] = it->second;
          }
          mesh.triangles.push_back({ids[0], ids[1], ids[2]});
        }
      }
  return mesh;
}

template <typename T>
double marching_cubes_area(const Grid3D<T>& mask) {
  std::size_t pz = 0, py = 0, px = 0;
  const auto v = padded_binary(mask, pz, py, px);
  const auto& areas = case_areas();
  const std::size_t plane = py * px;
  double total = 0.0;
  for (std::size_t z = 0; z + 1 < pz; ++z)
    for (std::size_t y = 0; y + 1 < py; ++y) {
      const std::uint8_t* r00 = &v[z * plane + y * px];
      const std::uint8_t* r10 = r00 + px;
      const std::uint8_t* r01 = r00 + plane;
      const std::uint8_t* r11 = r01 + px;
      for (std::size_t x = 0; x + 1 < px; ++x) {
        const int inside = r00[x] | (r00[x + 1] << 1) | (r10[x + 1] << 2) | (r10[x] << 3) |
                           (r01[x] << 4) | (r01[x + 1] << 5) | (r11[x + 1] << 6) | (r11[x] << 7);
        total += areas[inside ^ 0xff];
      }
    }
  return total;
}

void write_off(const SurfaceMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot open " + path.string() + " for writing");
  out << "OFF\n" << mesh.vertices.size() << ' ' << mesh.triangles.size() << " 0\n";
  out.precision(9);
  for (const auto& p : mesh.vertices) out << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
  for (const auto& t : mesh.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

template <typename T, std::size_t Rank>
double mesh_measure(const Grid<T, Rank>& mask) {
  if constexpr (Rank == 2)
    return marching_squares_perimeter(mask);
  else
    return marching_cubes_area(mask);
}

template <std::size_t Rank>
std::vector<std::pair<std::uint32_t, double>> sphericity_mc(const LabelField<Rank>& labels) {
  const auto records = object_records(labels, ThicknessField<Rank>{});
  std::vector<std::pair<std::uint32_t, double>> out(records.size());
  parallel_for(0, records.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const auto& r = records[k];
      auto local = crop(labels, r.bbox, 1);
      Mask<Rank> mask(local.shape(), 0);
      for (std::size_t i = 0; i < local.size(); ++i) mask[i] = local[i] == r.label ? 1 : 0;
      const double measure = mesh_measure(mask);
      const double v = static_cast<double>(r.volume);
      out[k] = {r.label, Rank == 2 ? sphericity_from_perimeter(v, measure)
                                   : sphericity_from_area(v, measure)};
    }
  });
  return out;
}

template ContourSet marching_squares<std::uint8_t>(const Grid2D<std::uint8_t>&);
template ContourSet marching_squares<std::uint32_t>(const Grid2D<std::uint32_t>&);
template double marching_squares_perimeter<std::uint8_t>(const Grid2D<std::uint8_t>&);
template double marching_squares_perimeter<std::uint32_t>(const Grid2D<std::uint32_t>&);
template SurfaceMesh marching_cubes<std::uint8_t>(const Grid3D<std::uint8_t>&);
template SurfaceMesh marching_cubes<std::uint32_t>(const Grid3D<std::uint32_t>&);
template double marching_cubes_area<std::uint8_t>(const Grid3D<std::uint8_t>&);
template double marching_cubes_area<std::uint32_t>(const Grid3D<std::uint32_t>&);
template double mesh_measure<std::uint8_t, 2>(const Grid2D<std::uint8_t>&);
template double mesh_measure<std::uint8_t, 3>(const Grid3D<std::uint8_t>&);
template double mesh_measure<std::uint32_t, 2>(const Grid2D<std::uint32_t>&);
template double mesh_measure<std::uint32_t, 3>(const Grid3D<std::uint32_t>&);
template std::vector<std::pair<std::uint32_t, double>> sphericity_mc<2>(const LabelField<2>&);
template std::vector<std::pair<std::uint32_t, double>> sphericity_mc<3>(const LabelField<3>&);

}  // namespace ltshape
