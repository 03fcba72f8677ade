// SPDX-License-Identifier: Apache-2.0
#include "ltshape/edt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ltshape/parallel.hpp"

namespace ltshape {

namespace {

constexpr std::int64_t kUnreached = std::numeric_limits<std::int64_t>::max();

// Lower envelope of the parabolas (p - q)^2 + f[q] over the finite sites of
// `f`; writes the minimum for every p into `out`. Sites equal to kUnreached are
// ignored; if none remain the output is all kUnreached.
class Envelope {
 public:
  explicit Envelope(std::size_t n) : sites_(n), bounds_(n + 1) {}

  void run(const std::int64_t* f, std::int64_t* out, std::size_t n) {
    long k = -1;
    for (std::size_t q = 0; q < n; ++q) {
      if (f[q] == kUnreached) continue;
      if (k < 0) {
        k = 0;
        sites_[0] = q;
        bounds_[0] = -std::numeric_limits<double>::infinity();
        bounds_[1] = std::numeric_limits<double>::infinity();
        continue;
      }
      double s = intersect(f, q, sites_[k]);
      while (s <= bounds_[k]) {
        --k;
        s = intersect(f, q, sites_[k]);
      }
      ++k;
      sites_[k] = q;
      bounds_[k] = s;
      bounds_[k + 1] = std::numeric_limits<double>::infinity();
    }

    if (k < 0) {
      std::fill(out, out + n, kUnreached);
      return;
    }
    long j = 0;
    for (std::size_t p = 0; p < n; ++p) {
      while (bounds_[j + 1] < static_cast<double>(p)) ++j;
      const auto dp = static_cast<std::int64_t>(p) - static_cast<std::int64_t>(sites_[j]);
      out[p] = dp * dp + f[sites_[j]];
    }
  }

 private:
  static double intersect(const std::int64_t* f, std::size_t q, std::size_t v) {
    const auto qi = static_cast<std::int64_t>(q);
    const auto vi = static_cast<std::int64_t>(v);
    const std::int64_t num = (f[q] + qi * qi) - (f[v] + vi * vi);
    return static_cast<double>(num) / static_cast<double>(2 * (qi - vi));
  }

  std::vector<std::size_t> sites_;
  std::vector<double> bounds_;
};

}  // namespace

template <typename T, std::size_t Rank>
Grid<std::int64_t, Rank> squared_edt(const Grid<T, Rank>& mask) {
  const std::size_t nz = mask.depth(), ny = mask.rows(), nx = mask.cols();
  Grid<std::int64_t, Rank> g(mask.shape(), 0);

  std::size_t background = 0;
  for (std::size_t i = 0; i < mask.size(); ++i) background += mask[i] == T{};
  if (background == 0) throw NoBackground();

  // Contiguous axis: two sweeps give the 1D distance to the nearest background.
  parallel_for(0, nz * ny, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t row = lo; row < hi; ++row) {
      const std::size_t base = row * nx;
      std::int64_t last = -1;
      for (std::size_t x = 0; x < nx; ++x) {
        if (mask[base + x] == T{}) {
          last = static_cast<std::int64_t>(x);
          g[base + x] = 0;
        } else {
          g[base + x] = last < 0 ? kUnreached : static_cast<std::int64_t>(x) - last;
        }
      }
      last = -1;
      for (std::size_t x = nx; x-- > 0;) {
        if (mask[base + x] == T{}) {
          last = static_cast<std::int64_t>(x);
        } else if (last >= 0) {
          const std::int64_t d = last - static_cast<std::int64_t>(x);
          if (g[base + x] == kUnreached || d < g[base + x]) g[base + x] = d;
        }
      }
      for (std::size_t x = 0; x < nx; ++x)
        if (g[base + x] != kUnreached) g[base + x] *= g[base + x];
    }
  });

  // Remaining axes: lower envelope along strided lines.
  auto line_pass = [&](std::size_t length, std::size_t stride, std::size_t lines,
                       auto line_start) {
    parallel_for(0, lines, [&](std::size_t lo, std::size_t hi) {
      Envelope env(length);
      std::vector<std::int64_t> in(length), out(length);
      for (std::size_t l = lo; l < hi; ++l) {
        const std::size_t start = line_start(l);
        for (std::size_t i = 0; i < length; ++i) in[i] = g[start + i * stride];
        env.run(in.data(), out.data(), length);
        for (std::size_t i = 0; i < length; ++i) g[start + i * stride] = out[i];
      }
    });
  };

  if (ny > 1)
    line_pass(ny, nx, nz * nx, [&](std::size_t l) { return (l / nx) * ny * nx + l % nx; });
  if (nz > 1) line_pass(nz, ny * nx, ny * nx, [](std::size_t l) { return l; });

  return g;
}

template <typename T, std::size_t Rank>
DistanceField<Rank> edt(const Grid<T, Rank>& mask) {
  const auto g = squared_edt(mask);
  DistanceField<Rank> d(mask.shape(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) d[i] = std::sqrt(static_cast<double>(g[i]));
  return d;
}

template <typename T, std::size_t Rank>
DistanceField<Rank> edt_bruteforce(const Grid<T, Rank>& mask) {
  std::vector<typename Grid<T, Rank>::Coord> background;
  bool any_foreground = false;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i] == T{})
      background.push_back(mask.coord(i));
    else
      any_foreground = true;
  }
  DistanceField<Rank> d(mask.shape(), 0.0);
  if (!any_foreground) return d;
  if (background.empty()) throw NoBackground();

  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i] == T{}) continue;
    const auto p = mask.coord(i);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const auto& q : background) {
      std::int64_t s = 0;
      for (std::size_t a = 0; a < Rank; ++a) {
        const auto diff = static_cast<std::int64_t>(p[a]) - static_cast<std::int64_t>(q[a]);
        s += diff * diff;
      }
      best = std::min(best, s);
    }
    d[i] = std::sqrt(static_cast<double>(best));
  }
  return d;
}

#define LTSHAPE_INSTANTIATE_EDT(T, R)                                        \
  template Grid<std::int64_t, R> squared_edt<T, R>(const Grid<T, R>&);       \
  template DistanceField<R> edt<T, R>(const Grid<T, R>&);                    \
  template DistanceField<R> edt_bruteforce<T, R>(const Grid<T, R>&);

LTSHAPE_INSTANTIATE_EDT(std::uint8_t, 2)
LTSHAPE_INSTANTIATE_EDT(std::uint8_t, 3)
LTSHAPE_INSTANTIATE_EDT(std::uint32_t, 2)
LTSHAPE_INSTANTIATE_EDT(std::uint32_t, 3)

#undef LTSHAPE_INSTANTIATE_EDT

}  // namespace ltshape
