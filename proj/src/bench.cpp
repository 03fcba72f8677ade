// SPDX-License-Identifier: Apache-2.0
#include "ltshape/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "ltshape/analysis.hpp"
#include "ltshape/labeling.hpp"
#include "ltshape/mesh.hpp"
#include "ltshape/metrics.hpp"
#include "ltshape/parallel.hpp"

namespace ltshape {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

class ThreadScope {
 public:
  explicit ThreadScope(unsigned threads) : saved_(thread_count_setting()) { set_thread_count(threads); }
  ~ThreadScope() { set_thread_count(saved_); }
  ThreadScope(const ThreadScope&) = delete;
  ThreadScope& operator=(const ThreadScope&) = delete;

 private:
  unsigned saved_;
};

struct Moments {
  double mean = 0.0;
  double std = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return m;
}

MetricSet lt_metrics(BenchMethod method) {
  MetricSet m{false, false, false, false};
  m.sphericity = method == BenchMethod::lt_sphericity || method == BenchMethod::lt_both;
  m.roundness = method == BenchMethod::lt_roundness || method == BenchMethod::lt_both;
  return m;
}

// Keeps results observable so no pass can be elided.
volatile double g_sink = 0.0;

}  // namespace

std::string to_string(BenchMethod method) {
  switch (method) {
    case BenchMethod::lt_sphericity: return "lt_sphericity";
    case BenchMethod::lt_roundness: return "lt_roundness";
    case BenchMethod::lt_both: return "lt_both";
    case BenchMethod::mc_sphericity: return "mc_sphericity";
  }
  return "?";
}

BenchMethod parse_bench_method(const std::string& name) {
  for (auto m : all_bench_methods())
    if (to_string(m) == name) return m;
  throw InvalidArgument("unknown bench method '" + name + "'");
}

std::vector<BenchMethod> all_bench_methods() {
  return {BenchMethod::lt_sphericity, BenchMethod::lt_roundness, BenchMethod::lt_both,
          BenchMethod::mc_sphericity};
}

std::string SpeedReport::format_csv() const {
  std::string out = variable + ",method,threads,mean_seconds,std_seconds,repeats\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%zu,%s,%u,%.6g,%.6g,%zu\n", r.value, to_string(r.method).c_str(),
                  r.threads, r.mean_seconds, r.std_seconds, r.repeats);
    out += buf;
  }
  return out;
}

template <std::size_t Rank>
double time_method(const LabelField<Rank>& labels, BenchMethod method, ThicknessMethod lt_method) {
  const auto t0 = Clock::now();
  if (method == BenchMethod::mc_sphericity) {
    const auto s = sphericity_mc(labels);
    g_sink = g_sink + static_cast<double>(s.size());
  } else {
    AnalyzeOptions opts;
    opts.metrics = lt_metrics(method);
    opts.method = lt_method;
    const auto a = analyze(labels, opts);
    g_sink = g_sink + static_cast<double>(a.metrics.size());
  }
  return seconds_since(t0);
}

std::vector<std::size_t> log_spaced_counts(std::size_t max, std::size_t n) {
  if (max == 0 || n == 0) return {};
  std::vector<std::size_t> out;
  const double top = std::log(static_cast<double>(max));
  for (std::size_t i = 0; i < n; ++i) {
    const double t = n == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    const auto v = static_cast<std::size_t>(std::llround(std::exp(t * top)));
    const std::size_t c = std::clamp<std::size_t>(v, 1, max);
    if (out.empty() || out.back() != c) out.push_back(c);
  }
  return out;
}

std::vector<std::uint32_t> sample_labels(std::uint32_t k, std::size_t count, SplitMix64& rng) {
  if (count > k) throw InvalidArgument("cannot sample more labels than present");
  std::vector<std::uint32_t> pool(k);
  for (std::uint32_t i = 0; i < k; ++i) pool[i] = i + 1;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(k - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

template <std::size_t Rank>
LabelField<Rank> restrict_to_labels(const LabelField<Rank>& labels,
                                    const std::vector<std::uint32_t>& chosen, std::size_t pad) {
  if (chosen.empty()) throw InvalidArgument("no labels chosen");
  auto rank_of = [&](std::uint32_t l) -> std::uint32_t {
    const auto it = std::lower_bound(chosen.begin(), chosen.end(), l);
    return it != chosen.end() && *it == l ? static_cast<std::uint32_t>(it - chosen.begin()) + 1 : 0;
  };
  BoundingBox<Rank> box;
  bool any = false;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 0 || rank_of(labels[i]) == 0) continue;
    const auto c = labels.coord(i);
    if (!any) {
      box.min = c;
      box.max = c;
      any = true;
    }
    for (std::size_t d = 0; d < Rank; ++d) {
      box.min[d] = std::min(box.min[d], c[d]);
      box.max[d] = std::max(box.max[d], c[d]);
    }
  }
  if (!any) throw InvalidArgument("chosen labels are not present");
  for (std::size_t d = 0; d < Rank; ++d) {
    box.min[d] = box.min[d] > pad ? box.min[d] - pad : 0;
    box.max[d] = std::min(labels.shape()[d] - 1, box.max[d] + pad);
  }
  auto out = crop(labels, box);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] ? rank_of(out[i]) : 0;
  return out;
}

template <std::size_t Rank>
SpeedReport bench_count(const LabelField<Rank>& labels, const BenchCountOptions& options) {
  if (options.repeats < 1) throw InvalidArgument("repeats must be at least 1");
  if (options.methods.empty()) throw InvalidArgument("no bench methods selected");
  SpeedReport report;
  report.variable = "object_count";
  const auto compact = compact_labels(labels);
  const std::uint32_t k = max_label(compact);
  if (k == 0) throw InvalidArgument("label field has no objects");

  std::vector<std::size_t> counts = options.counts;
  if (counts.empty()) counts = log_spaced_counts(std::min<std::size_t>(2000, k));
  for (auto& c : counts) {
    if (c == 0) throw InvalidArgument("object counts must be positive");
    if (c > k) {
      report.warnings.push_back("count " + std::to_string(c) + " capped to " + std::to_string(k) +
                                " available labels");
      c = k;
    }
  }

  for (unsigned t : options.threads) {
    ThreadScope scope(t);
    const unsigned resolved = thread_count();
    // Same seed per thread setting, so every configuration sees the same sets.
    SplitMix64 rng(options.seed);
    for (std::size_t count : counts) {
      std::vector<std::vector<double>> times(options.methods.size());
      for (std::size_t rep = 0; rep < options.repeats; ++rep) {
        const auto chosen = sample_labels(k, count, rng);
        const auto sub = restrict_to_labels(compact, chosen, options.pad);
        for (std::size_t m = 0; m < options.methods.size(); ++m) {
          if (rep == 0) time_method(sub, options.methods[m], options.lt_method);
          times[m].push_back(time_method(sub, options.methods[m], options.lt_method));
        }
      }
      for (std::size_t m = 0; m < options.methods.size(); ++m) {
        const auto mo = moments(times[m]);
        report.rows.push_back({count, options.methods[m], resolved, mo.mean, mo.std, options.repeats});
      }
    }
  }
  return report;
}

template <std::size_t Rank>
SpeedReport bench_size(const BenchSizeOptions& options) {
  if (options.repeats < 1) throw InvalidArgument("repeats must be at least 1");
  if (options.methods.empty()) throw InvalidArgument("no bench methods selected");
  SpeedReport report;
  report.variable = "object_size";
  for (unsigned t : options.threads) {
    ThreadScope scope(t);
    const unsigned resolved = thread_count();
    for (double size : options.sizes) {
      if (!(size >= 1.0)) throw InvalidArgument("object sizes must be at least 1");
      ShapeSpec spec;
      spec.axes = {size, size, size};
      spec.seed = options.seed;
      if (options.kind == ShapeKind::blob) {
        spec.kind = ShapeKind::blob;
      } else if (options.kind == ShapeKind::sphere || options.kind == ShapeKind::disk) {
        spec.kind = Rank == 2 ? ShapeKind::disk : ShapeKind::sphere;
      } else {
        throw InvalidArgument("bench-size supports blob, disk and sphere objects");
      }
      const double reach = spec.kind == ShapeKind::blob ? size * (1.0 + spec.roughness) : size;
      const auto side = static_cast<std::size_t>(2.0 * std::ceil(reach) + 5.0);
      spec.canvas.assign(Rank, side);
      const auto labels = label_components(rasterize<Rank>(spec));
      for (BenchMethod method : options.methods) {
        time_method(labels, method, options.lt_method);
        std::vector<double> times;
        for (std::size_t rep = 0; rep < options.repeats; ++rep)
          times.push_back(time_method(labels, method, options.lt_method));
        const auto mo = moments(times);
        report.rows.push_back({static_cast<std::size_t>(std::llround(size)), method, resolved, mo.mean,
                               mo.std, options.repeats});
      }
    }
  }
  return report;
}

template <std::size_t Rank>
BatchComparison compare_batch(const LabelField<Rank>& labels, ThicknessMethod lt_method) {
  BatchComparison out;
  AnalyzeOptions both;
  both.method = lt_method;
  const auto records = object_records(labels, ThicknessField<Rank>{});
  out.objects = records.size();

  auto t0 = Clock::now();
  g_sink = g_sink + static_cast<double>(analyze(labels, both).metrics.size());
  out.batch_seconds = seconds_since(t0);

  // One object at a time, alone on the full canvas.
  t0 = Clock::now();
  for (const auto& r : records) {
    LabelField<Rank> single(labels.shape(), 0);
    for (std::size_t i = 0; i < labels.size(); ++i) single[i] = labels[i] == r.label ? 1 : 0;
    g_sink = g_sink + static_cast<double>(analyze(single, both).metrics.size());
  }
  out.single_seconds = seconds_since(t0);

  AnalyzeOptions cropped = both;
  cropped.scope = ThicknessScope::per_label;
  t0 = Clock::now();
  g_sink = g_sink + static_cast<double>(analyze(labels, cropped).metrics.size());
  out.single_cropped_seconds = seconds_since(t0);

  t0 = Clock::now();
  for (const auto& r : records) {
    Mask<Rank> single(labels.shape(), 0);
    for (std::size_t i = 0; i < labels.size(); ++i) single[i] = labels[i] == r.label ? 1 : 0;
    const double measure = mesh_measure(single);
    const double v = static_cast<double>(r.volume);
    g_sink = g_sink + (Rank == 2 ? sphericity_from_perimeter(v, measure)
                                 : sphericity_from_area(v, measure));
  }
  out.mesh_seconds = seconds_since(t0);

  t0 = Clock::now();
  g_sink = g_sink + static_cast<double>(sphericity_mc(labels).size());
  out.mesh_cropped_seconds = seconds_since(t0);
  return out;
}

template double time_method<2>(const LabelField<2>&, BenchMethod, ThicknessMethod);
template double time_method<3>(const LabelField<3>&, BenchMethod, ThicknessMethod);
template LabelField<2> restrict_to_labels<2>(const LabelField<2>&, const std::vector<std::uint32_t>&,
                                             std::size_t);
template LabelField<3> restrict_to_labels<3>(const LabelField<3>&, const std::vector<std::uint32_t>&,
                                             std::size_t);
template SpeedReport bench_count<2>(const LabelField<2>&, const BenchCountOptions&);
template SpeedReport bench_count<3>(const LabelField<3>&, const BenchCountOptions&);
template SpeedReport bench_size<2>(const BenchSizeOptions&);
template SpeedReport bench_size<3>(const BenchSizeOptions&);
template BatchComparison compare_batch<2>(const LabelField<2>&, ThicknessMethod);
template BatchComparison compare_batch<3>(const LabelField<3>&, ThicknessMethod);

}  // namespace ltshape
