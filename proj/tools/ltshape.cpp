// SPDX-License-Identifier: Apache-2.0
// ltshape: local-thickness sphericity and roundness for labeled images.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ltshape/analysis.hpp"
#include "ltshape/bench.hpp"
#include "ltshape/compare.hpp"
#include "ltshape/errors.hpp"
#include "ltshape/io.hpp"
#include "ltshape/parallel.hpp"
#include "ltshape/synth.hpp"

namespace fs = std::filesystem;
using namespace ltshape;

namespace {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kFormat = 3, kInconsistent = 4 };

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

bool is_vol(const fs::path& p) { return p.extension() == ".vol"; }

// Grids are read as label fields; 2D data may also come as a one-slice volume.
LabelField<2> load_2d(const fs::path& path) {
  if (!is_vol(path)) return read_pgm(path);
  const auto v = read_vol(path);
  if (v.shape()[0] != 1) throw InvalidArgument("'" + path.string() + "' is a 3D volume");
  return LabelField<2>({v.shape()[1], v.shape()[2]}, v.values());
}

LabelField<3> load_3d(const fs::path& path) {
  if (!is_vol(path)) throw InvalidArgument("3D input must be a .vol file");
  return read_vol(path);
}

ThicknessMethod parse_method(const std::string& s) {
  if (s == "fast") return ThicknessMethod::fast;
  if (s == "exact") return ThicknessMethod::exact;
  throw InvalidArgument("unknown thickness method '" + s + "'");
}

std::vector<BenchMethod> parse_methods(const std::string& list) {
  std::vector<BenchMethod> out;
  for (const auto& name : split(list)) out.push_back(parse_bench_method(name));
  if (out.empty()) throw InvalidArgument("empty method list");
  return out;
}

template <typename T>
std::vector<T> parse_numbers(const std::string& list) {
  std::vector<T> out;
  for (const auto& item : split(list)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw InvalidArgument("not a number: '" + item + "'");
    if constexpr (std::is_integral_v<T>) {
      if (v < 0 || v != static_cast<double>(static_cast<T>(v)))
        throw InvalidArgument("not a nonnegative integer: '" + item + "'");
    }
    out.push_back(static_cast<T>(v));
  }
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_file_atomic(path, text);
}

// ---- analyze ----------------------------------------------------------------

struct AnalyzeArgs {
  std::string input, output, metrics = "sphericity,roundness", method = "fast", scope = "union";
  int dim = 0;
  std::size_t min_volume = 1;
  bool exclude_edge = false, pad = false, labeled = false;
  int connectivity = 0;
};

template <std::size_t Rank>
void run_analyze(const AnalyzeArgs& a, const LabelField<Rank>& input) {
  PrepareOptions prep;
  prep.labeled = a.labeled;
  prep.connectivity = a.connectivity;
  prep.exclude_edge = a.exclude_edge;
  prep.min_volume = a.min_volume;
  prep.pad = a.pad ? 1 : 0;
  const auto labels = prepare_labels(input, prep);

  AnalyzeOptions opts;
  opts.metrics = MetricSet::parse(a.metrics);
  opts.method = parse_method(a.method);
  if (a.scope == "union")
    opts.scope = ThicknessScope::union_foreground;
  else if (a.scope == "per-label")
    opts.scope = ThicknessScope::per_label;
  else
    throw InvalidArgument("unknown scope '" + a.scope + "'");

  const auto result = analyze(labels, opts);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  write_metrics_csv(result.records, result.metrics, a.output, result.has_thickness);
}

void cmd_analyze(const AnalyzeArgs& a) {
  if (a.min_volume < 1) throw InvalidArgument("--min-volume must be at least 1");
  const int dim = a.dim != 0 ? a.dim : (is_vol(a.input) ? 3 : 2);
  if (dim == 2)
    run_analyze<2>(a, load_2d(a.input));
  else
    run_analyze<3>(a, load_3d(a.input));
}

// ---- synth ------------------------------------------------------------------

struct SynthArgs {
  std::string kind, output;
  double radius = 0.0, inner_radius = 0.0, exponent = 4.0, rotation = 0.0, roughness = 0.35;
  std::vector<double> axes, offset;
  std::vector<std::size_t> canvas;
  int spikes = 5;
  bool rounded = false, ascii = false, truth = false;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  double min_radius = 4.0, max_radius = 8.0, gap = 2.0;
};

std::string truth_line(const GroundTruth& g) {
  auto field = [](const char* name, const std::optional<double>& v) {
    char buf[96];
    if (v)
      std::snprintf(buf, sizeof buf, "%s=%.6g", name, *v);
    else
      std::snprintf(buf, sizeof buf, "%s=", name);
    return std::string(buf);
  };
  if (!g.available) return "ground_truth=unavailable\n";
  return field("sphericity", g.sphericity) + " " + field("roundness", g.roundness) + " " +
         field("sphericity_wl", g.sphericity_wl) + " " + field("measure", g.measure) + " " +
         field("size", g.size) + "\n";
}

void cmd_synth(const SynthArgs& a) {
  ShapeSpec spec;
  spec.kind = parse_shape_kind(a.kind);
  if (!a.axes.empty()) {
    if (a.axes.size() > 3) throw InvalidArgument("--axes takes at most 3 values");
    for (std::size_t i = 0; i < 3; ++i) spec.axes[i] = a.axes[std::min(i, a.axes.size() - 1)];
  }
  if (a.radius > 0.0) spec.axes = {a.radius, a.radius, a.radius};
  if (spec.kind == ShapeKind::star) spec.inner_radius = a.inner_radius > 0.0 ? a.inner_radius : spec.axes[0] / 2.0;
  spec.spikes = a.spikes;
  spec.rounded = a.rounded;
  spec.exponent = a.exponent;
  spec.rotation = a.rotation;
  spec.seed = a.seed;
  spec.roughness = a.roughness;
  if (a.offset.size() > 3) throw InvalidArgument("--offset takes at most 3 values");
  for (std::size_t i = 0; i < a.offset.size(); ++i) spec.offset[i] = a.offset[i];

  const auto rank = shape_rank(spec.kind);
  if (!a.canvas.empty())
    spec.canvas = a.canvas;
  else
    spec.canvas.assign(rank.value_or(2), 64);
  if (spec.canvas.size() != 2 && spec.canvas.size() != 3)
    throw InvalidArgument("--canvas takes 2 (rows cols) or 3 (depth rows cols) values");
  const bool vol_out = is_vol(a.output);
  if (spec.canvas.size() == 3 && !vol_out) throw InvalidArgument("3D output must be a .vol file");

  if (a.count > 0) {
    if (spec.kind != ShapeKind::blob) throw InvalidArgument("--count is only valid for blob fields");
    if (spec.canvas.size() == 2) {
      const auto f = blob_field<2>({spec.canvas[0], spec.canvas[1]}, a.count, a.min_radius,
                                   a.max_radius, a.seed, a.gap);
      if (vol_out)
        write_vol(LabelField<3>({1, f.shape()[0], f.shape()[1]}, f.values()), a.output);
      else
        write_pgm(f, a.output, a.ascii);
    } else {
      write_vol(blob_field<3>({spec.canvas[0], spec.canvas[1], spec.canvas[2]}, a.count,
                              a.min_radius, a.max_radius, a.seed, a.gap),
                a.output);
    }
    return;
  }

  if (spec.canvas.size() == 2) {
    const auto m = rasterize<2>(spec);
    if (vol_out)
      write_vol(Grid3D<std::uint8_t>({1, m.shape()[0], m.shape()[1]}, m.values()), a.output);
    else
      write_pgm(m, a.output, a.ascii);
  } else {
    write_vol(rasterize<3>(spec), a.output);
  }
  if (a.truth) std::cout << truth_line(ground_truth(spec));
}

// ---- bench ------------------------------------------------------------------

struct BenchArgs {
  std::string input, output, counts, methods = "lt_sphericity,lt_roundness,lt_both,mc_sphericity",
                                     threads = "0", method = "fast", sizes = "4,8,16,32", kind = "blob";
  int dim = 0;
  std::size_t repeats = 10, pad = 1;
  std::uint64_t seed = 0;
  bool labeled = false;
};

std::vector<unsigned> parse_threads(const std::string& s) {
  std::vector<unsigned> out;
  for (auto v : parse_numbers<std::size_t>(s)) out.push_back(static_cast<unsigned>(v));
  if (out.empty()) throw InvalidArgument("empty thread list");
  return out;
}

template <std::size_t Rank>
SpeedReport run_bench_count(const BenchArgs& a, const LabelField<Rank>& input) {
  PrepareOptions prep;
  prep.labeled = a.labeled;
  BenchCountOptions o;
  o.counts = parse_numbers<std::size_t>(a.counts);
  o.repeats = a.repeats;
  o.methods = parse_methods(a.methods);
  o.seed = a.seed;
  o.threads = parse_threads(a.threads);
  o.pad = a.pad;
  o.lt_method = parse_method(a.method);
  return bench_count(prepare_labels(input, prep), o);
}

void cmd_bench_count(const BenchArgs& a) {
  const int dim = a.dim != 0 ? a.dim : (is_vol(a.input) ? 3 : 2);
  const SpeedReport r = dim == 2 ? run_bench_count<2>(a, load_2d(a.input))
                                 : run_bench_count<3>(a, load_3d(a.input));
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  emit(r.format_csv(), a.output);
}

void cmd_bench_size(const BenchArgs& a) {
  BenchSizeOptions o;
  o.sizes = parse_numbers<double>(a.sizes);
  o.kind = parse_shape_kind(a.kind);
  o.repeats = a.repeats;
  o.methods = parse_methods(a.methods);
  o.seed = a.seed;
  o.threads = parse_threads(a.threads);
  o.lt_method = parse_method(a.method);
  const int dim = a.dim != 0 ? a.dim : 3;
  const SpeedReport r = dim == 2 ? bench_size<2>(o) : bench_size<3>(o);
  emit(r.format_csv(), a.output);
}

// ---- compare ----------------------------------------------------------------

struct CompareArgs {
  std::string a, b, columns, output, residuals;
};

void cmd_compare(const CompareArgs& a) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& item : split(a.columns)) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      pairs.emplace_back(item, item);
    else
      pairs.emplace_back(item.substr(0, colon), item.substr(colon + 1));
  }
  const auto report = compare_tables(read_csv(a.a), read_csv(a.b), pairs);
  emit(report.format_csv(), a.output);
  if (!a.residuals.empty()) write_file_atomic(a.residuals, report.format_residuals_csv());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local-thickness sphericity and roundness for labeled 2D images and 3D volumes"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");

  AnalyzeArgs an;
  auto* analyze_cmd = app.add_subcommand("analyze", "Per-object metrics table");
  analyze_cmd->add_option("--input", an.input, "Mask or label file (.pgm or .vol)")->required();
  analyze_cmd->add_option("--output", an.output, "Metrics CSV")->required();
  analyze_cmd->add_option("--dim", an.dim, "Dimensionality (default from extension)")
      ->check(CLI::IsMember({2, 3}));
  analyze_cmd->add_option("--metrics", an.metrics,
                          "Comma list of sphericity, roundness, sphericity_wl, sphericity_mc, all");
  analyze_cmd->add_option("--min-volume", an.min_volume, "Drop objects smaller than N elements");
  analyze_cmd->add_flag("--exclude-edge", an.exclude_edge, "Drop objects touching the border");
  analyze_cmd->add_flag("--pad,!--no-pad", an.pad, "Surround the grid with one background element");
  analyze_cmd->add_option("--connectivity", an.connectivity, "4 or 8 (2D), 6 or 26 (3D)")
      ->check(CLI::IsMember({4, 8, 6, 26}));
  analyze_cmd->add_flag("--labeled", an.labeled, "Input already holds object labels");
  analyze_cmd->add_option("--method", an.method, "Local thickness: fast or exact");
  analyze_cmd->add_option("--scope", an.scope, "Thickness scope: union or per-label");

  SynthArgs sy;
  auto* synth_cmd = app.add_subcommand("synth", "Rasterize a synthetic shape");
  synth_cmd->add_option("kind", sy.kind,
                        "disk, ellipse, square, bar, star, superellipse, sphere, spheroid, box, blob")
      ->required();
  synth_cmd->add_option("--output", sy.output, "Output .pgm (2D) or .vol")->required();
  synth_cmd->add_option("--radius", sy.radius, "Radius, half side or outer star radius");
  synth_cmd->add_option("--axes", sy.axes, "Semi-axes or half extents x y [z]")->expected(1, 3);
  synth_cmd->add_option("--inner-radius", sy.inner_radius, "Star inner radius");
  synth_cmd->add_option("--spikes", sy.spikes, "Star spike count");
  synth_cmd->add_flag("--rounded", sy.rounded, "Sinusoidal star profile");
  synth_cmd->add_option("--exponent", sy.exponent, "Superellipse exponent");
  synth_cmd->add_option("--rotation", sy.rotation, "In-plane rotation (radians)");
  synth_cmd->add_option("--canvas", sy.canvas, "rows cols or depth rows cols")->expected(2, 3);
  synth_cmd->add_option("--offset", sy.offset, "Center shift x y [z]")->expected(1, 3);
  synth_cmd->add_option("--seed", sy.seed, "Blob seed");
  synth_cmd->add_option("--roughness", sy.roughness, "Blob boundary roughness in [0, 1)");
  synth_cmd->add_option("--count", sy.count, "Blob field with N labeled blobs");
  synth_cmd->add_option("--min-radius", sy.min_radius, "Blob field minimum radius");
  synth_cmd->add_option("--max-radius", sy.max_radius, "Blob field maximum radius");
  synth_cmd->add_option("--gap", sy.gap, "Blob field spacing");
  synth_cmd->add_flag("--ascii", sy.ascii, "Write P2 instead of P5");
  synth_cmd->add_flag("--truth", sy.truth, "Print continuum reference values");

  BenchArgs bc;
  auto* count_cmd = app.add_subcommand("bench-count", "Time methods against object count");
  count_cmd->add_option("--input", bc.input, "Label or mask file")->required();
  count_cmd->add_option("--output", bc.output, "Speed report CSV (default stdout)");
  count_cmd->add_option("--dim", bc.dim, "Dimensionality")->check(CLI::IsMember({2, 3}));
  count_cmd->add_option("--counts", bc.counts, "Comma list (default 10 log-spaced values)");
  count_cmd->add_option("--repeats", bc.repeats, "Samples per count");
  count_cmd->add_option("--methods", bc.methods, "Comma list of methods");
  count_cmd->add_option("--seed", bc.seed, "Sampling seed");
  count_cmd->add_option("--bench-threads", bc.threads, "Comma list of thread settings to time");
  count_cmd->add_option("--pad", bc.pad, "Margin around the sampled objects");
  count_cmd->add_option("--method", bc.method, "Local thickness: fast or exact");
  count_cmd->add_flag("--labeled", bc.labeled, "Input already holds object labels");

  BenchArgs bs;
  auto* size_cmd = app.add_subcommand("bench-size", "Time methods against object size");
  size_cmd->add_option("--output", bs.output, "Speed report CSV (default stdout)");
  size_cmd->add_option("--dim", bs.dim, "Dimensionality (default 3)")->check(CLI::IsMember({2, 3}));
  size_cmd->add_option("--sizes", bs.sizes, "Comma list of radii");
  size_cmd->add_option("--kind", bs.kind, "blob or sphere");
  size_cmd->add_option("--repeats", bs.repeats, "Timed runs per size");
  size_cmd->add_option("--methods", bs.methods, "Comma list of methods");
  size_cmd->add_option("--seed", bs.seed, "Blob seed");
  size_cmd->add_option("--bench-threads", bs.threads, "Comma list of thread settings to time");
  size_cmd->add_option("--method", bs.method, "Local thickness: fast or exact");

  CompareArgs cp;
  auto* compare_cmd = app.add_subcommand("compare", "Correlate metric columns of two CSV tables");
  compare_cmd->add_option("a", cp.a, "First CSV")->required();
  compare_cmd->add_option("b", cp.b, "Second CSV")->required();
  compare_cmd->add_option("--columns", cp.columns, "Comma list of col or col_a:col_b");
  compare_cmd->add_option("--output", cp.output, "Report CSV (default stdout)");
  compare_cmd->add_option("--residuals", cp.residuals, "Per-object residual CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    set_thread_count(threads);
    if (*analyze_cmd) cmd_analyze(an);
    if (*synth_cmd) cmd_synth(sy);
    if (*count_cmd) cmd_bench_count(bc);
    if (*size_cmd) cmd_bench_size(bs);
    if (*compare_cmd) cmd_compare(cp);
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kFormat;
  } catch (const InconsistencyError& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kInconsistent;
  } catch (const NoBackground& e) {
    std::cerr << "error: " << e.what() << " (try --pad)\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}
