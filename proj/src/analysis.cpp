// SPDX-License-Identifier: Apache-2.0
#include "ltshape/analysis.hpp"

#include <algorithm>
#include <sstream>

#include "ltshape/boundary.hpp"
#include "ltshape/edt.hpp"
#include "ltshape/mesh.hpp"
#include "ltshape/metrics.hpp"
#include "ltshape/parallel.hpp"

namespace ltshape {

MetricSet MetricSet::parse(const std::string& list) {
  MetricSet m{false, false, false, false};
  std::stringstream in(list);
  std::string name;
  bool any = false;
  while (std::getline(in, name, ',')) {
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    if (name.empty()) continue;
    any = true;
    if (name == "sphericity" || name == "sphericity_lt")
      m.sphericity = true;
    else if (name == "roundness" || name == "roundness_lt")
      m.roundness = true;
    else if (name == "sphericity_wl" || name == "wl")
      m.width_length = true;
    else if (name == "sphericity_mc" || name == "mc")
      m.mesh = true;
    else if (name == "all")
      m = MetricSet{true, true, true, true};
    else
      throw InvalidArgument("unknown metric '" + name + "'");
  }
  if (!any) throw InvalidArgument("empty metric list");
  return m;
}

std::string MetricSet::to_string() const {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(sphericity, "sphericity");
  add(roundness, "roundness");
  add(width_length, "sphericity_wl");
  add(mesh, "sphericity_mc");
  return out;
}

namespace {

struct ObjectThickness {
  double mean_lt = 0.0;
  double max_lt = 0.0;
  std::optional<double> boundary_mean_lt;
};

// Local thickness of one object alone on the canvas. The crop keeps one
// element around the bounding box (clipped to the grid), which already holds
// every nearest background element of the isolated object.
template <std::size_t Rank>
ObjectThickness isolated_thickness(const LabelField<Rank>& labels, const ObjectRecord<Rank>& r,
                                   ThicknessMethod method, bool with_boundary) {
  BoundingBox<Rank> box = r.bbox;
  for (std::size_t d = 0; d < Rank; ++d) {
    if (box.min[d] > 0) --box.min[d];
    if (box.max[d] + 1 < labels.shape()[d]) ++box.max[d];
  }
  const auto local = crop(labels, box);
  Mask<Rank> mask(local.shape(), 0);
  for (std::size_t i = 0; i < local.size(); ++i) mask[i] = local[i] == r.label ? 1 : 0;
  const auto lt = local_thickness(edt(mask), method);
  const auto boundary = with_boundary ? extract_boundary(mask) : Mask<Rank>(mask.shape(), 0);

  ObjectThickness out;
  double sum = 0.0, bsum = 0.0;
  std::size_t bcount = 0;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    sum += lt[i];
    out.max_lt = std::max(out.max_lt, lt[i]);
    if (boundary[i]) {
      bsum += lt[i];
      ++bcount;
    }
  }
  out.mean_lt = std::min(out.max_lt, sum / static_cast<double>(r.volume));
  if (bcount > 0)
    out.boundary_mean_lt = std::min(out.max_lt, bsum / static_cast<double>(bcount));
  else if (!with_boundary)
    out.boundary_mean_lt = 0.0;
  return out;
}

}  // namespace

template <std::size_t Rank>
Analysis<Rank> analyze(const LabelField<Rank>& labels, const AnalyzeOptions& options) {
  const MetricSet& want = options.metrics;
  Analysis<Rank> result;
  std::vector<std::uint32_t> no_boundary;

  if (!want.needs_thickness()) {
    result.records = object_records(labels, ThicknessField<Rank>{});
  } else if (options.scope == ThicknessScope::union_foreground) {
    Mask<Rank> mask(labels.shape(), 0);
    bool any = false;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      mask[i] = labels[i] != 0 ? 1 : 0;
      any = any || mask[i];
    }
    if (any) {
      const auto lt = local_thickness(edt(mask), options.method);
      result.records = object_records(labels, lt);
      if (want.roundness) {
        // Contacts with other labels count as boundary of each object.
        const auto stats = boundary_mean_lt(extract_boundary(labels, true), lt, labels);
        no_boundary = fill_boundary_mean_lt(result.records, stats);
      }
    }
    result.has_thickness = true;
  } else {
    result.records = object_records(labels, ThicknessField<Rank>{});
    std::vector<ObjectThickness> per(result.records.size());
    parallel_for(0, per.size(), [&](std::size_t lo, std::size_t hi) {
      for (std::size_t k = lo; k < hi; ++k)
        per[k] = isolated_thickness(labels, result.records[k], options.method, want.roundness);
    });
    for (std::size_t k = 0; k < per.size(); ++k) {
      auto& r = result.records[k];
      r.mean_lt = per[k].mean_lt;
      r.max_lt = per[k].max_lt;
      if (per[k].boundary_mean_lt)
        r.boundary_mean_lt = *per[k].boundary_mean_lt;
      else
        no_boundary.push_back(r.label);
    }
    result.has_thickness = true;
  }

  std::vector<std::pair<std::uint32_t, double>> wl, mc;
  if (want.width_length) wl = sphericity_wl(labels);
  if (want.mesh) mc = sphericity_mc(labels);

  std::size_t unreliable = 0;
  result.metrics.resize(result.records.size());
  for (std::size_t k = 0; k < result.records.size(); ++k) {
    const auto& r = result.records[k];
    ShapeMetrics& m = result.metrics[k];
    m.label = r.label;
    m.reliable = r.volume >= options.reliable_min_volume;
    if (!m.reliable) ++unreliable;
    const double v = static_cast<double>(r.volume);
    if (want.sphericity) {
      if constexpr (Rank == 2) {
        const auto s = sphericity_2d(v, r.mean_lt);
        m.sphericity_lt = s.value;
        m.sphericity_lt_raw = s.raw;
        m.model_a = s.model.a;
        m.model_c_or_b = s.model.b;
      } else {
        const auto s = sphericity_3d(v, r.mean_lt);
        m.sphericity_lt = s.value;
        m.sphericity_lt_raw = s.raw;
        m.model_a = s.model.a;
        m.model_c_or_b = s.model.c;
      }
    }
    if (want.roundness && !std::binary_search(no_boundary.begin(), no_boundary.end(), r.label))
      m.roundness_lt = roundness_lt(r.boundary_mean_lt, r.max_lt);
    // Both lists come sorted by label, one entry per record.
    if (want.width_length) m.sphericity_wl = wl[k].second;
    if (want.mesh) m.sphericity_mc = mc[k].second;
  }

  if (want.roundness)
    for (std::uint32_t l : no_boundary)
      result.warnings.push_back("label " + std::to_string(l) +
                                " has no boundary element; roundness omitted");
  if (unreliable > 0)
    result.warnings.push_back(std::to_string(unreliable) + " object(s) smaller than " +
                              std::to_string(options.reliable_min_volume) +
                              " elements; metrics flagged unreliable");
  return result;
}

template <std::size_t Rank>
LabelField<Rank> prepare_labels(const LabelField<Rank>& input, const PrepareOptions& options) {
  const int conn = options.connectivity == 0 ? default_connectivity<Rank>() : options.connectivity;
  LabelField<Rank> labels =
      options.labeled ? compact_labels(input) : label_components(input, conn);
  if (options.exclude_edge) labels = remove_edge_objects(labels);
  if (options.min_volume > 1) labels = filter_small(labels, options.min_volume);
  if (options.pad > 0) labels = pad(labels, options.pad, std::uint32_t{0});
  return labels;
}

template LabelField<2> prepare_labels<2>(const LabelField<2>&, const PrepareOptions&);
template LabelField<3> prepare_labels<3>(const LabelField<3>&, const PrepareOptions&);
template Analysis<2> analyze<2>(const LabelField<2>&, const AnalyzeOptions&);
template Analysis<3> analyze<3>(const LabelField<3>&, const AnalyzeOptions&);

}  // namespace ltshape
