// SPDX-License-Identifier: Apache-2.0
#include "ltshape/io.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

namespace ltshape {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw InvalidArgument("cannot read '" + path.string() + "'");
  return bytes;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw InvalidArgument("cannot write '" + path.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InvalidArgument("cannot write '" + path.string() + "'");
  }
}

// ---- PGM ------------------------------------------------------------------

namespace {

class PgmCursor {
 public:
  explicit PgmCursor(const std::string& b) : b_(b) {}

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

  void skip_space_and_comments() {
    while (pos_ < b_.size()) {
      const char c = b_[pos_];
      if (c == '#') {
        while (pos_ < b_.size() && b_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  unsigned long number(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    unsigned long v = 0;
    while (pos_ < b_.size() && std::isdigit(static_cast<unsigned char>(b_[pos_]))) {
      v = v * 10 + static_cast<unsigned long>(b_[pos_] - '0');
      if (v > 0xffffffffUL) throw FormatError(std::string(what) + " too large", start);
      ++pos_;
    }
    if (pos_ == start) throw FormatError(std::string("expected ") + what, start);
    return v;
  }

 private:
  const std::string& b_;
  std::size_t pos_ = 0;
};

}  // namespace

LabelField<2> parse_pgm(const std::string& bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2'))
    throw FormatError("not a PGM file (expected P5 or P2)", 0);
  const bool ascii = bytes[1] == '2';
  PgmCursor cur(bytes);
  cur.advance(2);
  if (cur.pos() < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[cur.pos()])) &&
      bytes[cur.pos()] != '#')
    throw FormatError("malformed PGM magic", 2);
  const std::size_t width_at = cur.pos();
  const unsigned long width = cur.number("width");
  const unsigned long height = cur.number("height");
  if (width == 0 || height == 0) throw FormatError("zero PGM dimension", width_at);
  const std::size_t maxval_at = cur.pos();
  const unsigned long maxval = cur.number("maxval");
  if (maxval == 0 || maxval > 65535) throw FormatError("PGM maxval must be in 1..65535", maxval_at);

  LabelField<2> grid({height, width}, 0);
  const std::size_t n = grid.size();
  if (ascii) {
    for (std::size_t i = 0; i < n; ++i) {
      cur.skip_space_and_comments();
      const std::size_t at = cur.pos();
      if (at >= bytes.size()) throw FormatError("truncated PGM payload", at);
      const unsigned long v = cur.number("sample");
      if (v > maxval) throw FormatError("PGM sample exceeds maxval", at);
      grid[i] = static_cast<std::uint32_t>(v);
    }
    cur.skip_space_and_comments();
    if (cur.pos() != bytes.size()) throw FormatError("trailing data after PGM payload", cur.pos());
    return grid;
  }

  // Exactly one whitespace byte separates maxval from the binary payload.
  if (cur.pos() >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[cur.pos()])))
    throw FormatError("expected whitespace after maxval", cur.pos());
  cur.advance(1);
  const std::size_t start = cur.pos();
  const std::size_t sample = maxval > 255 ? 2 : 1;
  const std::size_t need = n * sample;
  if (bytes.size() - start < need) throw FormatError("truncated PGM payload", bytes.size());
  if (bytes.size() - start > need) throw FormatError("trailing data after PGM payload", start + need);
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + start);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t v = sample == 2 ? (std::uint32_t{p[2 * i]} << 8) | p[2 * i + 1] : p[i];
    if (v > maxval) throw FormatError("PGM sample exceeds maxval", start + i * sample);
    grid[i] = v;
  }
  return grid;
}

LabelField<2> read_pgm(const fs::path& path) { return parse_pgm(read_file(path)); }

template <typename T>
std::string format_pgm(const Grid2D<T>& grid, bool ascii) {
  std::uint64_t top = 0;
  for (T v : grid.data()) top = std::max<std::uint64_t>(top, v);
  if (top > 65535) throw InvalidArgument("PGM holds values up to 65535, got " + std::to_string(top));
  const unsigned maxval = top > 255 ? 65535 : 255;
  std::string out = std::string(ascii ? "P2" : "P5") + "\n" + std::to_string(grid.cols()) + " " +
                    std::to_string(grid.rows()) + "\n" + std::to_string(maxval) + "\n";
  if (ascii) {
    for (std::size_t r = 0; r < grid.rows(); ++r) {
      for (std::size_t c = 0; c < grid.cols(); ++c) {
        if (c) out += ' ';
        out += std::to_string(static_cast<std::uint64_t>(grid.get({r, c})));
      }
      out += '\n';
    }
    return out;
  }
  out.reserve(out.size() + grid.size() * (maxval > 255 ? 2 : 1));
  for (T v : grid.data()) {
    if (maxval > 255) out += static_cast<char>((static_cast<unsigned>(v) >> 8) & 0xff);
    out += static_cast<char>(static_cast<unsigned>(v) & 0xff);
  }
  return out;
}

template <typename T>
void write_pgm(const Grid2D<T>& grid, const fs::path& path, bool ascii) {
  write_file_atomic(path, format_pgm(grid, ascii));
}

// ---- VOL ------------------------------------------------------------------

std::string to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::u8: return "u8";
    case ElementKind::u16: return "u16";
    case ElementKind::u32: return "u32";
  }
  return "?";
}

std::size_t element_bytes(ElementKind kind) {
  switch (kind) {
    case ElementKind::u8: return 1;
    case ElementKind::u16: return 2;
    case ElementKind::u32: return 4;
  }
  return 0;
}

LabelField<3> parse_vol(const std::string& bytes, VolumeHeader* header_out) {
  const std::size_t eol = bytes.find('\n');
  if (eol == std::string::npos) throw FormatError("missing header line terminator", bytes.size());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes.begin(), bytes.begin() + static_cast<long>(eol));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("invalid JSON header: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
  if (!j.is_object()) throw FormatError("header is not a JSON object", 0);

  VolumeHeader h;
  if (!j.contains("shape") || !j["shape"].is_array() || j["shape"].size() != 3)
    throw FormatError("header needs \"shape\": [z, y, x]", 0);
  for (std::size_t d = 0; d < 3; ++d) {
    const auto& v = j["shape"][d];
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0)
      throw FormatError("shape entries must be positive integers", 0);
    h.shape[d] = v.get<std::size_t>();
  }
  if (!j.contains("dtype") || !j["dtype"].is_string()) throw FormatError("header needs \"dtype\"", 0);
  const auto dtype = j["dtype"].get<std::string>();
  if (dtype == "u8")
    h.dtype = ElementKind::u8;
  else if (dtype == "u16")
    h.dtype = ElementKind::u16;
  else if (dtype == "u32")
    h.dtype = ElementKind::u32;
  else
    throw FormatError("unknown element kind '" + dtype + "'", 0);
  if (j.contains("order")) {
    if (!j["order"].is_string() || j["order"].get<std::string>() != "C")
      throw FormatError("only C order is supported", 0);
  }
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw FormatError("\"name\" must be a string", 0);
    h.name = j["name"].get<std::string>();
  }

  const std::size_t start = eol + 1;
  const std::size_t count = h.shape[0] * h.shape[1] * h.shape[2];
  const std::size_t width = element_bytes(h.dtype);
  const std::size_t need = count * width;
  if (bytes.size() - start < need) throw FormatError("payload shorter than shape implies", bytes.size());
  if (bytes.size() - start > need) throw FormatError("payload longer than shape implies", start + need);

  LabelField<3> grid(h.shape, 0);
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + start);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint32_t v = 0;
    for (std::size_t b = 0; b < width; ++b) v |= std::uint32_t{p[i * width + b]} << (8 * b);
    grid[i] = v;
  }
  if (header_out) *header_out = h;
  return grid;
}

LabelField<3> read_vol(const fs::path& path, VolumeHeader* header) {
  return parse_vol(read_file(path), header);
}

template <typename T>
std::string format_vol(const Grid3D<T>& grid, std::optional<ElementKind> dtype,
                       const std::optional<std::string>& name) {
  std::uint64_t top = 0;
  for (T v : grid.data()) top = std::max<std::uint64_t>(top, v);
  const ElementKind kind = dtype ? *dtype
                           : top <= 0xff ? ElementKind::u8
                           : top <= 0xffff ? ElementKind::u16
                                           : ElementKind::u32;
  const std::size_t width = element_bytes(kind);
  if (width < 4 && top >> (8 * width))
    throw InvalidArgument("value " + std::to_string(top) + " does not fit " + to_string(kind));

  nlohmann::json j;
  j["shape"] = {grid.shape()[0], grid.shape()[1], grid.shape()[2]};
  j["dtype"] = to_string(kind);
  j["order"] = "C";
  if (name) j["name"] = *name;
  std::string out = j.dump() + "\n";
  out.reserve(out.size() + grid.size() * width);
  for (T v : grid.data()) {
    const auto u = static_cast<std::uint32_t>(v);
    for (std::size_t b = 0; b < width; ++b) out += static_cast<char>((u >> (8 * b)) & 0xff);
  }
  return out;
}

template <typename T>
void write_vol(const Grid3D<T>& grid, const fs::path& path, std::optional<ElementKind> dtype,
               const std::optional<std::string>& name) {
  write_file_atomic(path, format_vol(grid, dtype, name));
}

// ---- CSV ------------------------------------------------------------------

const std::vector<std::string> kMetricsColumns = {
    "label",          "volume",        "mean_lt",       "max_lt",        "boundary_mean_lt",
    "sphericity_lt", "roundness_lt", "sphericity_wl", "sphericity_mc"};

namespace {

std::string real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string real(const std::optional<double>& v) { return v ? real(*v) : std::string(); }

}  // namespace

template <std::size_t Rank>
std::string format_metrics_csv(const std::vector<ObjectRecord<Rank>>& records,
                               const std::vector<ShapeMetrics>& metrics, bool with_thickness) {
  if (records.size() != metrics.size()) throw InvalidArgument("records and metrics are not aligned");
  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (records[i].label != metrics[i].label) throw InvalidArgument("records and metrics are not aligned");
    order[i] = i;
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return records[a].label < records[b].label; });

  std::string out;
  for (std::size_t c = 0; c < kMetricsColumns.size(); ++c) {
    if (c) out += ',';
    out += kMetricsColumns[c];
  }
  out += '\n';
  for (std::size_t i : order) {
    const auto& r = records[i];
    const auto& m = metrics[i];
    out += std::to_string(r.label) + ',' + std::to_string(r.volume) + ',';
    if (with_thickness) {
      out += real(r.mean_lt) + ',' + real(r.max_lt) + ',';
      out += (r.boundary_mean_lt > 0.0 ? real(r.boundary_mean_lt) : std::string()) + ',';
    } else {
      out += ",,,";
    }
    out += real(m.sphericity_lt) + ',' + real(m.roundness_lt) + ',' + real(m.sphericity_wl) + ',' +
           real(m.sphericity_mc) + '\n';
  }
  return out;
}

template <std::size_t Rank>
void write_metrics_csv(const std::vector<ObjectRecord<Rank>>& records,
                       const std::vector<ShapeMetrics>& metrics, const fs::path& path,
                       bool with_thickness) {
  write_file_atomic(path, format_metrics_csv(records, metrics, with_thickness));
}

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw InvalidArgument("missing column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

bool CsvTable::has_column(const std::string& name) const {
  return std::find(header.begin(), header.end(), name) != header.end();
}

std::optional<double> CsvTable::number(std::size_t row, std::size_t col) const {
  const std::string& cell = rows.at(row).at(col);
  if (cell.empty()) return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size() || errno == ERANGE)
    throw FormatError("not a number: '" + cell + "' (row " + std::to_string(row + 1) + ")", 0);
  return v;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) {
      std::vector<std::string> cells;
      std::size_t start = 0;
      while (true) {
        const std::size_t comma = line.find(',', start);
        cells.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      if (first) {
        t.header = std::move(cells);
        first = false;
      } else {
        if (cells.size() != t.header.size())
          throw FormatError("row has " + std::to_string(cells.size()) + " fields, header has " +
                                std::to_string(t.header.size()),
                            pos);
        t.rows.push_back(std::move(cells));
      }
    }
    pos = eol + 1;
  }
  if (first) throw FormatError("empty CSV", 0);
  return t;
}

CsvTable read_csv(const fs::path& path) { return parse_csv(read_file(path)); }

template std::string format_pgm<std::uint8_t>(const Grid2D<std::uint8_t>&, bool);
template std::string format_pgm<std::uint16_t>(const Grid2D<std::uint16_t>&, bool);
template std::string format_pgm<std::uint32_t>(const Grid2D<std::uint32_t>&, bool);
template void write_pgm<std::uint8_t>(const Grid2D<std::uint8_t>&, const fs::path&, bool);
template void write_pgm<std::uint16_t>(const Grid2D<std::uint16_t>&, const fs::path&, bool);
template void write_pgm<std::uint32_t>(const Grid2D<std::uint32_t>&, const fs::path&, bool);
template std::string format_vol<std::uint8_t>(const Grid3D<std::uint8_t>&, std::optional<ElementKind>,
                                              const std::optional<std::string>&);
template std::string format_vol<std::uint16_t>(const Grid3D<std::uint16_t>&, std::optional<ElementKind>,
                                               const std::optional<std::string>&);
template std::string format_vol<std::uint32_t>(const Grid3D<std::uint32_t>&, std::optional<ElementKind>,
                                               const std::optional<std::string>&);
template void write_vol<std::uint8_t>(const Grid3D<std::uint8_t>&, const fs::path&,
                                      std::optional<ElementKind>, const std::optional<std::string>&);
template void write_vol<std::uint16_t>(const Grid3D<std::uint16_t>&, const fs::path&,
                                       std::optional<ElementKind>, const std::optional<std::string>&);
template void write_vol<std::uint32_t>(const Grid3D<std::uint32_t>&, const fs::path&,
                                       std::optional<ElementKind>, const std::optional<std::string>&);
template std::string format_metrics_csv<2>(const std::vector<ObjectRecord<2>>&,
                                           const std::vector<ShapeMetrics>&, bool);
template std::string format_metrics_csv<3>(const std::vector<ObjectRecord<3>>&,
                                           const std::vector<ShapeMetrics>&, bool);
template void write_metrics_csv<2>(const std::vector<ObjectRecord<2>>&,
                                   const std::vector<ShapeMetrics>&, const fs::path&, bool);
template void write_metrics_csv<3>(const std::vector<ObjectRecord<3>>&,
                                   const std::vector<ShapeMetrics>&, const fs::path&, bool);

}  // namespace ltshape
