// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ltshape/analysis.hpp"
#include "ltshape/grid.hpp"

namespace ltshape {

// PGM (P5 binary or P2 ASCII, maxval up to 65535, 16-bit samples big-endian)
// for 2D grids; VOL (one JSON header line, then a little-endian C-order
// payload) for 3D grids. Readers throw FormatError with the byte offset of
// the first problem and never guess.

/// Values are kept as stored; nonzero means foreground for masks.
LabelField<2> read_pgm(const std::filesystem::path& path);
LabelField<2> parse_pgm(const std::string& bytes);

/// maxval is 255 when every value fits in a byte and 65535 otherwise. Values
/// above 65535 throw InvalidArgument.
template <typename T>
void write_pgm(const Grid2D<T>& grid, const std::filesystem::path& path, bool ascii = false);
template <typename T>
std::string format_pgm(const Grid2D<T>& grid, bool ascii = false);

enum class ElementKind { u8, u16, u32 };

std::string to_string(ElementKind kind);
std::size_t element_bytes(ElementKind kind);

struct VolumeHeader {
  std::array<std::size_t, 3> shape{};  // z, y, x
  ElementKind dtype = ElementKind::u8;
  std::string order = "C";
  std::optional<std::string> name;
};

LabelField<3> read_vol(const std::filesystem::path& path, VolumeHeader* header = nullptr);
LabelField<3> parse_vol(const std::string& bytes, VolumeHeader* header = nullptr);

/// Without `dtype`, the smallest kind holding every value is used. Values
/// that do not fit an explicit `dtype` throw InvalidArgument.
template <typename T>
void write_vol(const Grid3D<T>& grid, const std::filesystem::path& path,
               std::optional<ElementKind> dtype = std::nullopt,
               const std::optional<std::string>& name = std::nullopt);
template <typename T>
std::string format_vol(const Grid3D<T>& grid, std::optional<ElementKind> dtype = std::nullopt,
                       const std::optional<std::string>& name = std::nullopt);

/// Fixed column order of the metrics table.
extern const std::vector<std::string> kMetricsColumns;

/// One row per record, reals with 6 significant digits, absent values as
/// empty fields, '\n' line endings. Without thickness, the LT columns are
/// left empty.
template <std::size_t Rank>
std::string format_metrics_csv(const std::vector<ObjectRecord<Rank>>& records,
                               const std::vector<ShapeMetrics>& metrics,
                               bool with_thickness = true);

/// Writes through a temporary file, so a failure leaves no partial output.
template <std::size_t Rank>
void write_metrics_csv(const std::vector<ObjectRecord<Rank>>& records,
                       const std::vector<ShapeMetrics>& metrics,
                       const std::filesystem::path& path, bool with_thickness = true);

/// Write `content` to `path` via a sibling temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

/// Minimal comma separated table (no quoting), as written by this library.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a column; throws InvalidArgument if missing.
  std::size_t column(const std::string& name) const;
  bool has_column(const std::string& name) const;
  /// Parsed numeric cell; empty cells give nullopt. Throws FormatError on junk.
  std::optional<double> number(std::size_t row, std::size_t col) const;
};

CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace ltshape
