#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shapeforge/elastic.hpp"
#include "shapeforge/geometry.hpp"

namespace shapeforge {

/// An outline as read from disk, in pixel units. At least 3 points, all finite.
struct RawContour {
  std::string id;
  std::string group;
  PointList points;

  bool operator==(const RawContour&) const = default;
};

enum class ContourFormat { csv, json };

/// CSV: header `contour_id,group,point_index,x,y`, one row per point, the
/// points of a contour contiguous and in point_index order.
/// JSON: `[{"id": "...", "group": "...", "points": [[x, y], ...]}, ...]`.
std::vector<RawContour> parse_contours(std::string_view text, ContourFormat format);
std::vector<RawContour> parse_contours(std::istream& in, ContourFormat format);

std::string serialize_contours(std::span<const RawContour> contours, ContourFormat format);

/// 8-bit grayscale raster, row-major.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;
};

/// Binary P5 PGM with maxval <= 255.
GrayImage read_pgm(std::istream& in);
void write_pgm(std::ostream& out, const GrayImage& image);

/// Foreground = 1 where pixel >= threshold.
struct BinaryMask {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> cells;

  bool at(long x, long y) const {
    return x >= 0 && y >= 0 && x < static_cast<long>(width) && y < static_cast<long>(height) &&
           cells[static_cast<std::size_t>(y) * width + static_cast<std::size_t>(x)] != 0;
  }
};

BinaryMask threshold(const GrayImage& image, std::uint8_t level = 128);

/// Outer boundaries of the 8-connected foreground components with at least
/// `min_area` pixels, by Moore-neighbor tracing with Jacob's stopping
/// criterion. Points are pixel centers (x = column, y = row), ordered with
/// positive shoelace area in those coordinates. Holes are ignored, and
/// components whose boundary has fewer than 3 pixels are skipped.
std::vector<RawContour> trace_mask(const BinaryMask& mask, std::size_t min_area,
                                   std::string_view group = "mask");

/// n points at equal arc-length spacing around the closed outline, starting
/// at the first vertex. Consecutive duplicates (including a repeated closing
/// vertex) are dropped first.
DiscreteCurve resample_arclength(const RawContour& contour, std::size_t n);

/// Area over convex-hull area of the closed polygon.
double solidity(std::span<const Point> polygon);

struct DatasetEntry {
  std::string id;
  std::string group;
  DiscreteCurve curve;
};

struct DatasetOptions {
  std::size_t resample = 100;
  /// Contours with solidity below this are dropped (overlap heuristic).
  std::optional<double> min_solidity;
};

struct Dataset {
  std::vector<DatasetEntry> entries;
  std::vector<std::string> sources;
  std::size_t resample = 0;
  std::vector<std::string> dropped;  // ids rejected by the solidity filter

  std::vector<std::string> groups() const;  // in first-appearance order
};

/// Resamples every contour to a common count, orienting curves counterclockwise.
Dataset build_dataset(std::span<const RawContour> contours, const DatasetOptions& options);

}  // namespace shapeforge
