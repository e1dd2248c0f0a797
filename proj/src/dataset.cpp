#include <algorithm>

#include "shapeforge/ingest.hpp"

namespace shapeforge {

std::vector<std::string> Dataset::groups() const {
  std::vector<std::string> out;
  for (const auto& e : entries) {
    if (std::find(out.begin(), out.end(), e.group) == out.end()) out.push_back(e.group);
  }
  return out;
}

Dataset build_dataset(std::span<const RawContour> contours, const DatasetOptions& options) {
  Dataset ds;
  ds.resample = options.resample;
  for (const auto& c : contours) {
    if (options.min_solidity && solidity(c.points) < *options.min_solidity) {
      ds.dropped.push_back(c.id);
      continue;
    }
    ds.entries.push_back({c.id, c.group, orient_ccw(resample_arclength(c, options.resample))});
  }
  return ds;
}

}  // namespace shapeforge
