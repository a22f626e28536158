#include "topicgrids/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_set>

namespace topicgrids {

std::string PointCloud::id(std::size_t i) const {
  if (!ids.empty()) return ids[i];
  return "p" + std::to_string(i);
}

PointCloud PointCloud::create(int dims, std::vector<double> coords,
                              std::vector<std::string> ids) {
  if (dims < 1) throw ValidationError("point cloud needs dims >= 1");
  if (coords.size() % static_cast<std::size_t>(dims) != 0)
    throw ValidationError("coordinate count " + std::to_string(coords.size()) +
                          " is not a multiple of dims " + std::to_string(dims));
  const std::size_t n = coords.size() / dims;
  if (!ids.empty() && ids.size() != n)
    throw ValidationError("got " + std::to_string(ids.size()) + " ids for " +
                          std::to_string(n) + " points");
  for (double v : coords)
    if (!std::isfinite(v))
      throw ValidationError("non-finite coordinate in point cloud");
  if (!ids.empty()) {
    std::unordered_set<std::string> seen;
    for (const auto& id : ids)
      if (!seen.insert(id).second)
        throw ValidationError("duplicate point id '" + id + "'");
  }
  PointCloud c;
  c.dims = dims;
  c.coords = std::move(coords);
  c.ids = std::move(ids);
  return c;
}

std::int64_t LayoutShape::cell_count() const {
  std::int64_t n = 1;
  for (int g : extents) n *= g;
  return n;
}

LayoutShape LayoutShape::parse(const std::string& text) {
  LayoutShape shape;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find('x', pos);
    std::string part = text.substr(pos, next == std::string::npos
                                            ? std::string::npos
                                            : next - pos);
    std::size_t used = 0;
    int extent = 0;
    try {
      extent = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw ValidationError("bad layout '" + text + "'");
    }
    if (used != part.size() || extent < 1)
      throw ValidationError("bad layout '" + text + "': extents must be positive integers");
    shape.extents.push_back(extent);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (shape.extents.empty())
    throw ValidationError("bad layout '" + text + "'");
  return shape;
}

std::string LayoutShape::str() const {
  std::string out;
  for (std::size_t i = 0; i < extents.size(); ++i) {
    if (i) out += 'x';
    out += std::to_string(extents[i]);
  }
  return out;
}

SplitStrategy SplitStrategy::parse(const std::string& name) {
  SplitStrategy s;
  if (name == "greedy") {
    s.mode = SplitMode::greedy;
  } else if (name == "iterative") {
    s.mode = SplitMode::iterative;
  } else {
    throw ValidationError("unknown strategy '" + name +
                          "' (expected greedy or iterative)");
  }
  return s;
}

std::string SplitStrategy::str() const {
  return mode == SplitMode::greedy ? "greedy" : "iterative";
}

std::size_t GridAssignment::size() const {
  const int k = layout.dims();
  return k == 0 ? 0 : cells.size() / k;
}

std::string GridAssignment::id(std::size_t i) const {
  if (!ids.empty()) return ids[i];
  return "p" + std::to_string(i);
}

void GridAssignment::validate_bijection() const {
  const int k = layout.dims();
  if (k == 0) throw ValidationError("assignment has no layout");
  if (cells.size() % static_cast<std::size_t>(k) != 0)
    throw ValidationError("cell index count is not a multiple of layout dims");
  const std::size_t n = size();
  const std::int64_t want = layout.cell_count();
  if (static_cast<std::int64_t>(n) != want)
    throw ValidationError("assignment has " + std::to_string(n) +
                          " points for a layout with " + std::to_string(want) +
                          " cells");
  // Flatten each cell to a linear index and demand a perfect cover.
  std::vector<bool> used(static_cast<std::size_t>(want), false);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t flat = 0;
    for (int d = 0; d < k; ++d) {
      const std::int32_t v = cell(i, d);
      if (v < 0 || v >= layout.extents[d])
        throw ValidationError("cell index out of range for point " + id(i));
      flat = flat * layout.extents[d] + v;
    }
    if (used[static_cast<std::size_t>(flat)])
      throw ValidationError("cell assigned twice (point " + id(i) + ")");
    used[static_cast<std::size_t>(flat)] = true;
  }
}

}  // namespace topicgrids
