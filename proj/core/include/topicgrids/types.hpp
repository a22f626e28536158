#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace topicgrids {

// Thrown when inputs violate a documented precondition (bad layout string,
// point/cell count mismatch, non-bijective assignment, ...).  Carries a plain
// human-readable message; the CLI maps it to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown on file-level problems: missing file, unparseable line, malformed
// JSON record.  The CLI maps it to exit code 2.  Messages include the file
// and 1-based line number where that makes sense.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// A set of n points in R^k, row major.  ids are optional: when empty, points
// are identified by their input position and id(i) synthesizes "p<i>".
// Samplers produce id-less clouds; file loaders always fill ids in.
struct PointCloud {
  int dims = 0;
  std::vector<double> coords;       // n * dims
  std::vector<std::string> ids;     // empty, or one id per point

  std::size_t size() const { return dims == 0 ? 0 : coords.size() / dims; }
  double at(std::size_t i, int d) const { return coords[i * dims + d]; }
  std::string id(std::size_t i) const;

  // Validates shape: dims >= 1, coords.size() divisible by dims, ids either
  // empty or matching, all coordinates finite, ids unique.
  static PointCloud create(int dims, std::vector<double> coords,
                           std::vector<std::string> ids = {});
};

// Grid extents g_1 x ... x g_k.  Cells are addressed by integer index
// vectors (i_1, ..., i_k) with 0 <= i_d < g_d.
struct LayoutShape {
  std::vector<int> extents;

  int dims() const { return static_cast<int>(extents.size()); }
  std::int64_t cell_count() const;

  // Parses "8x8", "2x4x4", "12".  Extents must be >= 1.
  static LayoutShape parse(const std::string& text);
  std::string str() const;
};

// How the placement picks its split dimension at each recursion node.
//
// greedy: split the dimension with the largest remaining extent; ties go to
// the dimension appearing earliest in tie_break (default: last dimension
// first, i.e. {k-1, k-2, ..., 0}).
//
// iterative: depth d proposes dimension (start_dimension + d) mod k and
// scans forward cyclically past dimensions whose remaining extent is 1.
// start_dimension < 0 means "last dimension".
enum class SplitMode { greedy, iterative };

struct SplitStrategy {
  SplitMode mode = SplitMode::greedy;
  std::vector<int> tie_break;   // greedy only; empty = default order
  int start_dimension = -1;     // iterative only; -1 = last dimension

  static SplitStrategy parse(const std::string& name);  // "greedy"|"iterative"
  std::string str() const;
};

// Output of a placement: one grid cell per point, same order as the cloud.
// cells is n * k row major.  A valid assignment is a bijection between the
// points and the layout's cells, which requires n == cell_count().
struct GridAssignment {
  LayoutShape layout;
  std::vector<std::int32_t> cells;   // n * layout.dims()
  std::vector<std::string> ids;      // empty, or one id per point

  std::size_t size() const;
  std::int32_t cell(std::size_t i, int d) const {
    return cells[i * layout.dims() + d];
  }
  std::string id(std::size_t i) const;

  // Throws ValidationError unless the assignment is a bijection onto the
  // layout's cells (every index in range, no cell used twice, n matches).
  void validate_bijection() const;
};

}  // namespace topicgrids
