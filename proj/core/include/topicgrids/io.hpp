#pragma once

#include "topicgrids/activity.hpp"
#include "topicgrids/bench.hpp"
#include "topicgrids/metrics.hpp"
#include "topicgrids/types.hpp"

#include <iosfwd>
#include <string>

namespace topicgrids {

// Shortest decimal string that parses back to exactly the same double; used
// for every value cell in the CSV formats so round-trips are bit-exact.
std::string format_double(double v);

// Fixed 6-significant-digit formatting for console summaries.
std::string format_g6(double v);

// UTC instants as "2026-01-05T10:30:00Z"; parse also accepts a bare date
// "2026-01-05" (midnight).  Seconds since the Unix epoch.
std::int64_t parse_instant(const std::string& text);
std::string format_instant(std::int64_t ts);

// "<instant>..<instant>", half open.
TimeWindow parse_window(const std::string& text);

// Points CSV: header "id,x0,x1[,...]", one row per point, row order
// preserved (it is the final sort tie-break).
PointCloud load_points(const std::string& path);
void save_points(const PointCloud& cloud, const std::string& path);

// Assignment CSV: header "id,i0,i1[,...]", rows sorted lexicographically by
// grid index for diff stability.  Extents are recovered as max index + 1
// per dimension; the loaded file must be bijective.
void save_assignment(const GridAssignment& assignment, const std::string& path);
GridAssignment load_assignment(const std::string& path);

// Activity log: one JSON object per line with keys entity (string), ts
// (ISO-8601 UTC string), doc_id (string), relevance (array of T numbers,
// same T on every line).
std::vector<ActivityRecord> load_activities(const std::string& path);
void save_activities(const std::vector<ActivityRecord>& records,
                     const std::string& path);

// Grid values CSV: header "topic_id,i0,i1[,...],value", rows sorted by grid
// index.  The kind (volume/risk) is not stored; callers track it.
void write_grid_values_csv(std::ostream& out, const GridValues& values);
void save_grid_values(const GridValues& values, const std::string& path);
struct LoadedGridValues {
  GridAssignment assignment;
  std::vector<double> values;
};
LoadedGridValues load_grid_values(const std::string& path);

// Curtain CSV: header "time,0,1,...,n-1" (1-D grid indices), one row per
// time step, times as ISO instants.
void write_curtain_csv(std::ostream& out, const CurtainMatrix& matrix);
void save_curtain(const CurtainMatrix& matrix, const std::string& path);
CurtainMatrix load_curtain(const std::string& path);

// Benchmark CSV: header
//   layout,sampling,strategy,constraints,trials,err1_mean,err1_stderr,
//   err2_mean,err2_stderr[,per-dim mean/stderr columns]
// Per-dim columns are emitted for the layouts' common dimensionality.
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);
void save_bench_csv(const std::vector<BenchRow>& rows, const std::string& path);
std::vector<BenchRow> load_bench_csv(const std::string& path);

// Pretty-printed JSON view of an ErrorReport (counts, ratios, bound check).
std::string error_report_json(const ErrorReport& report);

}  // namespace topicgrids
