#pragma once

#include "topicgrids/types.hpp"

#include <cstdint>

namespace topicgrids {

// One logged action: an entity touched a content document at a UTC instant,
// with a relevance score per topic.  Timestamps are seconds since the Unix
// epoch; calendar handling stays in helper functions.
struct ActivityRecord {
  std::string entity;
  std::int64_t ts = 0;
  std::string doc_id;
  std::vector<double> relevance;
};

// Half-open interval [start, end) in epoch seconds.
struct TimeWindow {
  std::int64_t start = 0;
  std::int64_t end = 0;
  bool contains(std::int64_t t) const { return t >= start && t < end; }
};

// The deduplicated activities of an entity (or a peer group) inside a
// window: at most one record per doc_id, the earliest by timestamp with
// input order breaking ties.  Kept records preserve input order, which makes
// rebuilding from a set's own records the identity.
struct BehaviorSet {
  std::string who;
  TimeWindow window;
  std::vector<ActivityRecord> records;

  // 0 when empty; otherwise the uniform relevance-vector length.
  std::size_t topic_count() const;
};

BehaviorSet build_behavior_set(const std::vector<ActivityRecord>& records,
                               const std::vector<std::string>& entities,
                               TimeWindow window);

// Per-topic values attached to a fixed topic placement.  values[i] belongs
// to assignment row i; the row's id names the topic and must parse as its
// relevance-column index.
struct GridValues {
  enum class Kind { volume, risk };
  Kind kind = Kind::volume;
  GridAssignment assignment;
  std::vector<double> values;
};

// value_t = log(sum of r_t over the set + 1); empty sets give all zeros.
GridValues topical_volume(const BehaviorSet& set,
                          const GridAssignment& assignment);

// Per-topic risk of `current` against `benchmark`:
//   R_t = log(sum_current r_t + 1) - log(sum_benchmark r_t + 1)
// i.e. current volume minus benchmark volume; antisymmetric under swap.
GridValues topical_risk(const BehaviorSet& benchmark,
                        const BehaviorSet& current,
                        const GridAssignment& assignment);

// Daily risk rows over a sequence of calendar months: row at step time tau
// scores the month-to-date window [month_start, tau + step) against the
// fixed benchmark window, so a burst of activity keeps its column hot until
// the month ends and the accumulation resets.  Columns follow the 1-D grid
// index order of the assignment.
struct CurtainMatrix {
  std::vector<std::int64_t> step_starts;  // row times (epoch seconds)
  std::vector<std::string> topic_ids;     // column -> topic id
  GridAssignment assignment;              // the defining 1-D placement
  std::vector<double> cells;              // rows * cols, row major

  std::size_t rows() const { return step_starts.size(); }
  std::size_t cols() const { return topic_ids.size(); }
  double at(std::size_t r, std::size_t c) const { return cells[r * cols() + c]; }
};

CurtainMatrix topic_curtain(const std::vector<ActivityRecord>& records,
                            const std::string& entity, TimeWindow benchmark,
                            const std::vector<TimeWindow>& months,
                            const GridAssignment& assignment_1d,
                            std::int64_t step_seconds = 86400);

// One risk grid per window against a fixed benchmark, all on the same 2-D
// (or 3-D) assignment so cells are comparable across steps.
std::vector<GridValues> topic_shower(const std::vector<ActivityRecord>& records,
                                     const std::string& entity,
                                     TimeWindow benchmark,
                                     const std::vector<TimeWindow>& windows,
                                     const GridAssignment& assignment);

// Calendar-month windows (UTC) covering [first, last]: one TimeWindow per
// month from the month containing `first` through the month containing
// `last`, clamped nowhere (full months).
std::vector<TimeWindow> month_windows(std::int64_t first, std::int64_t last);

// Maps each assignment row's id to its relevance-column index, validating
// integer ids in [0, topic_count).  Shared by the GridValues producers.
std::vector<std::size_t> topic_columns(const GridAssignment& assignment,
                                       std::size_t topic_count);

}  // namespace topicgrids
