#include "topicgrids/activity.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace topicgrids {

std::size_t BehaviorSet::topic_count() const {
  return records.empty() ? 0 : records.front().relevance.size();
}

BehaviorSet build_behavior_set(const std::vector<ActivityRecord>& records,
                               const std::vector<std::string>& entities,
                               TimeWindow window) {
  if (window.start >= window.end)
    throw ValidationError("behavior window is empty (start >= end)");
  if (entities.empty())
    throw ValidationError("behavior set needs at least one entity");
  const std::unordered_set<std::string> who(entities.begin(), entities.end());

  // Winner per doc_id: earliest timestamp, input order breaking ties.
  std::unordered_map<std::string, std::size_t> winner;
  std::vector<std::size_t> in_window;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const ActivityRecord& rec = records[i];
    if (!who.count(rec.entity) || !window.contains(rec.ts)) continue;
    in_window.push_back(i);
    auto [it, fresh] = winner.emplace(rec.doc_id, i);
    if (!fresh && rec.ts < records[it->second].ts) it->second = i;
  }

  BehaviorSet set;
  set.who = entities.size() == 1 ? entities.front() : "group";
  set.window = window;
  std::size_t topic_count = 0;
  for (std::size_t i : in_window) {
    if (winner.at(records[i].doc_id) != i) continue;
    const ActivityRecord& rec = records[i];
    for (double r : rec.relevance)
      if (!std::isfinite(r) || r < 0)
        throw ValidationError("doc '" + rec.doc_id +
                              "': relevance values must be finite and >= 0");
    if (set.records.empty()) {
      topic_count = rec.relevance.size();
    } else if (rec.relevance.size() != topic_count) {
      throw ValidationError("doc '" + rec.doc_id + "': relevance length " +
                            std::to_string(rec.relevance.size()) +
                            " differs from " + std::to_string(topic_count));
    }
    set.records.push_back(rec);
  }
  return set;
}

std::vector<std::size_t> topic_columns(const GridAssignment& assignment,
                                       std::size_t topic_count) {
  const std::size_t n = assignment.size();
  std::vector<std::size_t> cols(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = assignment.id(i);
    std::size_t v = 0;
    const char* last = id.data() + id.size();
    auto [ptr, ec] = std::from_chars(id.data(), last, v);
    if (ec != std::errc() || ptr != last || v >= topic_count)
      throw ValidationError("topic id '" + id +
                            "' is not a relevance column index below " +
                            std::to_string(topic_count));
    cols[i] = v;
  }
  return cols;
}

namespace {

std::vector<double> topic_sums(const BehaviorSet& set) {
  std::vector<double> sums(set.topic_count(), 0.0);
  for (const ActivityRecord& rec : set.records)
    for (std::size_t t = 0; t < sums.size(); ++t) sums[t] += rec.relevance[t];
  return sums;
}

// log(sum + 1) per assignment row; zero topic_count means "no activity at
// all", which is all zeros regardless of the assignment's ids.
std::vector<double> volume_values(const std::vector<double>& sums,
                                  const GridAssignment& assignment) {
  std::vector<double> values(assignment.size(), 0.0);
  if (sums.empty()) return values;
  const std::vector<std::size_t> cols = topic_columns(assignment, sums.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = std::log1p(sums[cols[i]]);
  return values;
}

}  // namespace

GridValues topical_volume(const BehaviorSet& set,
                          const GridAssignment& assignment) {
  GridValues out;
  out.kind = GridValues::Kind::volume;
  out.assignment = assignment;
  out.values = volume_values(topic_sums(set), assignment);
  return out;
}

GridValues topical_risk(const BehaviorSet& benchmark,
                        const BehaviorSet& current,
                        const GridAssignment& assignment) {
  const std::size_t t1 = benchmark.topic_count();
  const std::size_t t2 = current.topic_count();
  if (t1 != 0 && t2 != 0 && t1 != t2)
    throw ValidationError("behavior sets disagree on topic count (" +
                          std::to_string(t1) + " vs " + std::to_string(t2) + ")");
  const std::vector<double> v1 = volume_values(topic_sums(benchmark), assignment);
  const std::vector<double> v2 = volume_values(topic_sums(current), assignment);

  GridValues out;
  out.kind = GridValues::Kind::risk;
  out.assignment = assignment;
  out.values.resize(v1.size());
  for (std::size_t i = 0; i < v1.size(); ++i) out.values[i] = v2[i] - v1[i];
  return out;
}

namespace {

void check_windows_ordered(const std::vector<TimeWindow>& windows,
                           const char* what) {
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (windows[i].start >= windows[i].end)
      throw ValidationError(std::string(what) + " window " + std::to_string(i) +
                            " is empty");
    if (i > 0 && windows[i].start < windows[i - 1].end)
      throw ValidationError(std::string(what) +
                            " windows must be sorted and non-overlapping");
  }
}

}  // namespace

CurtainMatrix topic_curtain(const std::vector<ActivityRecord>& records,
                            const std::string& entity, TimeWindow benchmark,
                            const std::vector<TimeWindow>& months,
                            const GridAssignment& assignment_1d,
                            std::int64_t step_seconds) {
  if (assignment_1d.layout.dims() != 1)
    throw ValidationError("topic curtain needs a 1-D assignment");
  if (step_seconds < 1) throw ValidationError("step must be >= 1 second");
  check_windows_ordered(months, "month");
  assignment_1d.validate_bijection();

  CurtainMatrix m;
  m.assignment = assignment_1d;

  // Columns in grid-index order.
  const std::size_t n = assignment_1d.size();
  std::vector<std::size_t> row_of_index(n);
  for (std::size_t i = 0; i < n; ++i)
    row_of_index[static_cast<std::size_t>(assignment_1d.cell(i, 0))] = i;
  m.topic_ids.resize(n);
  for (std::size_t x = 0; x < n; ++x)
    m.topic_ids[x] = assignment_1d.id(row_of_index[x]);

  const BehaviorSet bench = build_behavior_set(records, {entity}, benchmark);

  for (const TimeWindow& month : months) {
    for (std::int64_t tau = month.start; tau < month.end; tau += step_seconds) {
      const TimeWindow to_date{month.start,
                               std::min(tau + step_seconds, month.end)};
      const BehaviorSet so_far = build_behavior_set(records, {entity}, to_date);
      const GridValues risk = topical_risk(bench, so_far, assignment_1d);
      m.step_starts.push_back(tau);
      for (std::size_t x = 0; x < n; ++x)
        m.cells.push_back(risk.values[row_of_index[x]]);
    }
  }
  return m;
}

std::vector<GridValues> topic_shower(const std::vector<ActivityRecord>& records,
                                     const std::string& entity,
                                     TimeWindow benchmark,
                                     const std::vector<TimeWindow>& windows,
                                     const GridAssignment& assignment) {
  if (windows.empty()) throw ValidationError("topic shower needs windows");
  check_windows_ordered(windows, "shower");
  const BehaviorSet bench = build_behavior_set(records, {entity}, benchmark);
  std::vector<GridValues> out;
  out.reserve(windows.size());
  for (const TimeWindow& w : windows) {
    const BehaviorSet current = build_behavior_set(records, {entity}, w);
    out.push_back(topical_risk(bench, current, assignment));
  }
  return out;
}

std::vector<TimeWindow> month_windows(std::int64_t first, std::int64_t last) {
  using namespace std::chrono;
  if (first > last)
    throw ValidationError("month range start is after its end");
  const year_month_day first_day{floor<days>(sys_seconds{seconds{first}})};
  const year_month_day last_day{floor<days>(sys_seconds{seconds{last}})};
  year_month ym{first_day.year(), first_day.month()};
  const year_month ym_end{last_day.year(), last_day.month()};

  std::vector<TimeWindow> windows;
  while (ym <= ym_end) {
    const year_month next = ym + months{1};
    const sys_days start = sys_days{ym.year() / ym.month() / day{1}};
    const sys_days end = sys_days{next.year() / next.month() / day{1}};
    windows.push_back({duration_cast<seconds>(start.time_since_epoch()).count(),
                       duration_cast<seconds>(end.time_since_epoch()).count()});
    ym = next;
  }
  return windows;
}

}  // namespace topicgrids
