#include "topicgrids/io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "json.hpp"

namespace topicgrids {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string location(const std::string& path, std::size_t line) {
  return path + ":" + std::to_string(line);
}

// Reads a line and strips a trailing CR so CRLF files parse too.
bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
}

// The benchmark CSV's sampling field can itself contain commas
// ("gaussian:theta=...,phi=2"), so that one format uses standard CSV
// quoting.  The other formats forbid commas in ids instead and stay on the
// plain splitter above.
std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_quoted(const std::string& line,
                                          const std::string& where) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0;; ++i) {
    if (i == line.size()) {
      if (quoted) throw IoError(where + ": unterminated quoted field");
      fields.push_back(cur);
      return fields;
    }
    const char ch = line[i];
    if (quoted) {
      if (ch != '"') {
        cur += ch;
      } else if (i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else {
        quoted = false;
      }
    } else if (ch == '"' && cur.empty()) {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
}

double parse_double_field(const std::string& text, const std::string& where) {
  double v = 0;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, v);
  if (ec != std::errc() || ptr != last)
    throw IoError(where + ": bad numeric value '" + text + "'");
  return v;
}

std::int64_t parse_int_field(const std::string& text, const std::string& where) {
  std::int64_t v = 0;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, v);
  if (ec != std::errc() || ptr != last)
    throw IoError(where + ": bad integer '" + text + "'");
  return v;
}

void check_id_writable(const std::string& id) {
  if (id.empty())
    throw ValidationError("empty id cannot be serialized");
  if (id.find_first_of(",\r\n") != std::string::npos)
    throw ValidationError("id '" + id + "' contains a comma or line break");
}

// Orders assignment rows by their grid index vectors, read left to right.
std::vector<std::size_t> rows_by_grid_index(const GridAssignment& asg) {
  const int k = asg.layout.dims();
  std::vector<std::size_t> order(asg.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    for (int d = 0; d < k; ++d)
      if (asg.cell(a, d) != asg.cell(b, d)) return asg.cell(a, d) < asg.cell(b, d);
    return false;
  });
  return order;
}

}  // namespace

std::int64_t parse_instant(const std::string& text) {
  using namespace std::chrono;
  int y = 0;
  unsigned mo = 0, d = 0, h = 0, mi = 0, s = 0;
  char z = 0;
  bool date_only = false;
  if (text.size() == 20 &&
      std::sscanf(text.c_str(), "%4d-%2u-%2uT%2u:%2u:%2u%c", &y, &mo, &d, &h,
                  &mi, &s, &z) == 7 &&
      z == 'Z') {
    // full instant
  } else if (text.size() == 10 &&
             std::sscanf(text.c_str(), "%4d-%2u-%2u", &y, &mo, &d) == 3) {
    date_only = true;
  } else {
    throw ValidationError("bad instant '" + text +
                          "' (expected YYYY-MM-DDTHH:MM:SSZ or YYYY-MM-DD)");
  }
  const year_month_day ymd{year{y}, month{mo}, day{d}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 59)
    throw ValidationError("instant '" + text + "' is out of range");
  (void)date_only;
  const sys_days days_part{ymd};
  return duration_cast<seconds>(days_part.time_since_epoch()).count() +
         h * 3600 + mi * 60 + s;
}

std::string format_instant(std::int64_t ts) {
  using namespace std::chrono;
  const sys_seconds tp{seconds{ts}};
  const sys_days day_part = floor<days>(tp);
  const year_month_day ymd{day_part};
  const auto tod = hh_mm_ss{tp - day_part};
  char buf[48];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ",
                int(ymd.year()), unsigned(ymd.month()), unsigned(ymd.day()),
                static_cast<int>(tod.hours().count()),
                static_cast<int>(tod.minutes().count()),
                static_cast<int>(tod.seconds().count()));
  return buf;
}

TimeWindow parse_window(const std::string& text) {
  const std::size_t sep = text.find("..");
  if (sep == std::string::npos)
    throw ValidationError("bad window '" + text + "' (expected START..END)");
  TimeWindow w;
  w.start = parse_instant(text.substr(0, sep));
  w.end = parse_instant(text.substr(sep + 2));
  if (w.start >= w.end)
    throw ValidationError("window '" + text + "' is empty");
  return w;
}

PointCloud load_points(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!next_line(in, line))
    throw IoError(location(path, 1) + ": missing header");
  const std::vector<std::string> header = split_csv(line);
  if (header.size() < 2 || header[0] != "id")
    throw IoError(location(path, 1) + ": expected header id,x0,x1,...");
  const int k = static_cast<int>(header.size()) - 1;
  for (int d = 0; d < k; ++d)
    if (header[d + 1] != "x" + std::to_string(d))
      throw IoError(location(path, 1) + ": expected column x" +
                    std::to_string(d) + ", got '" + header[d + 1] + "'");

  std::vector<std::string> ids;
  std::vector<double> coords;
  std::size_t lineno = 1;
  std::unordered_map<std::string, std::size_t> seen;
  while (next_line(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != header.size())
      throw IoError(location(path, lineno) + ": expected " +
                    std::to_string(header.size()) + " fields, got " +
                    std::to_string(fields.size()));
    if (fields[0].empty())
      throw IoError(location(path, lineno) + ": empty id");
    auto [it, fresh] = seen.emplace(fields[0], lineno);
    if (!fresh)
      throw IoError(location(path, lineno) + ": duplicate id '" + fields[0] +
                    "' (first at line " + std::to_string(it->second) + ")");
    ids.push_back(fields[0]);
    for (int d = 0; d < k; ++d) {
      const double v =
          parse_double_field(fields[d + 1], location(path, lineno));
      if (!std::isfinite(v))
        throw IoError(location(path, lineno) + ": non-finite coordinate for '" +
                      fields[0] + "'");
      coords.push_back(v);
    }
  }
  return PointCloud::create(k, std::move(coords), std::move(ids));
}

void save_points(const PointCloud& cloud, const std::string& path) {
  std::ofstream out = open_output(path);
  out << "id";
  for (int d = 0; d < cloud.dims; ++d) out << ",x" << d;
  out << '\n';
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const std::string id = cloud.id(i);
    check_id_writable(id);
    out << id;
    for (int d = 0; d < cloud.dims; ++d)
      out << ',' << format_double(cloud.at(i, d));
    out << '\n';
  }
  finish_output(out, path);
}

void save_assignment(const GridAssignment& assignment,
                     const std::string& path) {
  assignment.validate_bijection();
  const int k = assignment.layout.dims();
  std::ofstream out = open_output(path);
  out << "id";
  for (int d = 0; d < k; ++d) out << ",i" << d;
  out << '\n';
  for (std::size_t row : rows_by_grid_index(assignment)) {
    const std::string id = assignment.id(row);
    check_id_writable(id);
    out << id;
    for (int d = 0; d < k; ++d) out << ',' << assignment.cell(row, d);
    out << '\n';
  }
  finish_output(out, path);
}

namespace {

// Shared by load_assignment and load_grid_values: rows of id + k indices,
// extents recovered as max index + 1, bijectivity enforced.
GridAssignment parse_assignment_rows(
    const std::vector<std::vector<std::string>>& rows, int k,
    const std::string& path, const std::vector<std::size_t>& linenos,
    std::size_t index_offset) {
  GridAssignment asg;
  asg.layout.extents.assign(k, 1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string where = location(path, linenos[r]);
    asg.ids.push_back(rows[r][index_offset - 1]);
    for (int d = 0; d < k; ++d) {
      const std::int64_t v = parse_int_field(rows[r][index_offset + d], where);
      if (v < 0 || v > std::numeric_limits<std::int32_t>::max())
        throw IoError(where + ": grid index out of range");
      asg.cells.push_back(static_cast<std::int32_t>(v));
      asg.layout.extents[d] =
          std::max(asg.layout.extents[d], static_cast<int>(v) + 1);
    }
  }
  asg.validate_bijection();
  return asg;
}

}  // namespace

GridAssignment load_assignment(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!next_line(in, line))
    throw IoError(location(path, 1) + ": missing header");
  const std::vector<std::string> header = split_csv(line);
  if (header.size() < 2 || header[0] != "id")
    throw IoError(location(path, 1) + ": expected header id,i0,i1,...");
  const int k = static_cast<int>(header.size()) - 1;
  for (int d = 0; d < k; ++d)
    if (header[d + 1] != "i" + std::to_string(d))
      throw IoError(location(path, 1) + ": expected column i" +
                    std::to_string(d) + ", got '" + header[d + 1] + "'");

  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> linenos;
  std::size_t lineno = 1;
  while (next_line(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv(line);
    if (fields.size() != header.size())
      throw IoError(location(path, lineno) + ": expected " +
                    std::to_string(header.size()) + " fields, got " +
                    std::to_string(fields.size()));
    if (fields[0].empty())
      throw IoError(location(path, lineno) + ": empty id");
    rows.push_back(std::move(fields));
    linenos.push_back(lineno);
  }
  return parse_assignment_rows(rows, k, path, linenos, 1);
}

std::vector<ActivityRecord> load_activities(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<ActivityRecord> records;
  std::string line;
  std::size_t lineno = 0;
  std::size_t topic_count = 0;
  while (next_line(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw IoError(location(path, lineno) + ": " + e.what());
    }
    if (!j.is_object())
      throw IoError(location(path, lineno) + ": record is not a JSON object");
    ActivityRecord rec;
    try {
      rec.entity = j.at("entity").get<std::string>();
      rec.doc_id = j.at("doc_id").get<std::string>();
      const std::string ts = j.at("ts").get<std::string>();
      rec.ts = parse_instant(ts);
      const nlohmann::json& rel = j.at("relevance");
      if (!rel.is_array())
        throw ValidationError("relevance is not an array");
      for (const nlohmann::json& v : rel) {
        if (!v.is_number())
          throw ValidationError("relevance entries must be numbers");
        rec.relevance.push_back(v.get<double>());
      }
    } catch (const nlohmann::json::exception& e) {
      throw IoError(location(path, lineno) + ": " + e.what());
    } catch (const ValidationError& e) {
      throw IoError(location(path, lineno) + ": " + e.what());
    }
    for (double r : rec.relevance)
      if (!std::isfinite(r) || r < 0)
        throw IoError(location(path, lineno) +
                      ": relevance values must be finite and >= 0");
    if (records.empty()) {
      topic_count = rec.relevance.size();
    } else if (rec.relevance.size() != topic_count) {
      throw IoError(location(path, lineno) + ": relevance length " +
                    std::to_string(rec.relevance.size()) +
                    " differs from earlier records (" +
                    std::to_string(topic_count) + ")");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void save_activities(const std::vector<ActivityRecord>& records,
                     const std::string& path) {
  std::ofstream out = open_output(path);
  for (const ActivityRecord& rec : records) {
    nlohmann::json j;
    j["entity"] = rec.entity;
    j["ts"] = format_instant(rec.ts);
    j["doc_id"] = rec.doc_id;
    j["relevance"] = rec.relevance;
    out << j.dump() << '\n';
  }
  finish_output(out, path);
}

void write_grid_values_csv(std::ostream& out, const GridValues& values) {
  const GridAssignment& asg = values.assignment;
  if (values.values.size() != asg.size())
    throw ValidationError("grid values do not match the assignment size");
  const int k = asg.layout.dims();
  out << "topic_id";
  for (int d = 0; d < k; ++d) out << ",i" << d;
  out << ",value\n";
  for (std::size_t row : rows_by_grid_index(asg)) {
    const std::string id = asg.id(row);
    check_id_writable(id);
    out << id;
    for (int d = 0; d < k; ++d) out << ',' << asg.cell(row, d);
    out << ',' << format_double(values.values[row]) << '\n';
  }
}

void save_grid_values(const GridValues& values, const std::string& path) {
  std::ofstream out = open_output(path);
  write_grid_values_csv(out, values);
  finish_output(out, path);
}

LoadedGridValues load_grid_values(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!next_line(in, line))
    throw IoError(location(path, 1) + ": missing header");
  const std::vector<std::string> header = split_csv(line);
  if (header.size() < 3 || header[0] != "topic_id" ||
      header.back() != "value")
    throw IoError(location(path, 1) +
                  ": expected header topic_id,i0,...,value");
  const int k = static_cast<int>(header.size()) - 2;
  for (int d = 0; d < k; ++d)
    if (header[d + 1] != "i" + std::to_string(d))
      throw IoError(location(path, 1) + ": expected column i" +
                    std::to_string(d) + ", got '" + header[d + 1] + "'");

  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> linenos;
  std::vector<double> values;
  std::string raw;
  std::size_t lineno = 1;
  while (next_line(in, raw)) {
    ++lineno;
    if (raw.empty()) continue;
    std::vector<std::string> fields = split_csv(raw);
    if (fields.size() != header.size())
      throw IoError(location(path, lineno) + ": expected " +
                    std::to_string(header.size()) + " fields, got " +
                    std::to_string(fields.size()));
    values.push_back(parse_double_field(fields.back(), location(path, lineno)));
    fields.pop_back();
    rows.push_back(std::move(fields));
    linenos.push_back(lineno);
  }
  LoadedGridValues out;
  out.assignment = parse_assignment_rows(rows, k, path, linenos, 1);
  out.values = std::move(values);
  return out;
}

void write_curtain_csv(std::ostream& out, const CurtainMatrix& matrix) {
  out << "time";
  for (std::size_t c = 0; c < matrix.cols(); ++c) out << ',' << c;
  out << '\n';
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    out << format_instant(matrix.step_starts[r]);
    for (std::size_t c = 0; c < matrix.cols(); ++c)
      out << ',' << format_double(matrix.at(r, c));
    out << '\n';
  }
}

void save_curtain(const CurtainMatrix& matrix, const std::string& path) {
  std::ofstream out = open_output(path);
  write_curtain_csv(out, matrix);
  finish_output(out, path);
}

CurtainMatrix load_curtain(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!next_line(in, line))
    throw IoError(location(path, 1) + ": missing header");
  const std::vector<std::string> header = split_csv(line);
  if (header.size() < 2 || header[0] != "time")
    throw IoError(location(path, 1) + ": expected header time,0,1,...");
  const std::size_t cols = header.size() - 1;
  for (std::size_t c = 0; c < cols; ++c)
    if (header[c + 1] != std::to_string(c))
      throw IoError(location(path, 1) + ": expected column " +
                    std::to_string(c) + ", got '" + header[c + 1] + "'");

  CurtainMatrix m;
  m.topic_ids.resize(cols);
  m.assignment.layout.extents = {static_cast<int>(cols)};
  for (std::size_t c = 0; c < cols; ++c) {
    m.topic_ids[c] = std::to_string(c);
    m.assignment.ids.push_back(std::to_string(c));
    m.assignment.cells.push_back(static_cast<std::int32_t>(c));
  }
  std::size_t lineno = 1;
  while (next_line(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != header.size())
      throw IoError(location(path, lineno) + ": expected " +
                    std::to_string(header.size()) + " fields, got " +
                    std::to_string(fields.size()));
    try {
      m.step_starts.push_back(parse_instant(fields[0]));
    } catch (const ValidationError& e) {
      throw IoError(location(path, lineno) + ": " + e.what());
    }
    for (std::size_t c = 0; c < cols; ++c)
      m.cells.push_back(
          parse_double_field(fields[c + 1], location(path, lineno)));
  }
  return m;
}

namespace {

int common_dims(const std::vector<BenchRow>& rows) {
  if (rows.empty()) throw ValidationError("no benchmark rows to serialize");
  const int k = rows.front().layout.dims();
  for (const BenchRow& row : rows)
    if (row.layout.dims() != k)
      throw ValidationError("benchmark rows mix dimensionalities");
  return k;
}

}  // namespace

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  const int k = common_dims(rows);
  out << "layout,sampling,strategy,constraints,trials,"
         "err1_mean,err1_stderr,err2_mean,err2_stderr";
  for (int d = 0; d < k; ++d)
    out << ",err1_dim" << d << "_mean,err1_dim" << d << "_stderr";
  for (int d = 0; d < k; ++d)
    out << ",err2_dim" << d << "_mean,err2_dim" << d << "_stderr";
  out << '\n';
  for (const BenchRow& row : rows) {
    out << row.layout.str() << ',' << csv_quote(row.sampling) << ','
        << row.strategy
        << ',' << row.constraints << ',' << row.trials << ','
        << format_double(row.stats.err1.mean) << ','
        << format_double(row.stats.err1.stderr_) << ','
        << format_double(row.stats.err2.mean) << ','
        << format_double(row.stats.err2.stderr_);
    for (int d = 0; d < k; ++d)
      out << ',' << format_double(row.stats.err1_dim[d].mean) << ','
          << format_double(row.stats.err1_dim[d].stderr_);
    for (int d = 0; d < k; ++d)
      out << ',' << format_double(row.stats.err2_dim[d].mean) << ','
          << format_double(row.stats.err2_dim[d].stderr_);
    out << '\n';
  }
}

void save_bench_csv(const std::vector<BenchRow>& rows,
                    const std::string& path) {
  std::ofstream out = open_output(path);
  write_bench_csv(out, rows);
  finish_output(out, path);
}

std::vector<BenchRow> load_bench_csv(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!next_line(in, line))
    throw IoError(location(path, 1) + ": missing header");
  const std::vector<std::string> header = split_csv(line);
  static const char* base[] = {"layout",    "sampling",    "strategy",
                               "constraints", "trials",    "err1_mean",
                               "err1_stderr", "err2_mean", "err2_stderr"};
  if (header.size() < 9)
    throw IoError(location(path, 1) + ": benchmark header too short");
  for (std::size_t i = 0; i < 9; ++i)
    if (header[i] != base[i])
      throw IoError(location(path, 1) + ": expected column '" +
                    std::string(base[i]) + "', got '" + header[i] + "'");
  if ((header.size() - 9) % 4 != 0)
    throw IoError(location(path, 1) + ": malformed per-dimension columns");
  const int k = static_cast<int>((header.size() - 9) / 4);

  std::vector<BenchRow> rows;
  std::size_t lineno = 1;
  while (next_line(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string where = location(path, lineno);
    const std::vector<std::string> f = split_csv_quoted(line, where);
    if (f.size() != header.size())
      throw IoError(where + ": expected " + std::to_string(header.size()) +
                    " fields, got " + std::to_string(f.size()));
    BenchRow row;
    try {
      row.layout = LayoutShape::parse(f[0]);
    } catch (const ValidationError& e) {
      throw IoError(where + ": " + e.what());
    }
    row.sampling = f[1];
    row.strategy = f[2];
    row.constraints = parse_int_field(f[3], where);
    row.trials = static_cast<int>(parse_int_field(f[4], where));
    row.stats.trials = row.trials;
    const double root =
        row.trials > 0 ? std::sqrt(static_cast<double>(row.trials)) : 0.0;
    auto fill = [&](Aggregate& a, std::size_t mean_idx) {
      a.mean = parse_double_field(f[mean_idx], where);
      a.stderr_ = parse_double_field(f[mean_idx + 1], where);
      a.stddev = a.stderr_ * root;
    };
    fill(row.stats.err1, 5);
    fill(row.stats.err2, 7);
    row.stats.err1_dim.resize(k);
    row.stats.err2_dim.resize(k);
    for (int d = 0; d < k; ++d) fill(row.stats.err1_dim[d], 9 + 2 * d);
    for (int d = 0; d < k; ++d)
      fill(row.stats.err2_dim[d], 9 + 2 * k + 2 * d);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string error_report_json(const ErrorReport& report) {
  nlohmann::json j;
  j["n"] = report.n;
  j["dims"] = report.dims;
  j["pairs"] = report.pairs();
  j["constraints"] = report.constraints();
  j["type1"] = {{"total", report.type1_total()},
                {"by_dim", report.type1_by_dim}};
  j["type2"] = {{"total", report.type2_total()},
                {"by_dim", report.type2_by_dim}};
  j["satisfied_type1"] = report.satisfied_type1();
  j["err1"] = report.err1();
  j["err2"] = report.err2();
  std::vector<double> e1(report.dims), e2(report.dims);
  for (int d = 0; d < report.dims; ++d) {
    e1[d] = report.err1_dim(d);
    e2[d] = report.err2_dim(d);
  }
  j["err1_by_dim"] = e1;
  j["err2_by_dim"] = e2;
  j["bound"] = {{"limit", report.dims <= 1
                              ? 0.0
                              : static_cast<double>(report.dims - 1) /
                                    report.dims},
                {"holds", check_bound(report, report.dims)}};
  return j.dump(2) + "\n";
}

}  // namespace topicgrids
