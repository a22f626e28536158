#include "topicgrids/metrics.hpp"

#include <numeric>
#include <string>
#include <unordered_map>

namespace topicgrids {

std::int64_t ErrorReport::type1_total() const {
  return std::accumulate(type1_by_dim.begin(), type1_by_dim.end(),
                         std::int64_t{0});
}

std::int64_t ErrorReport::type2_total() const {
  return std::accumulate(type2_by_dim.begin(), type2_by_dim.end(),
                         std::int64_t{0});
}

double ErrorReport::err1() const {
  const std::int64_t c = constraints();
  return c == 0 ? 0.0 : static_cast<double>(type1_total()) / c;
}

double ErrorReport::err2() const {
  const std::int64_t c = constraints();
  return c == 0 ? 0.0 : static_cast<double>(type2_total()) / c;
}

double ErrorReport::err1_dim(int d) const {
  const std::int64_t p = pairs();
  return p == 0 ? 0.0 : static_cast<double>(type1_by_dim[d]) / p;
}

double ErrorReport::err2_dim(int d) const {
  const std::int64_t p = pairs();
  return p == 0 ? 0.0 : static_cast<double>(type2_by_dim[d]) / p;
}

namespace {

// Maps cloud row -> assignment row.  Identity when either side is id-less
// (positional matching); otherwise resolved through the assignment's ids.
std::vector<std::size_t> match_rows(const PointCloud& cloud,
                                    const GridAssignment& assignment) {
  const std::size_t n = cloud.size();
  if (assignment.size() != n)
    throw ValidationError("assignment has " + std::to_string(assignment.size()) +
                          " cells for " + std::to_string(n) + " points");
  std::vector<std::size_t> row(n);
  if (cloud.ids.empty() || assignment.ids.empty()) {
    std::iota(row.begin(), row.end(), std::size_t{0});
    return row;
  }
  std::unordered_map<std::string, std::size_t> where;
  where.reserve(n);
  for (std::size_t i = 0; i < n; ++i) where[assignment.ids[i]] = i;
  for (std::size_t i = 0; i < n; ++i) {
    auto it = where.find(cloud.ids[i]);
    if (it == where.end())
      throw ValidationError("assignment is missing point id '" +
                            cloud.ids[i] + "'");
    row[i] = it->second;
  }
  return row;
}

}  // namespace

ErrorReport evaluate(const PointCloud& cloud, const GridAssignment& assignment) {
  const int k = cloud.dims;
  if (assignment.layout.dims() != k)
    throw ValidationError("assignment dimensionality does not match cloud");
  const std::size_t n = cloud.size();
  const std::vector<std::size_t> row = match_rows(cloud, assignment);

  ErrorReport report;
  report.n = static_cast<std::int64_t>(n);
  report.dims = k;
  report.type1_by_dim.assign(k, 0);
  report.type2_by_dim.assign(k, 0);

  // Work dimension-by-dimension on contiguous copies; the pair scan is the
  // hot path of the whole benchmark harness (C(n,2) iterations per dim).
  std::vector<double> p(n);
  std::vector<std::int32_t> s(n);
  for (int d = 0; d < k; ++d) {
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = cloud.at(i, d);
      s[i] = assignment.cell(row[i], d);
    }
    std::int64_t v1 = 0, v2 = 0;
    const double* pp = p.data();
    const std::int32_t* ss = s.data();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double pi = pp[i];
      const std::int32_t si = ss[i];
      for (std::size_t j = i + 1; j < n; ++j) {
        const int sp = (pp[j] > pi) - (pp[j] < pi);
        const int sg = (ss[j] > si) - (ss[j] < si);
        v1 += (sp != sg);
        v2 += (sp * sg < 0);
      }
    }
    report.type1_by_dim[d] = v1;
    report.type2_by_dim[d] = v2;
  }
  return report;
}

bool check_bound(const ErrorReport& report, int k) {
  if (k < 1) throw ValidationError("check_bound needs k >= 1");
  // err_I <= (k-1)/k without leaving integer arithmetic.
  return report.type1_total() * k <=
         static_cast<std::int64_t>(k - 1) * report.constraints();
}

std::vector<std::int64_t> satisfied_type1_per_point(
    const PointCloud& cloud, const GridAssignment& assignment) {
  const int k = cloud.dims;
  if (assignment.layout.dims() != k)
    throw ValidationError("assignment dimensionality does not match cloud");
  const std::size_t n = cloud.size();
  const std::vector<std::size_t> row = match_rows(cloud, assignment);

  std::vector<std::int64_t> satisfied(n, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (int d = 0; d < k; ++d) {
        const double pi = cloud.at(i, d), pj = cloud.at(j, d);
        const std::int32_t si = assignment.cell(row[i], d);
        const std::int32_t sj = assignment.cell(row[j], d);
        const int sp = (pj > pi) - (pj < pi);
        const int sg = (sj > si) - (sj < si);
        if (sp == sg) {
          ++satisfied[i];
          ++satisfied[j];
        }
      }
    }
  }
  return satisfied;
}

}  // namespace topicgrids
