#pragma once

#include "topicgrids/types.hpp"

namespace topicgrids {

// Exact constraint-violation counts from exhaustive pair enumeration.  One
// constraint per unordered point pair per dimension, C(n,2) * k in total;
// all counts are integers, ratios are derived views.
struct ErrorReport {
  std::int64_t n = 0;
  int dims = 0;
  std::vector<std::int64_t> type1_by_dim;  // order-disagreement violations
  std::vector<std::int64_t> type2_by_dim;  // strict-inversion violations

  std::int64_t pairs() const { return n * (n - 1) / 2; }
  std::int64_t constraints() const { return pairs() * dims; }
  std::int64_t type1_total() const;
  std::int64_t type2_total() const;
  std::int64_t satisfied_type1() const { return constraints() - type1_total(); }

  double err1() const;
  double err2() const;
  double err1_dim(int d) const;  // violations in d / C(n,2)
  double err2_dim(int d) const;
};

// Counts violations for every pair {i,j} and dimension l.  A type-I
// violation is any disagreement between the sign of the coordinate
// difference and the sign of the grid-index difference (ties included on
// either side); a type-II violation requires strictly opposite signs.
// Type II is therefore a subset of type I.
//
// Points are matched by id when both sides carry ids, positionally
// otherwise; an id mismatch throws ValidationError.
ErrorReport evaluate(const PointCloud& cloud, const GridAssignment& assignment);

// True iff err_I <= (k-1)/k, checked in integer arithmetic:
// type1_total * k <= (k-1) * constraints.
bool check_bound(const ErrorReport& report, int k);

// Per-point view used by the recursion-path property: number of satisfied
// type-I constraints involving point i, summed over its n-1 pairs and all
// dimensions.
std::vector<std::int64_t> satisfied_type1_per_point(
    const PointCloud& cloud, const GridAssignment& assignment);

}  // namespace topicgrids
