#include "topicgrids/split_diffuse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace topicgrids {

bool sort_key_less(const PointCloud& cloud, std::size_t a, std::size_t b,
                   int dim) {
  const double pa = cloud.at(a, dim), pb = cloud.at(b, dim);
  if (pa != pb) return pa < pb;
  for (int d = 0; d < cloud.dims; ++d) {
    if (d == dim) continue;
    const double qa = cloud.at(a, d), qb = cloud.at(b, d);
    if (qa != qb) return qa < qb;
  }
  return a < b;
}

int choose_split_dimension(const LayoutShape& remaining,
                           const SplitStrategy& strategy, int depth) {
  const int k = remaining.dims();
  const auto& g = remaining.extents;

  if (strategy.mode == SplitMode::greedy) {
    // Preference order for equal extents. Default: last dimension first.
    std::vector<int> pref = strategy.tie_break;
    if (pref.empty()) {
      pref.resize(k);
      for (int d = 0; d < k; ++d) pref[d] = k - 1 - d;
    } else {
      if (static_cast<int>(pref.size()) != k)
        throw ValidationError("tie_break must list every dimension once");
      std::vector<bool> seen(k, false);
      for (int d : pref) {
        if (d < 0 || d >= k || seen[d])
          throw ValidationError("tie_break must be a permutation of 0.." +
                                std::to_string(k - 1));
        seen[d] = true;
      }
    }
    int best = -1;
    for (int d : pref)
      if (best < 0 || g[d] > g[best]) best = d;
    if (g[best] <= 1)
      throw ValidationError("choose_split_dimension: no splittable dimension");
    return best;
  }

  // iterative: depth selects the cycle position; skip exhausted dimensions.
  int start = strategy.start_dimension < 0 ? k - 1 : strategy.start_dimension;
  if (start >= k)
    throw ValidationError("start_dimension out of range");
  for (int j = 0; j < k; ++j) {
    const int d = (start + depth + j) % k;
    if (g[d] > 1) return d;
  }
  throw ValidationError("choose_split_dimension: no splittable dimension");
}

namespace {

struct Placer {
  const PointCloud& cloud;
  const SplitStrategy& strategy;
  std::vector<std::int32_t>& cells;  // n * k, filled at the leaves
  int k;

  // order[lo, hi) holds the point indices of the current node; extents and
  // offsets describe its sub-grid.  Both vectors are mutated in place and
  // restored on the way back up, so the recursion allocates nothing.
  void place(std::vector<std::size_t>& order, std::size_t lo, std::size_t hi,
             std::vector<int>& extents, std::vector<std::int32_t>& offsets,
             int depth) {
    if (hi - lo == 1) {
      std::copy(offsets.begin(), offsets.end(),
                cells.begin() + static_cast<std::ptrdiff_t>(order[lo]) * k);
      return;
    }

    LayoutShape remaining{extents};
    const int a = choose_split_dimension(remaining, strategy, depth);
    const int ga = extents[a];
    const int wl = ga / 2;
    const std::size_t m = (hi - lo) / ga * wl;

    // Only the cut position must respect the total order; the halves get
    // re-partitioned on their own dimensions, so a full sort is unnecessary.
    std::nth_element(order.begin() + lo, order.begin() + lo + m,
                     order.begin() + hi, [&](std::size_t x, std::size_t y) {
                       return sort_key_less(cloud, x, y, a);
                     });

    extents[a] = wl;
    place(order, lo, lo + m, extents, offsets, depth + 1);
    extents[a] = ga - wl;
    offsets[a] += wl;
    place(order, lo + m, hi, extents, offsets, depth + 1);
    offsets[a] -= wl;
    extents[a] = ga;
  }
};

}  // namespace

GridAssignment split_diffuse(const PointCloud& cloud, const LayoutShape& layout,
                             const SplitStrategy& strategy) {
  const int k = layout.dims();
  if (cloud.dims != k)
    throw ValidationError("point dimensionality " + std::to_string(cloud.dims) +
                          " does not match layout " + layout.str());
  for (int g : layout.extents)
    if (g < 1) throw ValidationError("layout extent must be >= 1");
  const std::int64_t want = layout.cell_count();
  if (static_cast<std::int64_t>(cloud.size()) != want)
    throw ValidationError("layout " + layout.str() + " has " +
                          std::to_string(want) + " cells but cloud has " +
                          std::to_string(cloud.size()) + " points");

  GridAssignment out;
  out.layout = layout;
  out.ids = cloud.ids;
  out.cells.resize(cloud.size() * k);

  std::vector<std::size_t> order(cloud.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<int> extents = layout.extents;
  std::vector<std::int32_t> offsets(k, 0);

  Placer placer{cloud, strategy, out.cells, k};
  placer.place(order, 0, order.size(), extents, offsets, 0);
  return out;
}

LayoutShape suggest_layout(std::int64_t n, int dims) {
  if (n < 1 || dims < 1)
    throw ValidationError("suggest_layout needs n >= 1 and dims >= 1");
  // Peel off one factor per dimension, each time taking the largest divisor
  // of the remainder near its d-th root, so extents stay as balanced as n's
  // factorization allows.
  LayoutShape shape;
  std::int64_t rest = n;
  for (int d = dims; d >= 2; --d) {
    const double root = std::pow(static_cast<double>(rest), 1.0 / d);
    // llround can land one off the true integer root, so admit target + 1.
    const std::int64_t target =
        std::max<std::int64_t>(1, std::llround(root)) + 1;
    std::int64_t pick = 1;
    for (std::int64_t f = 1; f * f <= rest; ++f) {
      if (rest % f != 0) continue;
      const std::int64_t g = rest / f;
      if (f <= target && f > pick) pick = f;
      if (g <= target && g > pick) pick = g;
    }
    shape.extents.push_back(static_cast<int>(pick));
    rest /= pick;
  }
  if (rest > std::numeric_limits<std::int32_t>::max())
    throw ValidationError("suggest_layout: residual extent too large for n=" +
                          std::to_string(n));
  shape.extents.push_back(static_cast<int>(rest));
  // Largest factor last so the default tie-break splits it first.
  std::sort(shape.extents.begin(), shape.extents.end());
  if (shape.cell_count() != n)
    throw ValidationError("internal: layout suggestion failed for n=" +
                          std::to_string(n));
  return shape;
}

}  // namespace topicgrids
