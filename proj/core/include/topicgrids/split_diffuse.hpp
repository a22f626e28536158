#pragma once

#include "topicgrids/types.hpp"

namespace topicgrids {

// Recursive median-split placement.  Maps the cloud bijectively onto the
// layout's cells: the current point set is sorted along a chosen dimension,
// cut at the grid median w_l = floor(g_a / 2), and the halves recurse on the
// two sub-layouts; a single remaining point lands on the accumulated offset
// vector.  Smaller coordinates always map to smaller grid indices.
//
// Requires cloud.size() == layout.cell_count() and matching dimensionality.
// Output order matches input order (cells[i] is the cell of point i).
GridAssignment split_diffuse(const PointCloud& cloud, const LayoutShape& layout,
                             const SplitStrategy& strategy = {});

// Picks the dimension to split at the given recursion depth.  greedy: max
// remaining extent, ties by preference order; iterative: cycle from
// start_dimension by depth, skipping exhausted (extent 1) dimensions.
// Requires at least one extent > 1.
int choose_split_dimension(const LayoutShape& remaining,
                           const SplitStrategy& strategy, int depth);

// The total order used when sorting along dimension `dim`: coordinate in
// `dim` first, then the other coordinates in ascending dimension order, then
// original input position.  Returns true when point a precedes point b.
bool sort_key_less(const PointCloud& cloud, std::size_t a, std::size_t b,
                   int dim);

// Near-square layout suggestion for n points in k dimensions: the factor
// vector with extents as balanced as possible, ascending.  Placement itself
// never adapts; this is a convenience for callers that only know n.
// Throws ValidationError if n has no k-factor decomposition with all
// extents >= 1 (always satisfiable; extents of 1 are allowed).
LayoutShape suggest_layout(std::int64_t n, int dims);

}  // namespace topicgrids
