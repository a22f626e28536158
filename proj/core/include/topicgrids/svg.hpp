#pragma once

#include "topicgrids/activity.hpp"
#include "topicgrids/bench.hpp"

#include <string>

namespace topicgrids {

// Rendering knobs for the SVG emitters.  Output is plain deterministic
// markup: fixed element order, integer cell geometry, lowercase hex colors.
struct RenderSpec {
  int cell_size = 16;

  // auto_kind picks sequential for volume grids and diverging for risk
  // grids/curtains.  The diverging domain is symmetric around zero.
  enum class Scale { auto_kind, sequential, diverging };
  Scale scale = Scale::auto_kind;

  // Fixed value domain; when auto_domain is true the data decides
  // (sequential: [min, max]; diverging: [-A, A] with A = max |value|).
  bool auto_domain = true;
  double vmin = 0.0;
  double vmax = 1.0;

  enum class Labels { none, topic_id, index };
  Labels labels = Labels::none;
};

// Heat grid of a 1-D/2-D/3-D GridValues.  Index (0,...,0) renders at the
// upper-left corner; the second index grows downward; 3-D layouts render one
// panel per third index, left to right.
std::string render_grid_svg(const GridValues& values,
                            const RenderSpec& spec = {});

// Curtain heatmap: one row per time step (downward), one column per 1-D
// grid index.  Always diverging unless the spec forces sequential.
std::string render_curtain_svg(const CurtainMatrix& matrix,
                               const RenderSpec& spec = {});

// Line chart of benchmark sweep rows: err1/err2 means against the swept
// sampler parameter (detected from the sampling strings), one line pair per
// strategy.  Log2 x-axis for rho/phi sweeps, linear for theta.
std::string render_curves_svg(const std::vector<BenchRow>& rows,
                              const RenderSpec& spec = {});

void save_svg(const std::string& svg, const std::string& path);

}  // namespace topicgrids
