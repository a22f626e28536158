#include "topicgrids/svg.hpp"

#include "topicgrids/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace topicgrids {

namespace {

struct Rgb {
  int r, g, b;
};

Rgb lerp(Rgb a, Rgb b, double t) {
  auto mix = [t](int x, int y) {
    return static_cast<int>(std::lround(x + (y - x) * t));
  };
  return {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

std::string hex(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

// Sequential ramp: pale to saturated blue.  Diverging: blue through neutral
// to red, neutral pinned at the domain midpoint.
std::string sequential_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return hex(lerp({0xf7, 0xfb, 0xff}, {0x08, 0x51, 0x9c}, t));
}

std::string diverging_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const Rgb low{0x21, 0x66, 0xac}, mid{0xf7, 0xf7, 0xf7},
      high{0xb2, 0x18, 0x2b};
  if (t < 0.5) return hex(lerp(low, mid, t * 2.0));
  return hex(lerp(mid, high, (t - 0.5) * 2.0));
}

struct ValueScale {
  bool diverging = false;
  double lo = 0.0, hi = 1.0;

  double position(double v) const {
    if (hi <= lo) return diverging ? 0.5 : 0.0;
    return (v - lo) / (hi - lo);
  }
  std::string color(double v) const {
    return diverging ? diverging_color(position(v))
                     : sequential_color(position(v));
  }
};

ValueScale make_scale(const RenderSpec& spec, bool diverging_default,
                      const std::vector<double>& values) {
  ValueScale scale;
  scale.diverging = spec.scale == RenderSpec::Scale::auto_kind
                        ? diverging_default
                        : spec.scale == RenderSpec::Scale::diverging;
  if (!spec.auto_domain) {
    if (!(spec.vmin < spec.vmax))
      throw ValidationError("fixed render domain needs vmin < vmax");
    scale.lo = spec.vmin;
    scale.hi = spec.vmax;
    return scale;
  }
  if (values.empty()) return scale;
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  if (scale.diverging) {
    const double a = std::max(std::abs(*mn), std::abs(*mx));
    scale.lo = -a;
    scale.hi = a;
  } else {
    scale.lo = *mn;
    scale.hi = *mx;
  }
  return scale;
}

std::string svg_open(int width, int height) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" viewBox=\"0 0 " + std::to_string(width) + " " +
         std::to_string(height) + "\">\n";
  return out;
}

void add_rect(std::string& out, int x, int y, int w, int h,
              const std::string& fill) {
  out += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
         "\" width=\"" + std::to_string(w) + "\" height=\"" +
         std::to_string(h) + "\" fill=\"" + fill + "\"/>\n";
}

void add_text(std::string& out, int x, int y, int size,
              const std::string& text, const char* anchor = "middle") {
  std::string safe;
  for (char c : text) {
    switch (c) {
      case '&': safe += "&amp;"; break;
      case '<': safe += "&lt;"; break;
      case '>': safe += "&gt;"; break;
      default: safe += c;
    }
  }
  out += "<text x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
         "\" font-family=\"monospace\" font-size=\"" + std::to_string(size) +
         "\" text-anchor=\"" + anchor + "\" fill=\"#333333\">" + safe +
         "</text>\n";
}

}  // namespace

std::string render_grid_svg(const GridValues& values, const RenderSpec& spec) {
  const GridAssignment& asg = values.assignment;
  if (values.values.size() != asg.size())
    throw ValidationError("grid values do not match the assignment size");
  const int k = asg.layout.dims();
  if (k < 1 || k > 3)
    throw ValidationError("grid rendering supports 1-D, 2-D and 3-D layouts");
  if (spec.cell_size < 1) throw ValidationError("cell size must be positive");

  const int cs = spec.cell_size;
  const int g0 = asg.layout.extents[0];
  const int g1 = k >= 2 ? asg.layout.extents[1] : 1;
  const int panels = k == 3 ? asg.layout.extents[2] : 1;
  const int gap = panels > 1 ? cs : 0;
  const int width = panels * g0 * cs + (panels - 1) * gap;
  const int height = g1 * cs;

  const ValueScale scale =
      make_scale(spec, values.kind == GridValues::Kind::risk, values.values);

  std::string out = svg_open(width, height);
  // Cells in grid-index order so output bytes do not depend on row order.
  std::vector<std::size_t> rows(asg.size());
  for (std::size_t i = 0; i < asg.size(); ++i) rows[i] = i;
  std::sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
    for (int d = 0; d < k; ++d)
      if (asg.cell(a, d) != asg.cell(b, d)) return asg.cell(a, d) < asg.cell(b, d);
    return false;
  });
  for (std::size_t row : rows) {
    const int i0 = asg.cell(row, 0);
    const int i1 = k >= 2 ? asg.cell(row, 1) : 0;
    const int i2 = k == 3 ? asg.cell(row, 2) : 0;
    const int x = i2 * (g0 * cs + gap) + i0 * cs;
    const int y = i1 * cs;
    add_rect(out, x, y, cs, cs, scale.color(values.values[row]));
    if (spec.labels != RenderSpec::Labels::none) {
      std::string label;
      if (spec.labels == RenderSpec::Labels::topic_id) {
        label = asg.id(row);
      } else {
        label = std::to_string(i0);
        for (int d = 1; d < k; ++d) label += "," + std::to_string(asg.cell(row, d));
      }
      add_text(out, x + cs / 2, y + cs / 2 + cs / 6, std::max(6, cs / 3), label);
    }
  }
  out += "</svg>\n";
  return out;
}

std::string render_curtain_svg(const CurtainMatrix& matrix,
                               const RenderSpec& spec) {
  if (spec.cell_size < 1) throw ValidationError("cell size must be positive");
  const int cs = spec.cell_size;
  const int width = static_cast<int>(matrix.cols()) * cs;
  const int height = static_cast<int>(matrix.rows()) * cs;
  const ValueScale scale = make_scale(spec, true, matrix.cells);

  std::string out = svg_open(width, height);
  for (std::size_t r = 0; r < matrix.rows(); ++r)
    for (std::size_t c = 0; c < matrix.cols(); ++c)
      add_rect(out, static_cast<int>(c) * cs, static_cast<int>(r) * cs, cs, cs,
               scale.color(matrix.at(r, c)));
  out += "</svg>\n";
  return out;
}

namespace {

// The parameter a sweep varied, recovered from the sampling strings.
struct SweptAxis {
  std::string name;  // "rho" | "theta" | "phi"
  bool log2 = false;
  std::vector<double> value;  // per row
};

SweptAxis detect_axis(const std::vector<BenchRow>& rows) {
  std::vector<double> rho, theta, phi;
  const SamplerSpec::Family family =
      SamplerSpec::parse(rows.front().sampling).family;
  for (const BenchRow& row : rows) {
    const SamplerSpec spec = SamplerSpec::parse(row.sampling);
    if (spec.family != family)
      throw ValidationError(
          "curve rendering needs rows from a single sampler family");
    if (spec.family == SamplerSpec::Family::uniform) {
      rho.push_back(spec.rho);
      theta.push_back(0);
      phi.push_back(0);
    } else {
      rho.push_back(0);
      theta.push_back(spec.theta);
      phi.push_back(spec.phi);
    }
  }
  auto varies = [](const std::vector<double>& v) {
    return std::set<double>(v.begin(), v.end()).size() > 1;
  };
  SweptAxis axis;
  if (varies(rho)) {
    axis = {"rho", true, rho};
  } else if (varies(theta)) {
    axis = {"theta", false, theta};
  } else if (varies(phi)) {
    axis = {"phi", true, phi};
  } else {
    throw ValidationError(
        "curve rendering needs rows that sweep rho, theta or phi");
  }
  return axis;
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string render_curves_svg(const std::vector<BenchRow>& rows,
                              const RenderSpec& spec) {
  (void)spec;
  if (rows.empty()) throw ValidationError("no rows to render");
  const SweptAxis axis = detect_axis(rows);

  // Chart geometry.
  const int width = 480, height = 320;
  const int left = 56, right = 16, top = 16, bottom = 44;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  auto xt = [&](double v) { return axis.log2 ? std::log2(v) : v; };
  double x_lo = xt(axis.value[0]), x_hi = x_lo;
  double y_hi = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    x_lo = std::min(x_lo, xt(axis.value[i]));
    x_hi = std::max(x_hi, xt(axis.value[i]));
    y_hi = std::max({y_hi, rows[i].stats.err1.mean, rows[i].stats.err2.mean});
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1;
  if (y_hi <= 0) y_hi = 1;
  y_hi *= 1.05;

  auto px = [&](double v) {
    return left + (xt(v) - x_lo) / (x_hi - x_lo) * plot_w;
  };
  auto py = [&](double e) { return top + (1.0 - e / y_hi) * plot_h; };

  std::string out = svg_open(width, height);
  add_rect(out, left, top, static_cast<int>(plot_w), static_cast<int>(plot_h),
           "#fcfcfc");

  // Axis ticks: 5 evenly spaced in plot coordinates.
  for (int i = 0; i <= 4; ++i) {
    const double fx = x_lo + (x_hi - x_lo) * i / 4.0;
    const double vx = axis.log2 ? std::exp2(fx) : fx;
    const int gx = static_cast<int>(std::lround(left + plot_w * i / 4.0));
    out += "<line x1=\"" + std::to_string(gx) + "\" y1=\"" +
           std::to_string(top) + "\" x2=\"" + std::to_string(gx) +
           "\" y2=\"" + std::to_string(static_cast<int>(top + plot_h)) +
           "\" stroke=\"#dddddd\"/>\n";
    add_text(out, gx, height - bottom + 16, 10, format_g6(vx));

    const double ve = y_hi * i / 4.0;
    const int gy = static_cast<int>(std::lround(top + plot_h * (4 - i) / 4.0));
    out += "<line x1=\"" + std::to_string(left) + "\" y1=\"" +
           std::to_string(gy) + "\" x2=\"" +
           std::to_string(static_cast<int>(left + plot_w)) + "\" y2=\"" +
           std::to_string(gy) + "\" stroke=\"#dddddd\"/>\n";
    add_text(out, left - 6, gy + 3, 10, format_g6(ve), "end");
  }
  add_text(out, left + static_cast<int>(plot_w) / 2, height - 8, 11, axis.name);

  // One polyline per (strategy, metric); strategies keep first-seen order.
  std::vector<std::string> strategies;
  for (const BenchRow& row : rows)
    if (std::find(strategies.begin(), strategies.end(), row.strategy) ==
        strategies.end())
      strategies.push_back(row.strategy);

  int legend_y = top + 14;
  for (const std::string& strategy : strategies) {
    const bool dashed = strategy != strategies.front();
    for (int metric = 0; metric < 2; ++metric) {
      const char* color = metric == 0 ? "#b2182b" : "#2166ac";
      std::string pts;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].strategy != strategy) continue;
        const double e =
            metric == 0 ? rows[i].stats.err1.mean : rows[i].stats.err2.mean;
        if (!pts.empty()) pts += ' ';
        pts += fmt2(px(axis.value[i])) + "," + fmt2(py(e));
      }
      out += "<polyline fill=\"none\" stroke=\"";
      out += color;
      out += "\" stroke-width=\"1.5\"";
      if (dashed) out += " stroke-dasharray=\"5,3\"";
      out += " points=\"" + pts + "\"/>\n";
      add_text(out, width - right - 4, legend_y, 10,
               strategy + (metric == 0 ? " err1" : " err2"), "end");
      legend_y += 12;
    }
  }
  out += "</svg>\n";
  return out;
}

void save_svg(const std::string& svg, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << svg;
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace topicgrids
