// Command-line front end: point placement, error evaluation, samplers, the
// Monte Carlo benchmark harness, activity analytics, and SVG rendering.
// Exit codes: 0 success, 1 validation/usage error, 2 I/O error.

#include "CLI11.hpp"

#include "topicgrids/activity.hpp"
#include "topicgrids/bench.hpp"
#include "topicgrids/io.hpp"
#include "topicgrids/metrics.hpp"
#include "topicgrids/samplers.hpp"
#include "topicgrids/split_diffuse.hpp"
#include "topicgrids/svg.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using namespace topicgrids;

namespace {

void note(const std::string& line) { std::cerr << line << '\n'; }

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    int v = 0;
    const char* last = item.data() + item.size();
    auto [ptr, ec] = std::from_chars(item.data(), last, v);
    if (ec != std::errc() || ptr != last)
      throw ValidationError("bad integer '" + item + "' in list");
    values.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return values;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    double v = 0;
    const char* last = item.data() + item.size();
    auto [ptr, ec] = std::from_chars(item.data(), last, v);
    if (ec != std::errc() || ptr != last)
      throw ValidationError("bad number '" + item + "' in list");
    values.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return values;
}

// Shared strategy flags.  --tie-break is a dimension permutation for greedy
// splitting; --start-dim picks the first dimension of the iterative cycle.
struct StrategyFlags {
  std::string name = "greedy";
  std::string tie_break;
  int start_dim = -1;

  SplitStrategy build() const {
    SplitStrategy s = SplitStrategy::parse(name);
    if (!tie_break.empty()) {
      if (s.mode != SplitMode::greedy)
        throw ValidationError("--tie-break applies to the greedy strategy");
      s.tie_break = parse_int_list(tie_break);
    }
    if (start_dim >= 0) {
      if (s.mode != SplitMode::iterative)
        throw ValidationError("--start-dim applies to the iterative strategy");
      s.start_dimension = start_dim;
    }
    return s;
  }
};

void add_strategy_flags(CLI::App* cmd, StrategyFlags& flags) {
  cmd->add_option("--strategy", flags.name, "greedy or iterative")
      ->capture_default_str();
  cmd->add_option("--tie-break", flags.tie_break,
                  "greedy tie-break preference, e.g. 1,0 for y-first");
  cmd->add_option("--start-dim", flags.start_dim,
                  "first dimension of the iterative cycle");
}

// Shared rendering flags.
struct RenderFlags {
  int cell_size = 16;
  std::string scale = "auto";
  std::vector<double> domain;  // empty or {vmin, vmax}
  std::string labels = "none";

  RenderSpec build() const {
    RenderSpec spec;
    spec.cell_size = cell_size;
    if (scale == "auto")
      spec.scale = RenderSpec::Scale::auto_kind;
    else if (scale == "sequential")
      spec.scale = RenderSpec::Scale::sequential;
    else if (scale == "diverging")
      spec.scale = RenderSpec::Scale::diverging;
    else
      throw ValidationError("unknown scale '" + scale + "'");
    if (!domain.empty()) {
      spec.auto_domain = false;
      spec.vmin = domain[0];
      spec.vmax = domain[1];
    }
    if (labels == "none")
      spec.labels = RenderSpec::Labels::none;
    else if (labels == "topic-id")
      spec.labels = RenderSpec::Labels::topic_id;
    else if (labels == "index")
      spec.labels = RenderSpec::Labels::index;
    else
      throw ValidationError("unknown label mode '" + labels + "'");
    return spec;
  }
};

void add_render_flags(CLI::App* cmd, RenderFlags& flags) {
  cmd->add_option("--cell-size", flags.cell_size, "cell edge in pixels")
      ->capture_default_str();
  cmd->add_option("--scale", flags.scale, "auto, sequential, or diverging")
      ->capture_default_str();
  cmd->add_option("--domain", flags.domain,
                  "fixed value domain as MIN MAX (default: from the data)")
      ->expected(2);
  cmd->add_option("--labels", flags.labels, "none, topic-id, or index")
      ->capture_default_str();
}

std::string check_format(const std::string& format) {
  if (format != "csv" && format != "svg")
    throw ValidationError("unknown format '" + format + "' (csv or svg)");
  return format;
}

// Writes a grid values result as CSV or rendered SVG.
void emit_grid_values(const GridValues& values, const std::string& format,
                      const RenderFlags& render, const std::string& path) {
  if (check_format(format) == "csv")
    save_grid_values(values, path);
  else
    save_svg(render_grid_svg(values, render.build()), path);
  note("wrote " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"split-diffuse topic grids toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "topicgrid 0.1.0");

  // place: points -> grid assignment
  struct {
    std::string points, layout, out;
    StrategyFlags strategy;
  } place;
  {
    auto* cmd = app.add_subcommand("place", "assign points to grid cells");
    cmd->add_option("--points", place.points, "points CSV (id,x0,x1[,...])")
        ->required();
    cmd->add_option("--layout", place.layout,
                    "grid extents, e.g. 8x8 (default: near-square factoring)");
    add_strategy_flags(cmd, place.strategy);
    cmd->add_option("--out", place.out, "assignment CSV to write")->required();
    cmd->callback([&] {
      const PointCloud cloud = load_points(place.points);
      const LayoutShape layout =
          place.layout.empty()
              ? suggest_layout(static_cast<std::int64_t>(cloud.size()),
                               cloud.dims)
              : LayoutShape::parse(place.layout);
      const GridAssignment asg =
          split_diffuse(cloud, layout, place.strategy.build());
      save_assignment(asg, place.out);
      note("wrote " + place.out + " (" + layout.str() + ")");
    });
  }

  // eval: points + assignment -> error report JSON
  struct {
    std::string points, assignment, out;
  } eval;
  {
    auto* cmd = app.add_subcommand("eval", "score an assignment against points");
    cmd->add_option("--points", eval.points, "points CSV")->required();
    cmd->add_option("--assignment", eval.assignment, "assignment CSV")
        ->required();
    cmd->add_option("--out", eval.out, "report JSON (default: stdout)");
    cmd->callback([&] {
      const PointCloud cloud = load_points(eval.points);
      const GridAssignment asg = load_assignment(eval.assignment);
      const ErrorReport report = evaluate(cloud, asg);
      const std::string json = error_report_json(report);
      if (eval.out.empty()) {
        std::cout << json;
      } else {
        write_text(json, eval.out);
        note("wrote " + eval.out + " (err1 " + format_g6(report.err1()) +
             ", err2 " + format_g6(report.err2()) + ")");
      }
    });
  }

  // sample: sampler spec -> points CSV
  struct {
    std::string spec = "uniform:rho=1";
    std::int64_t count = 0;
    std::uint64_t seed = 0;
    std::string out;
  } smp;
  {
    auto* cmd = app.add_subcommand("sample", "draw synthetic 2-D points");
    cmd->add_option("--spec", smp.spec,
                    "uniform:rho=R or gaussian:theta=T,phi=P")
        ->capture_default_str();
    cmd->add_option("--count", smp.count, "number of points")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", smp.seed, "random stream seed")
        ->capture_default_str();
    cmd->add_option("--out", smp.out, "points CSV to write")->required();
    cmd->callback([&] {
      const PointCloud cloud =
          sample(SamplerSpec::parse(smp.spec), smp.count, smp.seed);
      save_points(cloud, smp.out);
      note("wrote " + smp.out);
    });
  }

  // bench table1 / bench sweep
  auto* bench = app.add_subcommand("bench", "Monte Carlo error benchmarks");
  bench->require_subcommand(1);
  struct {
    int trials = 1000;
    std::uint64_t seed = 1;
    int threads = 1;
    std::string out;
  } t1;
  {
    auto* cmd = bench->add_subcommand(
        "table1", "square layouts under the reference samplers");
    cmd->add_option("--trials", t1.trials, "trials per cell")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", t1.seed, "master seed")->capture_default_str();
    cmd->add_option("--threads", t1.threads, "worker threads")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", t1.out, "benchmark CSV to write")->required();
    cmd->callback([&] {
      save_bench_csv(table1(t1.trials, t1.seed, t1.threads), t1.out);
      note("wrote " + t1.out);
    });
  }
  struct {
    std::string param, base, layout, values, out;
    std::string strategies = "greedy,iterative";
    std::string format = "csv";
    int trials = 100;
    std::uint64_t seed = 1;
    int threads = 1;
  } sw;
  {
    auto* cmd =
        bench->add_subcommand("sweep", "error curves over a sampler parameter");
    cmd->add_option("--param", sw.param, "rho, theta, or phi")->required();
    cmd->add_option("--base", sw.base, "base sampler spec")->required();
    cmd->add_option("--layout", sw.layout, "grid extents, e.g. 8x8")
        ->required();
    cmd->add_option("--strategies", sw.strategies,
                    "comma-separated strategy list")
        ->capture_default_str();
    cmd->add_option("--values", sw.values,
                    "comma-separated sweep values (default: built-in grid)");
    cmd->add_option("--trials", sw.trials, "trials per cell")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", sw.seed, "master seed")->capture_default_str();
    cmd->add_option("--threads", sw.threads, "worker threads")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", sw.format, "csv or svg")
        ->capture_default_str();
    cmd->add_option("--out", sw.out, "output file")->required();
    cmd->callback([&] {
      SweepParam param;
      if (sw.param == "rho")
        param = SweepParam::rho;
      else if (sw.param == "theta")
        param = SweepParam::theta;
      else if (sw.param == "phi")
        param = SweepParam::phi;
      else
        throw ValidationError("unknown sweep parameter '" + sw.param + "'");
      std::vector<SplitStrategy> strategies;
      std::size_t pos = 0;
      while (pos <= sw.strategies.size()) {
        const std::size_t comma = sw.strategies.find(',', pos);
        strategies.push_back(SplitStrategy::parse(sw.strategies.substr(
            pos, comma == std::string::npos ? comma : comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      const std::vector<double> values =
          sw.values.empty()
              ? (param == SweepParam::theta ? theta_grid() : log_grid())
              : parse_double_list(sw.values);
      const auto rows =
          sweep(param, values, SamplerSpec::parse(sw.base),
                LayoutShape::parse(sw.layout), strategies, sw.trials, sw.seed,
                sw.threads);
      if (check_format(sw.format) == "csv")
        save_bench_csv(rows, sw.out);
      else
        save_svg(render_curves_svg(rows), sw.out);
      note("wrote " + sw.out + " (" + std::to_string(rows.size()) + " rows)");
    });
  }

  // volume: activities -> per-topic volume grid
  struct {
    std::string activities, assignment, window, out;
    std::vector<std::string> entities;
    std::string format = "csv";
    RenderFlags render;
  } vol;
  {
    auto* cmd =
        app.add_subcommand("volume", "topical volume of a behavior set");
    cmd->add_option("--activities", vol.activities, "activity JSONL")
        ->required();
    cmd->add_option("--assignment", vol.assignment, "topic assignment CSV")
        ->required();
    cmd->add_option("--entity", vol.entities,
                    "entity to include (repeat for a peer group)")
        ->required();
    cmd->add_option("--window", vol.window, "START..END instants")->required();
    cmd->add_option("--format", vol.format, "csv or svg")
        ->capture_default_str();
    add_render_flags(cmd, vol.render);
    cmd->add_option("--out", vol.out, "output file")->required();
    cmd->callback([&] {
      const auto records = load_activities(vol.activities);
      const GridAssignment asg = load_assignment(vol.assignment);
      const BehaviorSet set =
          build_behavior_set(records, vol.entities, parse_window(vol.window));
      emit_grid_values(topical_volume(set, asg), vol.format, vol.render,
                       vol.out);
    });
  }

  // risk: activities -> per-topic risk grid
  struct {
    std::string activities, assignment, benchmark, window, out;
    std::vector<std::string> entities, bench_entities;
    std::string format = "csv";
    RenderFlags render;
  } rsk;
  {
    auto* cmd = app.add_subcommand(
        "risk", "topical risk of a window against a benchmark");
    cmd->add_option("--activities", rsk.activities, "activity JSONL")
        ->required();
    cmd->add_option("--assignment", rsk.assignment, "topic assignment CSV")
        ->required();
    cmd->add_option("--entity", rsk.entities,
                    "entity to score (repeat for a peer group)")
        ->required();
    cmd->add_option("--benchmark-entity", rsk.bench_entities,
                    "benchmark entity (default: same as --entity)");
    cmd->add_option("--benchmark", rsk.benchmark, "benchmark START..END")
        ->required();
    cmd->add_option("--window", rsk.window, "current START..END")->required();
    cmd->add_option("--format", rsk.format, "csv or svg")
        ->capture_default_str();
    add_render_flags(cmd, rsk.render);
    cmd->add_option("--out", rsk.out, "output file")->required();
    cmd->callback([&] {
      const auto records = load_activities(rsk.activities);
      const GridAssignment asg = load_assignment(rsk.assignment);
      const auto& bench_who =
          rsk.bench_entities.empty() ? rsk.entities : rsk.bench_entities;
      const BehaviorSet benchmark = build_behavior_set(
          records, bench_who, parse_window(rsk.benchmark));
      const BehaviorSet current =
          build_behavior_set(records, rsk.entities, parse_window(rsk.window));
      emit_grid_values(topical_risk(benchmark, current, asg), rsk.format,
                       rsk.render, rsk.out);
    });
  }

  // curtain: activities -> daily month-to-date risk matrix
  struct {
    std::string activities, assignment, entity, benchmark, months, out;
    std::int64_t step = 86400;
    std::string format = "csv";
    RenderFlags render;
  } cur;
  {
    auto* cmd = app.add_subcommand(
        "curtain", "daily risk rows over whole months, 1-D topic axis");
    cmd->add_option("--activities", cur.activities, "activity JSONL")
        ->required();
    cmd->add_option("--assignment", cur.assignment, "1-D topic assignment CSV")
        ->required();
    cmd->add_option("--entity", cur.entity, "entity to score")->required();
    cmd->add_option("--benchmark", cur.benchmark, "benchmark START..END")
        ->required();
    cmd->add_option("--months", cur.months,
                    "instants START..END; covers the months touching them")
        ->required();
    cmd->add_option("--step", cur.step, "row step in seconds")
        ->capture_default_str();
    cmd->add_option("--format", cur.format, "csv or svg")
        ->capture_default_str();
    add_render_flags(cmd, cur.render);
    cmd->add_option("--out", cur.out, "output file")->required();
    cmd->callback([&] {
      const auto records = load_activities(cur.activities);
      const GridAssignment asg = load_assignment(cur.assignment);
      const TimeWindow span = parse_window(cur.months);
      const CurtainMatrix m = topic_curtain(
          records, cur.entity, parse_window(cur.benchmark),
          month_windows(span.start, span.end - 1), asg, cur.step);
      if (check_format(cur.format) == "csv")
        save_curtain(m, cur.out);
      else
        save_svg(render_curtain_svg(m, cur.render.build()), cur.out);
      note("wrote " + cur.out + " (" + std::to_string(m.rows()) + " rows)");
    });
  }

  // shower: activities -> one risk grid per window
  struct {
    std::string activities, assignment, entity, benchmark, prefix;
    std::vector<std::string> windows;
    std::string format = "csv";
    RenderFlags render;
  } shw;
  {
    auto* cmd = app.add_subcommand(
        "shower", "a sequence of risk grids on a shared placement");
    cmd->add_option("--activities", shw.activities, "activity JSONL")
        ->required();
    cmd->add_option("--assignment", shw.assignment, "topic assignment CSV")
        ->required();
    cmd->add_option("--entity", shw.entity, "entity to score")->required();
    cmd->add_option("--benchmark", shw.benchmark, "benchmark START..END")
        ->required();
    cmd->add_option("--window", shw.windows, "START..END step (repeatable)")
        ->required();
    cmd->add_option("--format", shw.format, "csv or svg")
        ->capture_default_str();
    add_render_flags(cmd, shw.render);
    cmd->add_option("--out-prefix", shw.prefix,
                    "output path prefix; files get a step number appended")
        ->required();
    cmd->callback([&] {
      const auto records = load_activities(shw.activities);
      const GridAssignment asg = load_assignment(shw.assignment);
      std::vector<TimeWindow> windows;
      windows.reserve(shw.windows.size());
      for (const std::string& w : shw.windows)
        windows.push_back(parse_window(w));
      const auto grids = topic_shower(records, shw.entity,
                                      parse_window(shw.benchmark), windows, asg);
      check_format(shw.format);
      for (std::size_t i = 0; i < grids.size(); ++i) {
        char num[8];
        std::snprintf(num, sizeof num, "%02zu", i);
        const std::string path = shw.prefix + num + "." + shw.format;
        if (shw.format == "csv")
          save_grid_values(grids[i], path);
        else
          save_svg(render_grid_svg(grids[i], shw.render.build()), path);
        note("wrote " + path);
      }
    });
  }

  // render: CSV -> SVG
  struct {
    std::string in, out, kind;
    std::string value_kind = "volume";
    RenderFlags render;
  } ren;
  {
    auto* cmd = app.add_subcommand("render", "render a saved CSV as SVG");
    cmd->add_option("--in", ren.in, "input CSV")->required();
    cmd->add_option("--kind", ren.kind, "grid, curtain, or curves")
        ->required();
    cmd->add_option("--value-kind", ren.value_kind,
                    "volume or risk (grid inputs only; picks the auto scale)")
        ->capture_default_str();
    add_render_flags(cmd, ren.render);
    cmd->add_option("--out", ren.out, "SVG to write")->required();
    cmd->callback([&] {
      std::string svg;
      if (ren.kind == "grid") {
        LoadedGridValues loaded = load_grid_values(ren.in);
        GridValues values;
        if (ren.value_kind == "volume")
          values.kind = GridValues::Kind::volume;
        else if (ren.value_kind == "risk")
          values.kind = GridValues::Kind::risk;
        else
          throw ValidationError("unknown value kind '" + ren.value_kind + "'");
        values.assignment = std::move(loaded.assignment);
        values.values = std::move(loaded.values);
        svg = render_grid_svg(values, ren.render.build());
      } else if (ren.kind == "curtain") {
        svg = render_curtain_svg(load_curtain(ren.in), ren.render.build());
      } else if (ren.kind == "curves") {
        svg = render_curves_svg(load_bench_csv(ren.in), ren.render.build());
      } else {
        throw ValidationError("unknown render kind '" + ren.kind + "'");
      }
      save_svg(svg, ren.out);
      note("wrote " + ren.out);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
