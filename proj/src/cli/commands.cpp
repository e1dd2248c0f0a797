#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "shapeforge/cli.hpp"
#include "shapeforge/control_chart.hpp"
#include "shapeforge/elastic.hpp"
#include "shapeforge/error.hpp"
#include "shapeforge/frechet.hpp"
#include "shapeforge/hypothesis.hpp"
#include "shapeforge/ingest.hpp"
#include "shapeforge/kernels.hpp"
#include "shapeforge/pga.hpp"
#include "shapeforge/summary.hpp"
#include "svg.hpp"

namespace shapeforge::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kAlpha = 0.05;

// JSON has no infinities; non-finite values are written as null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::io, "write failed for " + path.string());
}

std::vector<RawContour> load_file(const fs::path& path, std::string_view format, std::size_t min_area) {
  if (format == "pgm") {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
    const GrayImage image = read_pgm(in);
    return trace_mask(threshold(image), min_area, path.stem().string());
  }
  const std::string text = read_file(path);
  try {
    return parse_contours(text, format == "json" ? ContourFormat::json : ContourFormat::csv);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::string format_for(const fs::path& path, std::string_view fallback) {
  const std::string ext = path.extension().string();
  if (ext == ".json") return "json";
  if (ext == ".pgm") return "pgm";
  if (ext == ".csv") return "csv";
  return std::string(fallback);
}

Dataset load_dataset(const RunConfig& config, std::ostream& log) {
  std::vector<RawContour> contours;
  for (const auto& input : config.inputs) {
    auto part = load_file(input, config.format, config.min_area);
    log << "read " << part.size() << " contour(s) from " << input << '\n';
    contours.insert(contours.end(), std::make_move_iterator(part.begin()),
                    std::make_move_iterator(part.end()));
  }
  std::unordered_set<std::string> seen;
  for (const auto& c : contours) {
    if (!seen.insert(c.id).second) throw Error(ErrorKind::validation, "duplicate contour id '" + c.id + "'");
  }
  Dataset ds = build_dataset(contours, {config.resample, config.min_solidity});
  ds.sources = config.inputs;
  for (const auto& id : ds.dropped) log << "dropped " << id << " (solidity below threshold)\n";
  if (ds.entries.empty()) throw Error(ErrorKind::invalid_argument, "no contours to analyze");
  return ds;
}

DiscreteCurve circle_curve(std::size_t n) {
  PointList pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    pts[i] = {std::cos(t), std::sin(t)};
  }
  return DiscreteCurve(std::move(pts));
}

DiscreteCurve reference_curve_from_file(const RunConfig& config) {
  const fs::path path = config.reference.path;
  const auto contours = load_file(path, format_for(path, config.format), config.min_area);
  if (contours.empty()) throw Error(ErrorKind::invalid_argument, "reference file " + path.string() + " holds no contour");
  return orient_ccw(resample_arclength(contours.front(), config.resample));
}

PreShape preshape_of(const DiscreteCurve& c) {
  return to_preshape(Configuration(PointList(c.samples().begin(), c.samples().end())));
}

std::string reference_name(const Reference& r) {
  switch (r.kind) {
    case Reference::Kind::circle: return "circle";
    case Reference::Kind::mean: return "mean";
    case Reference::Kind::file: return "file:" + r.path;
  }
  return "circle";
}

/// The dataset in the representation of the chosen metric.
struct Workspace {
  const RunConfig& config;
  std::ostream& log;
  Dataset data;
  std::vector<PreShape> shapes;
  std::vector<SrvfCurve> srvfs;
  ElasticOptions elastic;

  Workspace(const RunConfig& c, std::ostream& l) : config(c), log(l), data(load_dataset(c, l)) {
    for (const auto& e : data.entries) {
      if (config.metric == Metric::procrustes) {
        shapes.push_back(preshape_of(e.curve));
      } else {
        srvfs.push_back(elastic_srvf(e.curve));
      }
    }
  }

  std::size_t size() const { return data.entries.size(); }

  PreShape procrustes_reference() const {
    switch (config.reference.kind) {
      case Reference::Kind::circle: return circle_preshape(config.resample);
      case Reference::Kind::file: return preshape_of(reference_curve_from_file(config));
      case Reference::Kind::mean: break;
    }
    try {
      return frechet_mean(shapes);
    } catch (const ConvergenceError& e) {
      log << "warning: Frechet mean did not converge (residual " << e.residual()
          << "); using the last iterate\n";
      return e.last_iterate();
    }
  }

  SrvfCurve elastic_reference() const {
    switch (config.reference.kind) {
      case Reference::Kind::circle: return elastic_srvf(circle_curve(config.resample));
      case Reference::Kind::file: return elastic_srvf(reference_curve_from_file(config));
      case Reference::Kind::mean: break;
    }
    ElasticMeanOptions opts;
    opts.elastic = elastic;
    return elastic_mean(srvfs, opts);
  }

  std::vector<double> distances_to_reference() const {
    if (config.metric == Metric::procrustes) return distances_to(shapes, procrustes_reference());
    return distances_to(srvfs, elastic_reference(), elastic);
  }
};

void require_count(const Workspace& ws, std::size_t n, std::string_view what) {
  if (ws.size() < n) {
    throw Error(ErrorKind::invalid_argument,
                std::string(what) + " needs at least " + std::to_string(n) + " contours, got " +
                    std::to_string(ws.size()));
  }
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

void cmd_distmat(const Workspace& ws, const fs::path& out) {
  require_count(ws, 2, "distmat");
  const DistanceMatrix m = ws.config.metric == Metric::procrustes ? distance_matrix(ws.shapes)
                                                                  : distance_matrix(ws.srvfs, ws.elastic);
  std::ostringstream csv;
  csv << "contour_id";
  for (const auto& e : ws.data.entries) csv << ',' << e.id;
  csv << '\n';
  for (std::size_t i = 0; i < m.n; ++i) {
    csv << ws.data.entries[i].id;
    for (std::size_t j = 0; j < m.n; ++j) csv << ',' << fmt(m(i, j));
    csv << '\n';
  }
  write_file(out / "distance_matrix.csv", csv.str());
  ws.log << "wrote " << (out / "distance_matrix.csv").string() << '\n';
}

void cmd_pca(const Workspace& ws, const fs::path& out) {
  require_count(ws, 2, "pca");
  PgaModel model;
  if (ws.config.metric == Metric::procrustes) {
    model = pga(ws.shapes, ws.procrustes_reference(), ws.config.components);
  } else {
    const SrvfCurve base = ws.elastic_reference();
    std::vector<PointList> tangents;
    tangents.reserve(ws.size());
    for (const auto& q : ws.srvfs) tangents.push_back(elastic_log(base, q, ws.elastic));
    model = pga_from_tangents(base.sphere_point(), tangents, ws.config.components);
  }
  for (const auto& w : model.warnings) ws.log << "warning: " << w << '\n';

  const std::size_t k = model.components.size();
  std::ostringstream csv;
  csv << "contour_id,group";
  for (std::size_t c = 0; c < k; ++c) csv << ",pc" << c + 1;
  csv << '\n';
  for (std::size_t i = 0; i < ws.size(); ++i) {
    csv << ws.data.entries[i].id << ',' << ws.data.entries[i].group;
    for (std::size_t c = 0; c < k; ++c) csv << ',' << fmt(model.scores[i][c]);
    csv << '\n';
  }
  write_file(out / "pga_scores.csv", csv.str());

  json variance;
  variance["metric"] = to_string(ws.config.metric);
  variance["reference"] = reference_name(ws.config.reference);
  variance["samples"] = ws.size();
  variance["components_requested"] = ws.config.components;
  variance["components"] = k;
  variance["variances"] = model.variances;
  variance["explained_fraction"] = model.explained_fraction();
  variance["total_variance"] = model.total_variance;
  variance["warnings"] = model.warnings;
  write_file(out / "pga_variance.json", variance.dump(2) + "\n");

  std::vector<svg::Series> series;
  for (const auto& g : ws.data.groups()) {
    svg::Series s{g, {}};
    for (std::size_t i = 0; i < ws.size(); ++i) {
      if (ws.data.entries[i].group != g) continue;
      s.points.push_back({k > 0 ? model.scores[i][0] : 0.0, k > 1 ? model.scores[i][1] : 0.0});
    }
    series.push_back(std::move(s));
  }
  write_file(out / "pga_scatter.svg",
             svg::scatter(series, "Principal geodesic scores", "PC1", k > 1 ? "PC2" : "(none)"));
  ws.log << "wrote pga_scores.csv, pga_variance.json, pga_scatter.svg to " << out.string() << '\n';
}

std::vector<LabeledValues> by_group(const Workspace& ws, const std::vector<double>& d) {
  std::vector<LabeledValues> groups;
  for (const auto& g : ws.data.groups()) {
    LabeledValues lv{g, {}};
    for (std::size_t i = 0; i < ws.size(); ++i) {
      if (ws.data.entries[i].group == g) lv.values.push_back(d[i]);
    }
    groups.push_back(std::move(lv));
  }
  return groups;
}

json summary_json(const GroupSummary& s) {
  return json{{"group", s.label},         {"count", s.count},       {"mean", s.mean},
              {"variance", s.variance},   {"min", s.min},           {"q1", s.q1},
              {"median", s.median},       {"q3", s.q3},             {"max", s.max},
              {"lower_fence", s.lower_fence}, {"upper_fence", s.upper_fence}, {"outliers", s.outliers}};
}

void cmd_test(const Workspace& ws, const fs::path& out) {
  const std::vector<double> d = ws.distances_to_reference();
  const DistanceReport report = distance_report(by_group(ws, d));

  json doc;
  doc["metric"] = to_string(ws.config.metric);
  doc["reference"] = reference_name(ws.config.reference);
  doc["alpha"] = kAlpha;
  doc["permutations"] = ws.config.permutations;
  doc["seed"] = ws.config.seed;
  doc["groups"] = json::array();
  doc["summaries"] = json::array();
  doc["pairwise"] = json::array();
  for (const auto& s : report.summaries) {
    doc["groups"].push_back(s.label);
    doc["summaries"].push_back(summary_json(s));
  }
  const auto& g = report.distances;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      json pair{{"a", g[i].label}, {"b", g[j].label}};
      if (g[i].values.size() < 2 || g[j].values.size() < 2) {
        pair["skipped"] = "each group needs at least 2 contours";
        doc["pairwise"].push_back(pair);
        continue;
      }
      const TTestResult t = two_sample_ttest(g[i].values, g[j].values);
      const double p_perm = permutation_test(g[i].values, g[j].values, ws.config.permutations, ws.config.seed);
      pair["t"] = number(t.t);
      pair["df"] = number(t.df);
      pair["p_t"] = t.p;
      pair["p_perm"] = p_perm;
      pair["significant"] = t.p < kAlpha;
      doc["pairwise"].push_back(pair);
    }
  }
  json samples = json::array();
  for (std::size_t i = 0; i < ws.size(); ++i) {
    samples.push_back({{"id", ws.data.entries[i].id}, {"group", ws.data.entries[i].group}, {"distance", d[i]}});
  }
  doc["samples"] = samples;
  write_file(out / "test_report.json", doc.dump(2) + "\n");

  std::vector<svg::Box> boxes;
  for (std::size_t i = 0; i < report.summaries.size(); ++i) {
    const auto& s = report.summaries[i];
    svg::Box b{s.label, s.min, s.q1, s.median, s.q3, s.max, s.lower_fence, s.upper_fence, {}};
    for (std::size_t o : s.outliers) b.outliers.push_back(g[i].values[o]);
    boxes.push_back(std::move(b));
  }
  write_file(out / "distance_boxplot.svg", svg::boxplot(boxes, "Distance to reference", "distance"));
  ws.log << "wrote test_report.json, distance_boxplot.svg to " << out.string() << '\n';
}

void cmd_monitor(const Workspace& ws, const fs::path& out) {
  const auto groups = ws.data.groups();
  const std::string phase1_group = ws.config.phase1_group.empty() ? groups.front() : ws.config.phase1_group;
  if (std::find(groups.begin(), groups.end(), phase1_group) == groups.end()) {
    throw Error(ErrorKind::invalid_argument, "phase-1 group '" + phase1_group + "' not present in the input");
  }
  const std::vector<double> d = ws.distances_to_reference();
  std::vector<double> p1, p2;
  std::vector<std::size_t> idx1, idx2;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (ws.data.entries[i].group == phase1_group) {
      p1.push_back(d[i]);
      idx1.push_back(i);
    } else {
      p2.push_back(d[i]);
      idx2.push_back(i);
    }
  }
  const ControlChart chart = control_chart(p1, p2);

  json doc;
  doc["metric"] = to_string(ws.config.metric);
  doc["reference"] = reference_name(ws.config.reference);
  doc["phase1_group"] = phase1_group;
  doc["center"] = chart.center;
  doc["average_moving_range"] = chart.average_moving_range;
  doc["sigma"] = chart.sigma;
  doc["upper_limit"] = chart.upper_limit;
  doc["lower_limit"] = chart.lower_limit;
  doc["signals"] = chart.signal_count();
  json phase1 = json::array(), phase2 = json::array();
  for (std::size_t k = 0; k < idx1.size(); ++k) {
    phase1.push_back({{"id", ws.data.entries[idx1[k]].id}, {"distance", p1[k]}});
  }
  for (std::size_t k = 0; k < idx2.size(); ++k) {
    const auto& e = ws.data.entries[idx2[k]];
    phase2.push_back({{"id", e.id},
                      {"group", e.group},
                      {"distance", p2[k]},
                      {"out_of_control", static_cast<bool>(chart.out_of_control[k])}});
  }
  doc["phase1"] = phase1;
  doc["phase2"] = phase2;
  write_file(out / "control_chart.json", doc.dump(2) + "\n");

  std::vector<double> all = p1;
  all.insert(all.end(), p2.begin(), p2.end());
  write_file(out / "control_chart.svg",
             svg::control_chart(all, p1.size(), chart.center, chart.lower_limit, chart.upper_limit,
                                chart.out_of_control, "Individuals chart of distance to reference"));
  ws.log << "phase 1: " << p1.size() << " contour(s), phase 2: " << p2.size() << ", signals: "
         << chart.signal_count() << '\n';
}

PointList to_frame_of(const DiscreteCurve& target, const PreShape& shape) {
  const Configuration conf(PointList(target.samples().begin(), target.samples().end()));
  const double size = centroid_size(conf);
  Point centroid;
  for (const auto& p : target.samples()) centroid += p;
  centroid *= 1.0 / static_cast<double>(target.size());
  PointList out;
  out.reserve(shape.size());
  for (const auto& p : shape.points()) out.push_back(p * size + centroid);
  return out;
}

void cmd_align(const Workspace& ws, const fs::path& out) {
  require_count(ws, 2, "align");
  const auto& ref = ws.data.entries.front();
  std::vector<RawContour> aligned{{ref.id, ref.group, PointList(ref.curve.samples().begin(), ref.curve.samples().end())}};
  json records = json::array();

  for (std::size_t i = 1; i < ws.size(); ++i) {
    const auto& e = ws.data.entries[i];
    json rec{{"id", e.id}, {"reference_id", ref.id}, {"metric", to_string(ws.config.metric)}};
    if (ws.config.metric == Metric::procrustes) {
      const Rotation2 r = optimal_rotation(ws.shapes[0], ws.shapes[i]);
      aligned.push_back({e.id, e.group, to_frame_of(ref.curve, rotate(ws.shapes[i], r))});
      rec["distance"] = shape_geodesic(ws.shapes[0], ws.shapes[i]);
      rec["rotation"] = r.angle();
    } else {
      const CurveAlignment a = align_curves(ref.curve, e.curve, ws.elastic);
      aligned.push_back({e.id, e.group, PointList(a.aligned.samples().begin(), a.aligned.samples().end())});
      rec["distance"] = a.record.distance;
      rec["inner"] = a.record.inner;
      rec["resampled"] = a.resampled;
      rec["rotation"] = a.record.rotation.angle();
      rec["shift_a"] = a.record.shift_a;
      rec["shift_b"] = a.record.shift_b;
      json path = json::array();
      for (const auto& node : a.record.path) path.push_back({node.a, node.b});
      rec["path"] = path;
    }
    records.push_back(rec);
  }
  write_file(out / "aligned.csv", serialize_contours(aligned, ContourFormat::csv));
  write_file(out / "alignment.json", records.dump(2) + "\n");

  std::vector<svg::Series> outlines;
  for (const auto& c : aligned) outlines.push_back({c.id, c.points});
  write_file(out / "align_overlay.svg", svg::overlay(outlines, "Aligned outlines"));
  ws.log << "aligned " << ws.size() - 1 << " contour(s) onto " << ref.id << '\n';
}

}  // namespace

Reference parse_reference(std::string_view text) {
  if (text == "circle") return {Reference::Kind::circle, {}};
  if (text == "mean" || text == "frechet-mean") return {Reference::Kind::mean, {}};
  if (text.starts_with("file:")) return {Reference::Kind::file, std::string(text.substr(5))};
  throw Error(ErrorKind::invalid_argument,
              "unknown reference '" + std::string(text) + "' (expected circle, mean or file:PATH)");
}

std::optional<Command> parse_command(std::string_view name) {
  if (name == "distmat") return Command::distmat;
  if (name == "pca") return Command::pca;
  if (name == "test") return Command::test;
  if (name == "monitor") return Command::monitor;
  if (name == "align") return Command::align;
  return std::nullopt;
}

std::string_view to_string(Command c) {
  switch (c) {
    case Command::distmat: return "distmat";
    case Command::pca: return "pca";
    case Command::test: return "test";
    case Command::monitor: return "monitor";
    case Command::align: return "align";
  }
  return "?";
}

std::string_view to_string(Metric m) { return m == Metric::procrustes ? "procrustes" : "elastic"; }

void validate(const RunConfig& config) {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::invalid_argument, msg); };
  if (config.inputs.empty()) fail("at least one --input is required");
  if (config.format != "csv" && config.format != "json" && config.format != "pgm") {
    fail("--format must be csv, json or pgm");
  }
  if (config.resample < kMinCurveSamples) fail("--resample must be at least " + std::to_string(kMinCurveSamples));
  if (config.reference.kind == Reference::Kind::file && config.reference.path.empty()) {
    fail("--reference file: requires a path");
  }
  if (config.components == 0) fail("--components must be positive");
  if (config.permutations < 100) fail("--permutations must be at least 100");
  if (config.min_solidity && !(*config.min_solidity > 0.0 && *config.min_solidity <= 1.0)) {
    fail("--min-solidity must lie in (0, 1]");
  }
}

void execute(const RunConfig& config, std::ostream& log) {
  validate(config);
  const fs::path out = config.out_dir;
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create output directory " + out.string() + ": " + ec.message());

  const Workspace ws(config, log);
  log << to_string(config.command) << ": " << ws.size() << " contour(s), metric "
      << to_string(config.metric) << ", n = " << config.resample << '\n';
  switch (config.command) {
    case Command::distmat: cmd_distmat(ws, out); break;
    case Command::pca: cmd_pca(ws, out); break;
    case Command::test: cmd_test(ws, out); break;
    case Command::monitor: cmd_monitor(ws, out); break;
    case Command::align: cmd_align(ws, out); break;
  }
}

int run(const RunConfig& config, std::ostream& log, std::ostream& err) {
  try {
    execute(config, log);
    return 0;
  } catch (const Error& e) {
    err << error_json(to_string(e.kind()), e.what()) << std::endl;
    return e.kind() == ErrorKind::invalid_argument ? 2 : 1;
  } catch (const std::exception& e) {
    err << error_json("internal", e.what()) << std::endl;
    return 1;
  }
}

std::string error_json(std::string_view kind, std::string_view message) {
  const json j{{"error", std::string(kind)}, {"message", std::string(message)}};
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

}  // namespace shapeforge::cli
