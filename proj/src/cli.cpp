#include "alluvial/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "alluvial/ingest.hpp"
#include "alluvial/objective.hpp"
#include "alluvial/oracle.hpp"
#include "alluvial/render.hpp"
#include "alluvial/result_json.hpp"
#include "alluvial/wlomp.hpp"
#include "alluvial/wpomp.hpp"

namespace alluvial {

namespace {

using nlohmann::json;

struct Options {
  std::string input;
  std::string weight_col;
  std::string default_sorting = "alphabetical";
  std::string shape = "auto";
  std::string missing_label = "Missing";
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string out;

  std::string method = "neighbornet";
  bool optimize_layers = false;
  bool every_start = false;
  std::string layer_metric = "objective";
  double c_scale = 1.0;
  std::string dump_distance;

  std::string color_mode = "cluster";
  std::string reference_layer = "leftmost";
  double min_parent_score = 0.0;
  double resolution = 1.0;

  std::string svg;
  double width = 960.0;
  double height = 600.0;
  bool no_labels = false;

  std::string solution;
  std::string problem = "wpomp";
  bool fix_layers = false;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw DataError("cannot write '" + path + "'");
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
  } else {
    write_file(o.out, text);
  }
}

IngestConfig ingest_config(const Options& o, bool seed_reserved) {
  IngestConfig cfg;
  if (!o.weight_col.empty()) cfg.weight_column = o.weight_col;
  cfg.default_sorting = parse_default_sorting(o.default_sorting);
  cfg.missing_label = o.missing_label;
  if (o.shape == "auto") cfg.shape = InputShape::automatic;
  else if (o.shape == "per_row") cfg.shape = InputShape::per_row;
  else if (o.shape == "grouped") cfg.shape = InputShape::grouped;
  else throw ConfigError("unknown input shape '" + o.shape + "'");
  // One --seed drives both random block sorting and the random solver.
  if (o.has_seed && cfg.default_sorting == DefaultSorting::random) cfg.seed = o.seed;
  if (o.has_seed && cfg.default_sorting != DefaultSorting::random && !seed_reserved) {
    throw ConfigError("--seed requires --default-sorting random or --method random");
  }
  cfg.validate();
  return cfg;
}

GroupedTable load(const Options& o, bool seed_reserved) {
  const IngestConfig cfg = ingest_config(o, seed_reserved);
  return data_preprocess(read_table(o.input), cfg);
}

LayerMetric parse_layer_metric(const std::string& name) {
  if (name == "objective") return LayerMetric::objective;
  if (name == "ari") return LayerMetric::ari;
  throw ConfigError("unknown layer metric '" + name + "'");
}

WpompConfig wpomp_config(const Options& o, const GroupedTable& g) {
  WpompConfig cfg;
  cfg.method = parse_sort_method(o.method);
  cfg.optimize_layers = o.optimize_layers;
  cfg.layer_order_every_start = o.every_start;
  cfg.layer_metric = parse_layer_metric(o.layer_metric);
  cfg.c_scale = o.c_scale;
  if (cfg.method == SortMethod::random && o.has_seed) cfg.seed = o.seed;
  cfg.validate(g);
  return cfg;
}

ColorScheme color_scheme(const Options& o, std::size_t layers) {
  ColorScheme scheme;
  scheme.mode = parse_color_mode(o.color_mode);
  const auto [kind, layer] = parse_reference(o.reference_layer);
  scheme.reference = kind;
  scheme.reference_layer = layer;
  scheme.min_parent_score = o.min_parent_score;
  scheme.cluster_resolution = o.resolution;
  scheme.validate(layers);
  return scheme;
}

bool method_uses_seed(const Options& o) { return o.method == "random"; }

json method_json(const Options& o, const WpompConfig& cfg) {
  json j{{"method", std::string(to_string(cfg.method))},
         {"optimize_layers", cfg.optimize_layers},
         {"layer_order_every_start", cfg.layer_order_every_start},
         {"layer_metric", o.layer_metric},
         {"c_scale", cfg.c_scale},
         {"default_sorting", o.default_sorting}};
  j["seed"] = o.has_seed ? json(o.seed) : json(nullptr);
  return j;
}

struct Solved {
  GroupedTable g;
  WpompConfig cfg;
  ResultDocument doc;
};

Solved run_solve(const Options& o, const std::string& command) {
  Solved s;
  s.g = load(o, method_uses_seed(o));
  s.cfg = wpomp_config(o, s.g);
  if (!o.dump_distance.empty()) {
    std::ostringstream csv;
    build_distance_matrix(s.g, s.cfg.c_scale).write_csv(csv, s.g);
    write_file(o.dump_distance, csv.str());
  }
  s.doc.command = command;
  s.doc.stats = compute_stats(s.g, s.g.observations());
  s.doc.objective_before = total_objective(s.g, LayoutSolution::identity(s.g));
  s.doc.solution = solve(s.g, s.cfg);
  s.doc.objective_after = total_objective(s.g, s.doc.solution);
  s.doc.method = method_json(o, s.cfg);
  return s;
}

void add_colors(Solved& s, const Options& o) {
  const ColorScheme scheme = color_scheme(o, s.g.layers());
  s.doc.colors = assign_colors(OverlapMatrix(s.g), scheme, s.doc.solution.layer_order);
  s.doc.method["color_mode"] = std::string(to_string(scheme.mode));
  s.doc.method["reference_layer"] = reference_name(scheme.reference, scheme.reference_layer);
  s.doc.method["min_parent_score"] = scheme.min_parent_score;
  s.doc.method["cluster_resolution"] = scheme.cluster_resolution;
}

std::string svg_for(const Solved& s, const Options& o) {
  RenderSpec spec;
  spec.width = o.width;
  spec.height = o.height;
  spec.show_labels = !o.no_labels;
  return render_svg(s.g, s.doc.solution, *s.doc.colors, spec);
}

int cmd_stats(const Options& o, std::ostream& out) {
  const GroupedTable g = load(o, false);
  json j{{"schema", kSchemaVersion},
         {"tool", json{{"name", kToolName}, {"version", kToolVersion}}},
         {"command", "stats"},
         {"layers", g.layer_names()},
         {"stats", stats_json(compute_stats(g, g.observations()))}};
  emit(o, dump_json(j), out);
  return 0;
}

int cmd_sort(const Options& o, std::ostream& out) {
  const Solved s = run_solve(o, "sort");
  emit(o, dump_json(document_json(s.g, s.doc)), out);
  return 0;
}

int cmd_colors(const Options& o, std::ostream& out) {
  Solved s = run_solve(o, "colors");
  add_colors(s, o);
  if (!o.svg.empty()) write_file(o.svg, svg_for(s, o));
  emit(o, dump_json(document_json(s.g, s.doc)), out);
  return 0;
}

int cmd_render(const Options& o, std::ostream& out) {
  Solved s = run_solve(o, "render");
  add_colors(s, o);
  const std::string svg = svg_for(s, o);
  if (o.svg.empty()) {
    out << svg;
  } else {
    write_file(o.svg, svg);
  }
  if (!o.out.empty()) write_file(o.out, dump_json(document_json(s.g, s.doc)));
  return 0;
}

int cmd_objective(const Options& o, std::ostream& out) {
  const GroupedTable g = load(o, false);
  LayoutSolution sol = LayoutSolution::identity(g);
  if (!o.solution.empty()) {
    std::ifstream f(o.solution, std::ios::binary);
    if (!f) throw DataError("cannot open solution file '" + o.solution + "'");
    json doc;
    try {
      doc = json::parse(f);
    } catch (const json::exception& e) {
      throw DataError(o.solution + ": " + e.what());
    }
    sol = solution_from_json(doc.contains("solution") ? doc.at("solution") : doc, g);
  }
  const auto ranks = sol.ranks();
  json pairs = json::array();
  for (std::size_t r = 0; r + 1 < g.layers(); ++r) {
    const std::size_t a = sol.layer_order[r];
    const std::size_t b = sol.layer_order[r + 1];
    const auto view = LayerPairView::from_layers(g, a, b, ranks[a], ranks[b]);
    pairs.push_back(json{{"left", g.layer_names()[a]},
                         {"right", g.layer_names()[b]},
                         {"objective", pair_objective(view)},
                         {"ari", compute_ari(g, a, b)}});
  }
  json j{{"schema", kSchemaVersion},
         {"tool", json{{"name", kToolName}, {"version", kToolVersion}}},
         {"command", "objective"},
         {"objective", total_objective(g, sol)},
         {"pairs", std::move(pairs)},
         {"solution", solution_json(g, sol)}};
  emit(o, dump_json(j), out);
  return 0;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  const GroupedTable g = load(o, false);
  if (o.problem != "wpomp" && o.problem != "wlomp") {
    throw ConfigError("unknown oracle problem '" + o.problem + "'");
  }
  json j{{"schema", kSchemaVersion},
         {"tool", json{{"name", kToolName}, {"version", kToolVersion}}},
         {"command", "oracle"},
         {"problem", o.problem},
         {"stats", stats_json(compute_stats(g, g.observations()))}};
  if (o.problem == "wpomp") {
    const auto res = brute_force_wpomp(g, o.fix_layers);
    j["fix_layer_order"] = o.fix_layers;
    j["candidates"] = res.candidates;
    j["objective"] = res.best.objective;
    j["solution"] = solution_json(g, res.best);
  } else {
    const auto res = brute_force_wlomp(g);
    j["space"] = big_count_json(res.space);
    j["candidates"] = res.candidates;
    j["matched_weight"] = res.best.matched_weight;
    j["colors"] = colors_json(g, res.best);
  }
  emit(o, dump_json(j), out);
  return 0;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--input", o.input, "CSV or TSV file")->required();
  cmd->add_option("--weight-col", o.weight_col, "Column holding row weights");
  cmd->add_option("--default-sorting", o.default_sorting,
                  "alphabetical, reverse_alphabetical, increasing, decreasing or random");
  cmd->add_option("--input-shape", o.shape, "auto, per_row or grouped");
  cmd->add_option("--missing-label", o.missing_label, "Label for empty or NA cells");
  cmd->add_option("--seed", o.seed, "Seed for random sorting or the random method");
  cmd->add_option("--out", o.out, "Write JSON here instead of stdout");
}

void add_solver(CLI::App* cmd, Options& o) {
  cmd->add_option("--method", o.method,
                  "neighbornet, tsp, greedy_WOLF, greedy_WBLF, random or none");
  cmd->add_flag("--optimize-layers", o.optimize_layers, "Reorder layers with a TSP tour");
  cmd->add_flag("--layer-order-every-start", o.every_start,
                "Recompute the layer order at every cycle start");
  cmd->add_option("--layer-metric", o.layer_metric, "objective or ari");
  cmd->add_option("--c-scale", o.c_scale, "Distance scale factor");
  cmd->add_option("--dump-distance", o.dump_distance, "Write the block distance matrix as CSV");
}

void add_coloring(CLI::App* cmd, Options& o) {
  cmd->add_option("--color-mode", o.color_mode, "cluster or reference");
  cmd->add_option("--reference-layer", o.reference_layer,
                  "leftmost, rightmost, rolling_left, rolling_right or a layer index");
  cmd->add_option("--min-parent-score", o.min_parent_score, "Minimum score to inherit a color");
  cmd->add_option("--resolution", o.resolution, "Clustering resolution");
  cmd->add_option("--svg", o.svg, "Write the SVG plot here");
  cmd->add_option("--width", o.width, "Canvas width in px");
  cmd->add_option("--height", o.height, "Canvas height in px");
  cmd->add_flag("--no-labels", o.no_labels, "Omit block and layer labels");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Order and color alluvial plots", kToolName};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  auto* stats = app.add_subcommand("stats", "Dataset size and search-space counts");
  add_common(stats, o);
  auto* sort = app.add_subcommand("sort", "Optimize layer and block orders");
  add_common(sort, o);
  add_solver(sort, o);
  auto* colors = app.add_subcommand("colors", "Optimize orders and block colors");
  add_common(colors, o);
  add_solver(colors, o);
  add_coloring(colors, o);
  auto* render = app.add_subcommand("render", "Optimize and draw the plot as SVG");
  add_common(render, o);
  add_solver(render, o);
  add_coloring(render, o);
  auto* objective = app.add_subcommand("objective", "Weighted crossings of a layout");
  add_common(objective, o);
  objective->add_option("--solution", o.solution, "JSON document with a solution object");
  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum for small inputs");
  add_common(oracle, o);
  oracle->add_option("--problem", o.problem, "wpomp or wlomp");
  oracle->add_flag("--fix-layers", o.fix_layers, "Keep the input layer order");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  for (auto* cmd : {stats, sort, colors, render, objective, oracle}) {
    if (cmd->parsed() && cmd->count("--seed") > 0) o.has_seed = true;
  }

  try {
    if (stats->parsed()) return cmd_stats(o, out);
    if (sort->parsed()) return cmd_sort(o, out);
    if (colors->parsed()) return cmd_colors(o, out);
    if (render->parsed()) return cmd_render(o, out);
    if (objective->parsed()) return cmd_objective(o, out);
    return cmd_oracle(o, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace alluvial
