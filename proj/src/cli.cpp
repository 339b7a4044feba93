#include "coarse/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>

#include "coarse/amenability.hpp"
#include "coarse/error.hpp"
#include "coarse/growth.hpp"
#include "coarse/io.hpp"
#include "coarse/quasi_action.hpp"
#include "coarse/quasilattice.hpp"
#include "coarse/rough_graph.hpp"

namespace coarse::cli {
namespace {

using io::Json;

std::string num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

std::pair<double, double> parse_range(const std::string& text, const char* what) {
  static const std::regex pattern(R"(^\s*(-?[0-9.eE+-]+?)\.\.(-?[0-9.eE+-]+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw SchemaError(std::string(what) + " must look like LO..HI");
  try {
    return {std::stod(m[1].str()), std::stod(m[2].str())};
  } catch (const std::exception&) {
    throw SchemaError(std::string(what) + " must look like LO..HI");
  }
}

std::uint64_t effective_seed(std::uint64_t configured) {
  const char* env = std::getenv("COARSE_SEED");
  if (env == nullptr || *env == '\0') return configured;
  char* end = nullptr;
  const auto v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw SchemaError("COARSE_SEED must be an unsigned integer");
  return v;
}

Json collect_config(const CLI::App* sub, const std::string& command, std::uint64_t seed) {
  Json options = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string name = opt->get_lnames().front();
    if (name == "help" || name == "help-all") continue;
    if (opt->get_expected_min() == 0) {
      options[name] = opt->count() > 0;
    } else if (opt->count() > 0) {
      const auto& res = opt->results();
      if (res.size() == 1) options[name] = res.front();
      else options[name] = res;
    } else if (!opt->get_default_str().empty()) {
      options[name] = opt->get_default_str();
    }
  }
  return Json{{"command", command}, {"seed", seed}, {"options", options}};
}

void emit(const Json& doc, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << doc.dump(2) << "\n";
  } else {
    io::write_file(path, doc.dump(2) + "\n");
  }
}

void emit_text(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) out << text;
  else io::write_file(path, text);
}

std::shared_ptr<const QuasiLattice> load_lattice(const std::string& path) {
  auto j = io::read_json(path);
  if (j.contains("format") && j["format"] == "coarse-graph") j = j.at("lattice");
  return std::make_shared<const QuasiLattice>(io::lattice_from_json(j));
}

// "-3..3" after an option would otherwise parse as a short flag.
std::vector<std::string> glue_negative_values(const std::vector<std::string>& args) {
  static const std::regex negative(R"(^-[0-9.].*$)");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a.rfind("--", 0) == 0 && a.find('=') == std::string::npos && i + 1 < args.size() &&
        std::regex_match(args[i + 1], negative)) {
      out.push_back(a + "=" + args[i + 1]);
      ++i;
    } else {
      out.push_back(a);
    }
  }
  return out;
}

std::string space_listing() {
  std::ostringstream s;
  s << "model        id form            c  kind\n";
  s << "zd           zd:D               1  discrete group, word metric (L1)\n";
  s << "free         free:K             0  discrete group, reduced words\n";
  s << "heisenberg   heisenberg         1  discrete group, generators x, y\n";
  s << "euclidean    euclidean:D[:group] 0 continuous, additive group with :group\n";
  s << "h2           h2                 0  upper half-plane, affine group (u, a)\n";
  return s.str();
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"coarse: rough Cayley graphs, growth and Folner sets", "coarse"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::uint64_t seed_opt = 1;
  std::function<int()> action;
  // One-line summaries go to stderr whenever stdout carries the document.
  auto summary = [&](const std::string& path) -> std::ostream& { return path.empty() ? err : out; };
  std::string command;

  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", seed_opt, "random seed (COARSE_SEED overrides)")->capture_default_str(); };
  auto config_of = [&](CLI::App* sub) { return collect_config(sub, command, effective_seed(seed_opt)); };

  // space list
  auto* space_cmd = app.add_subcommand("space", "metric-space models")->require_subcommand(1);
  auto* space_list = space_cmd->add_subcommand("list", "list the models");
  space_list->callback([&] {
    command = "space list";
    action = [&] {
      out << space_listing();
      return 0;
    };
  });

  // lattice build | verify
  auto* lattice_cmd = app.add_subcommand("lattice", "quasi-lattices")->require_subcommand(1);
  std::string l_space, l_window, l_n, l_u, l_out, l_lattice;
  double l_delta = 0.0, l_margin = -1.0;
  int l_ball = -1;
  bool l_horo = false;
  std::size_t l_probes = 1000;
  std::vector<double> l_R{1.0};
  auto* lattice_build = lattice_cmd->add_subcommand("build", "build a lattice");
  lattice_build->add_option("--space", l_space, "model id, e.g. zd:2, h2");
  lattice_build->add_option("--window", l_window, "window, e.g. ball:10 (a disk about i for h2), box:0..9,0..9 or h2box:-5..5,-2..2:0.25");
  lattice_build->add_option("--delta", l_delta, "separation for a greedy net");
  lattice_build->add_flag("--horocyclic", l_horo, "the horocyclic lattice of the half-plane");
  lattice_build->add_option("--n", l_n, "level range LO..HI (horocyclic)");
  lattice_build->add_option("--u", l_u, "u range LO..HI (horocyclic)");
  lattice_build->add_option("--group-ball", l_ball, "whole word ball of this radius");
  lattice_build->add_option("--probes", l_probes, "density probes")->capture_default_str();
  lattice_build->add_option("--margin", l_margin, "probe margin (default: horocyclic 1.2, else max R)");
  lattice_build->add_option("--R", l_R, "multiplicity radii")->delimiter(',')->capture_default_str();
  lattice_build->add_option("--out", l_out, "output JSON (stdout if absent)");
  add_seed(lattice_build);
  lattice_build->callback([&] {
    command = "lattice build";
    action = [&] {
      const auto config = config_of(lattice_build);
      const auto seed = config["seed"].get<std::uint64_t>();
      QuasiLattice lattice = [&] {
        if (l_horo) {
          if (!l_window.empty()) {
            const auto w = parse_window(l_window);
            const auto* ball = std::get_if<BallWindow>(&w);
            if (ball == nullptr || !l_n.empty() || !l_u.empty()) {
              throw SchemaError("--horocyclic takes either --window ball:R or --n and --u");
            }
            return horocyclic_ball_lattice(ball->radius);
          }
          if (l_n.empty() || l_u.empty()) throw SchemaError("--horocyclic needs --n and --u");
          auto [n_lo, n_hi] = parse_range(l_n, "--n");
          auto [u_lo, u_hi] = parse_range(l_u, "--u");
          if (n_lo != std::floor(n_lo) || n_hi != std::floor(n_hi)) throw SchemaError("--n must be an integer range");
          return horocyclic_lattice(u_lo, u_hi, static_cast<int>(n_lo), static_cast<int>(n_hi));
        }
        if (l_space.empty()) throw SchemaError("--space is required");
        const auto space = SpaceModel::parse(l_space);
        if (l_ball >= 0) return group_ball_lattice(space, l_ball);
        if (l_window.empty() || l_delta <= 0.0) throw SchemaError("a greedy net needs --window and --delta > 0");
        return greedy_net(space, parse_window(l_window), l_delta);
      }();
      Json doc = io::lattice_to_json(lattice, config);
      const double margin =
          l_margin >= 0.0 ? l_margin
                          : (l_horo ? 1.2 : (l_R.empty() ? 0.0 : *std::max_element(l_R.begin(), l_R.end())));
      std::string cert_note = "no certificate";
      if (!lattice.vacuous && l_probes > 0) {
        try {
          const auto probes = default_probes(lattice, margin, l_probes, seed);
          const auto v = verify_quasilattice(lattice, probes, l_R);
          doc["certificates"] = io::to_json(v, seed);
          cert_note = "density " + num(v.density.max_distance) + " over " + std::to_string(probes.size()) + " probes";
        } catch (const WindowError&) {
          doc["certificates"] = Json{{"vacuous", true}, {"reason", "window shrunk by the margin is empty"}};
          cert_note = "vacuous certificate";
        }
      }
      emit(doc, l_out, out);
      summary(l_out) << "lattice build: " << lattice.points.size() << " points (" << to_string(lattice.construction) << ", delta "
          << num(lattice.separation_delta) << ", r " << num(lattice.density_radius) << "), " << cert_note << "\n";
      return 0;
    };
  });

  auto* lattice_verify = lattice_cmd->add_subcommand("verify", "certify density and multiplicity");
  lattice_verify->add_option("--lattice", l_lattice, "lattice JSON")->required();
  lattice_verify->add_option("--probes", l_probes, "number of probes")->capture_default_str();
  lattice_verify->add_option("--margin", l_margin, "probe margin (default max R, at least the density radius)");
  lattice_verify->add_option("--R", l_R, "multiplicity radii")->delimiter(',')->capture_default_str();
  lattice_verify->add_option("--out", l_out, "output JSON");
  add_seed(lattice_verify);
  lattice_verify->callback([&] {
    command = "lattice verify";
    action = [&] {
      const auto config = config_of(lattice_verify);
      const auto seed = config["seed"].get<std::uint64_t>();
      const auto lattice = load_lattice(l_lattice);
      const double maxR = l_R.empty() ? 0.0 : *std::max_element(l_R.begin(), l_R.end());
      const double margin = l_margin >= 0.0 ? l_margin : std::max(maxR, lattice->density_radius);
      const auto probes = default_probes(*lattice, margin, l_probes, seed);
      const auto v = verify_quasilattice(*lattice, probes, l_R);
      emit(Json{{"config", config}, {"certificates", io::to_json(v, seed)}}, l_out, out);
      if (!v.density.vacuous && v.density.max_distance > lattice->density_radius + kTolerance) {
        throw CertificationError("density " + num(v.density.max_distance) + " exceeds r = " + num(lattice->density_radius),
                                 v.density.worst_probe);
      }
      summary(l_out) << "lattice verify: density " << num(v.density.max_distance) << " <= " << num(lattice->density_radius) << " over "
          << probes.size() << " probes";
      for (const auto& [R, M] : v.multiplicity.entries) summary(l_out) << ", M(" << num(R) << ") = " << M;
      summary(l_out) << "\n";
      return 0;
    };
  });

  // graph build | stats | export
  auto* graph_cmd = app.add_subcommand("graph", "rough Cayley graphs")->require_subcommand(1);
  std::string g_lattice, g_graph, g_out, g_format = "dot";
  double g_r = -1.0, g_c = -1.0;
  bool g_certify = false;
  std::size_t g_pairs = 1000;
  auto* graph_build = graph_cmd->add_subcommand("build", "threshold graph on a lattice");
  graph_build->add_option("--lattice", g_lattice, "lattice JSON")->required();
  graph_build->add_option("--r", g_r, "override the density radius");
  graph_build->add_option("--c", g_c, "override the coarse-geodesic constant");
  graph_build->add_option("--out", g_out, "output JSON");
  add_seed(graph_build);
  graph_build->callback([&] {
    command = "graph build";
    action = [&] {
      const auto config = config_of(graph_build);
      GraphOptions options;
      if (g_r >= 0.0) options.r = g_r;
      if (g_c >= 0.0) options.c = g_c;
      const auto graph = build_graph(load_lattice(g_lattice), options);
      emit(io::graph_to_json(graph, config), g_out, out);
      summary(g_out) << "graph build: " << graph.vertex_count() << " vertices, " << graph.edge_count() << " edges, threshold "
          << num(graph.threshold()) << ", max degree " << graph.degree_bound() << ", connected\n";
      return 0;
    };
  });

  auto* graph_stats = graph_cmd->add_subcommand("stats", "graph statistics and QI certificate");
  graph_stats->add_option("--graph", g_graph, "graph JSON")->required();
  graph_stats->add_flag("--certify", g_certify, "check the two quasi-isometry inequalities");
  graph_stats->add_option("--pairs", g_pairs, "interior pairs to check")->capture_default_str();
  graph_stats->add_option("--out", g_out, "output JSON");
  add_seed(graph_stats);
  graph_stats->callback([&] {
    command = "graph stats";
    action = [&] {
      const auto config = config_of(graph_stats);
      const auto graph = io::graph_from_json(io::read_json(g_graph));
      std::size_t border = 0;
      for (std::size_t v = 0; v < graph.vertex_count(); ++v) border += graph.is_border(v) ? 1 : 0;
      Json doc{{"config", config},
               {"vertices", graph.vertex_count()},
               {"edges", graph.edge_count()},
               {"threshold", graph.threshold()},
               {"degree_bound", graph.degree_bound()},
               {"components", component_sizes(graph).size()},
               {"border_vertices", border}};
      std::string qi_note;
      if (g_certify) {
        const auto qi = certify_qi(graph, QiCheckOptions{g_pairs, config["seed"].get<std::uint64_t>(), 10000});
        doc["qi"] = io::to_json(qi);
        qi_note = ", QI (C, r) = (" + num(qi.C) + ", " + num(qi.r) + ") on " + std::to_string(qi.sample_size) + " pairs";
      }
      emit(doc, g_out, out);
      summary(g_out) << "graph stats: " << graph.vertex_count() << " vertices, " << graph.edge_count() << " edges, " << border
          << " border vertices" << qi_note << "\n";
      return 0;
    };
  });

  auto* graph_export = graph_cmd->add_subcommand("export", "DOT or CSV edge list");
  graph_export->add_option("--graph", g_graph, "graph JSON")->required();
  graph_export->add_option("--format", g_format, "dot or csv")->check(CLI::IsMember({"dot", "csv"}))->capture_default_str();
  graph_export->add_option("--out", g_out, "output file");
  add_seed(graph_export);
  graph_export->callback([&] {
    command = "graph export";
    action = [&] {
      const auto config = config_of(graph_export);
      const auto graph = io::graph_from_json(io::read_json(g_graph));
      std::ostringstream text;
      if (g_format == "dot") io::write_dot(text, graph, config);
      else io::write_edges_csv(text, graph, config);
      emit_text(text.str(), g_out, out);
      if (!g_out.empty()) out << "graph export: " << graph.edge_count() << " edges as " << g_format << "\n";
      return 0;
    };
  });

  // qaction certify | orbit-qi | conjugacy
  auto* qa_cmd = app.add_subcommand("qaction", "quasi-actions")->require_subcommand(1);
  std::string q_lattice, q_lattice2, q_metric = "ambient", q_out;
  double q_group_radius = 2.0, q_point_radius = 2.0;
  std::vector<double> q_R{1.0, 2.0, 4.0}, q_radii{5.0, 10.0};
  long q_x0 = -1;
  auto metric_of = [&] { return q_metric == "graph" ? TargetMetric::graph : TargetMetric::ambient; };

  auto* qa_certify = qa_cmd->add_subcommand("certify", "quasi-action axiom defects");
  qa_certify->add_option("--lattice", q_lattice, "lattice JSON")->required();
  qa_certify->add_option("--metric", q_metric, "ambient or graph")->check(CLI::IsMember({"ambient", "graph"}))->capture_default_str();
  qa_certify->add_option("--group-radius", q_group_radius, "radius of the s, t sample")->capture_default_str();
  qa_certify->add_option("--point-radius", q_point_radius, "radius of the x sample")->capture_default_str();
  qa_certify->add_option("--R", q_R, "properness radii")->delimiter(',')->capture_default_str();
  qa_certify->add_option("--out", q_out, "output JSON");
  add_seed(qa_certify);
  qa_certify->callback([&] {
    command = "qaction certify";
    action = [&] {
      const auto config = config_of(qa_certify);
      QuasiAction qa(load_lattice(q_lattice), metric_of());
      AxiomSample sample;
      sample.group_radius = q_group_radius;
      sample.point_radius = q_point_radius;
      sample.properness_R = q_R;
      sample.seed = config["seed"].get<std::uint64_t>();
      const auto cert = certify_axioms(qa, sample);
      emit(Json{{"config", config}, {"certificate", io::to_json(cert)}}, q_out, out);
      summary(q_out) << "qaction certify: identity " << num(cert.identity_defect) << ", associativity "
          << num(cert.associativity_defect) << ", orbit diameter " << num(cert.orbit_diameter) << ", per-s (C, r) = ("
          << num(cert.per_s.C) << ", " << num(cert.per_s.r) << ")\n";
      return 0;
    };
  });

  auto* qa_orbit = qa_cmd->add_subcommand("orbit-qi", "orbit-map quasi-isometry constants");
  qa_orbit->add_option("--lattice", q_lattice, "lattice JSON")->required();
  qa_orbit->add_option("--metric", q_metric, "ambient or graph")->check(CLI::IsMember({"ambient", "graph"}))->capture_default_str();
  qa_orbit->add_option("--x0", q_x0, "orbit base vertex (default: nearest the base point)");
  qa_orbit->add_option("--radii", q_radii, "group-ball radii")->delimiter(',')->capture_default_str();
  qa_orbit->add_option("--out", q_out, "output JSON");
  add_seed(qa_orbit);
  qa_orbit->callback([&] {
    command = "qaction orbit-qi";
    action = [&] {
      const auto config = config_of(qa_orbit);
      const auto lattice = load_lattice(q_lattice);
      QuasiAction qa(lattice, metric_of());
      const std::size_t x0 = q_x0 >= 0 ? static_cast<std::size_t>(q_x0) : qa.phi(lattice->space.base_point());
      const auto report = orbit_map_qi(qa, x0, q_radii, 10000, config["seed"].get<std::uint64_t>());
      emit(Json{{"config", config}, {"orbit", io::to_json(report)}}, q_out, out);
      const auto& last = report.constants.back();
      summary(q_out) << "qaction orbit-qi: (C, r) = (" << num(last.C) << ", " << num(last.r) << ") at radius "
          << num(report.radii.back()) << ", " << (report.stable ? "stable" : "NOT stable") << "\n";
      if (!report.stable) throw CertificationError("orbit-map constants grew by more than 10%", to_string(lattice->points[x0]));
      return 0;
    };
  });

  auto* qa_conj = qa_cmd->add_subcommand("conjugacy", "quasi-conjugacy defect of two lattices");
  qa_conj->add_option("--lattice", q_lattice, "first lattice JSON")->required();
  qa_conj->add_option("--lattice2", q_lattice2, "second lattice JSON")->required();
  qa_conj->add_option("--metric", q_metric, "ambient or graph")->check(CLI::IsMember({"ambient", "graph"}))->capture_default_str();
  qa_conj->add_option("--group-radius", q_group_radius, "radius of the s sample")->capture_default_str();
  qa_conj->add_option("--point-radius", q_point_radius, "radius of the x sample")->capture_default_str();
  qa_conj->add_option("--out", q_out, "output JSON");
  add_seed(qa_conj);
  qa_conj->callback([&] {
    command = "qaction conjugacy";
    action = [&] {
      const auto config = config_of(qa_conj);
      QuasiAction qa1(load_lattice(q_lattice), metric_of());
      QuasiAction qa2(load_lattice(q_lattice2), metric_of());
      const double defect = quasi_conjugacy_defect(
          qa1, qa2, ConjugacySample{q_group_radius, q_point_radius, 10000, config["seed"].get<std::uint64_t>()});
      emit(Json{{"config", config}, {"defect", defect}}, q_out, out);
      summary(q_out) << "qaction conjugacy: defect " << num(defect) << "\n";
      return 0;
    };
  });

  // growth run | classify | compare
  auto* growth_cmd = app.add_subcommand("growth", "ball growth")->require_subcommand(1);
  std::string gr_graph, gr_space, gr_out, gr_series, gr_a, gr_b;
  int gr_max = 8;
  long gr_x0 = -1;
  auto* growth_run = growth_cmd->add_subcommand("run", "ball sizes of a graph or group");
  growth_run->add_option("--graph", gr_graph, "graph JSON");
  growth_run->add_option("--space", gr_space, "discrete group model id");
  growth_run->add_option("--max-m", gr_max, "largest radius")->capture_default_str();
  growth_run->add_option("--x0", gr_x0, "base vertex (default: nearest the base point)");
  growth_run->add_option("--out", gr_out, "output CSV");
  add_seed(growth_run);
  growth_run->callback([&] {
    command = "growth run";
    action = [&] {
      const auto config = config_of(growth_run);
      if (gr_graph.empty() == gr_space.empty()) throw SchemaError("give exactly one of --graph and --space");
      GrowthSeries series;
      if (!gr_graph.empty()) {
        const auto graph = io::graph_from_json(io::read_json(gr_graph));
        series = ball_sizes(graph, gr_x0 >= 0 ? static_cast<std::size_t>(gr_x0) : graph.center(), gr_max);
      } else {
        series = ball_sizes(SpaceModel::parse(gr_space), gr_max);
      }
      std::ostringstream csv;
      io::write_series_csv(csv, series, config);
      emit_text(csv.str(), gr_out, out);
      summary(gr_out) << "growth run: " << series.values.size() << " terms, |N_" << gr_max << "| = " << series.values.back() << "\n";
      return 0;
    };
  });

  auto* growth_classify = growth_cmd->add_subcommand("classify", "growth type of a series");
  growth_classify->add_option("--series", gr_series, "series CSV")->required();
  growth_classify->add_option("--out", gr_out, "output JSON");
  add_seed(growth_classify);
  growth_classify->callback([&] {
    command = "growth classify";
    action = [&] {
      const auto config = config_of(growth_classify);
      std::istringstream in(io::read_file(gr_series));
      const auto verdict = classify_growth(io::read_series_csv(in));
      emit(Json{{"config", config}, {"verdict", io::to_json(verdict)}}, gr_out, out);
      summary(gr_out) << "growth classify: " << to_string(verdict.kind);
      if (verdict.kind != GrowthClass::inconclusive) summary(gr_out) << " " << num(verdict.estimate) << " +- " << num(verdict.half_width);
      if (verdict.too_short) summary(gr_out) << " (series too short)";
      summary(gr_out) << "\n";
      return 0;
    };
  });

  auto* growth_compare = growth_cmd->add_subcommand("compare", "sandwich search between two series");
  growth_compare->add_option("--a", gr_a, "first series CSV")->required();
  growth_compare->add_option("--b", gr_b, "second series CSV")->required();
  growth_compare->add_option("--out", gr_out, "output JSON");
  add_seed(growth_compare);
  growth_compare->callback([&] {
    command = "growth compare";
    action = [&] {
      const auto config = config_of(growth_compare);
      std::istringstream in_a(io::read_file(gr_a)), in_b(io::read_file(gr_b));
      const auto verdict = compare_growth(io::read_series_csv(in_a), io::read_series_csv(in_b));
      emit(Json{{"config", config}, {"verdict", io::to_json(verdict)}}, gr_out, out);
      if (verdict.equivalent) {
        summary(gr_out) << "growth compare: equivalent with alpha " << verdict.alpha << ", beta " << verdict.beta << ", gamma "
            << verdict.gamma << "\n";
      } else {
        summary(gr_out) << "growth compare: not shown equivalent on " << verdict.overlap << " terms\n";
      }
      return 0;
    };
  });

  // folner ratio | scan
  auto* folner_cmd = app.add_subcommand("folner", "c-boundaries and Folner ratios")->require_subcommand(1);
  std::string f_graph, f_space, f_family = "boxes", f_out, f_csv;
  double f_c = 1.0, f_epsilon = 0.1, f_threshold = -1.0, f_z_scale = 1.0;
  int f_ball = -1;
  double f_box = -1.0;
  std::vector<double> f_sizes;
  bool f_all = false;
  auto* folner_ratio_cmd = folner_cmd->add_subcommand("ratio", "ratio of one ball or box");
  folner_ratio_cmd->add_option("--graph", f_graph, "graph JSON")->required();
  folner_ratio_cmd->add_option("--c", f_c, "boundary width in hops")->capture_default_str();
  folner_ratio_cmd->add_option("--ball", f_ball, "graph ball radius around the center vertex");
  folner_ratio_cmd->add_option("--box", f_box, "coordinate box parameter");
  folner_ratio_cmd->add_option("--z-scale", f_z_scale, "Heisenberg box height factor")->capture_default_str();
  add_seed(folner_ratio_cmd);
  folner_ratio_cmd->callback([&] {
    command = "folner ratio";
    action = [&] {
      const auto graph = io::graph_from_json(io::read_json(f_graph));
      if ((f_ball >= 0) == (f_box >= 0.0)) throw SchemaError("give exactly one of --ball and --box");
      const auto A = f_ball >= 0 ? ball_set(graph, f_ball) : box_set(graph, f_box, f_z_scale);
      const auto boundary = c_boundary(graph, A, f_c);
      const double ratio = folner_ratio(graph, A, f_c);
      out << "folner ratio: |A| = " << A.size() << ", |boundary| = " << boundary.size() << ", ratio " << num(ratio) << "\n";
      return 0;
    };
  });

  auto* folner_scan_cmd = folner_cmd->add_subcommand("scan", "search a family for a small ratio");
  folner_scan_cmd->add_option("--graph", f_graph, "graph JSON");
  folner_scan_cmd->add_option("--space", f_space, "implicit Cayley graph of a whole group (zd:D, heisenberg)");
  folner_scan_cmd->add_option("--threshold", f_threshold, "edge threshold of the implicit graph (default 2r + c + 1 with r = 0)");
  folner_scan_cmd->add_option("--c", f_c, "boundary width in hops")->capture_default_str();
  folner_scan_cmd->add_option("--epsilon", f_epsilon, "target ratio")->capture_default_str();
  folner_scan_cmd->add_option("--family", f_family, "metric_balls, boxes or greedy_improved")->capture_default_str();
  folner_scan_cmd->add_option("--sizes", f_sizes, "radii or box parameters (default 1..64)")->delimiter(',');
  folner_scan_cmd->add_option("--z-scale", f_z_scale, "Heisenberg box height factor")->capture_default_str();
  folner_scan_cmd->add_flag("--all", f_all, "do not stop at the first success");
  folner_scan_cmd->add_option("--out", f_out, "output JSON");
  folner_scan_cmd->add_option("--csv", f_csv, "output CSV (set, size, boundary, ratio)");
  add_seed(folner_scan_cmd);
  folner_scan_cmd->callback([&] {
    command = "folner scan";
    action = [&] {
      const auto config = config_of(folner_scan_cmd);
      if (f_graph.empty() == f_space.empty()) throw SchemaError("give exactly one of --graph and --space");
      auto sizes = f_sizes;
      if (sizes.empty()) {
        for (int s = 1; s <= 64; ++s) sizes.push_back(s);
      }
      FolnerScanOptions options{!f_all, f_z_scale};
      FolnerReport report;
      if (!f_graph.empty()) {
        const auto graph = io::graph_from_json(io::read_json(f_graph));
        report = folner_scan(graph, f_c, parse_folner_family(f_family), f_epsilon, sizes, options);
      } else {
        const auto space = SpaceModel::parse(f_space);
        if (parse_folner_family(f_family) != FolnerFamily::boxes) {
          throw SchemaError("implicit Cayley graphs support the boxes family only");
        }
        const double threshold = f_threshold > 0.0 ? f_threshold : space.coarse_constant() + 1.0;
        report = folner_scan(CayleyGraph(space, threshold), f_c, f_epsilon, sizes, options);
      }
      Json doc{{"config", config}, {"report", io::to_json(report)}};
      emit(doc, f_out, out);
      if (!f_csv.empty()) {
        std::ostringstream csv;
        io::write_folner_csv(csv, report, config);
        io::write_file(f_csv, csv.str());
      }
      summary(f_out) << "folner scan: best ratio " << num(report.best_ratio) << " over " << report.entries.size()
          << " sets, epsilon " << num(f_epsilon) << ", " << (report.achieved ? "achieved = true" : "achieved = false (not achieved over the tested family)")
          << "\n";
      return 0;
    };
  });

  try {
    auto args = glue_negative_values(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    err << "error[" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return exit_code(e.kind());
  }

  try {
    return action ? action() : 0;
  } catch (const BorderError& e) {
    err << "error[" << to_string(e.kind()) << "]: " << e.what();
    if (!e.offenders().empty()) err << " (e.g. " << e.offenders().front() << ")";
    if (e.max_safe() >= 0) err << "; largest safe value " << e.max_safe();
    err << "\n";
    return exit_code(e.kind());
  } catch (const CertificationError& e) {
    err << "error[" << to_string(e.kind()) << "]: " << e.what() << "; witness " << e.witness() << "\n";
    return exit_code(e.kind());
  } catch (const Error& e) {
    err << "error[" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error[internal]: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace coarse::cli
