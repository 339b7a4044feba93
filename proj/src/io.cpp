#include "coarse/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "coarse/error.hpp"

namespace coarse::io {
namespace {

std::string model_tag(const SpaceModel& space) {
  switch (space.kind()) {
    case ModelKind::zd: return "zd";
    case ModelKind::free_group: return "free";
    case ModelKind::heisenberg: return "heisenberg";
    case ModelKind::euclidean: return "euclidean";
    case ModelKind::hyperbolic: return "h2";
  }
  return "?";
}

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("field '") + key + "': " + e.what());
  }
}

std::string real(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

void config_line(std::ostream& out, const Json& config) { out << "# config: " << config.dump() << "\n"; }

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

}  // namespace

Json point_to_array(const SpaceModel& space, const Point& p) {
  validate(space, p);
  return std::visit(
      [](const auto& q) -> Json {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, ZdPoint>) return q.x;
        else if constexpr (std::is_same_v<T, HeisenbergPoint>) return Json::array({q.x, q.y, q.z});
        else if constexpr (std::is_same_v<T, Word>) return q.letters;
        else if constexpr (std::is_same_v<T, EuclideanPoint>) return q.x;
        else return Json::array({q.u, q.a});
      },
      p);
}

Point point_from_array(const SpaceModel& space, const Json& j) {
  if (!j.is_array()) throw SchemaError("point must be a coordinate array");
  Point p;
  try {
    switch (space.kind()) {
      case ModelKind::zd: p = ZdPoint{j.get<std::vector<std::int64_t>>()}; break;
      case ModelKind::heisenberg: {
        auto v = j.get<std::vector<std::int64_t>>();
        if (v.size() != 3) throw SchemaError("heisenberg point needs three coordinates");
        p = HeisenbergPoint{v[0], v[1], v[2]};
        break;
      }
      case ModelKind::free_group: p = Word{j.get<std::vector<std::int32_t>>()}; break;
      case ModelKind::euclidean: p = EuclideanPoint{j.get<std::vector<double>>()}; break;
      case ModelKind::hyperbolic: {
        auto v = j.get<std::vector<double>>();
        if (v.size() != 2) throw SchemaError("half-plane point needs (u, a)");
        p = HalfPlanePoint{v[0], v[1]};
        break;
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad point coordinates: ") + e.what());
  }
  validate(space, p);
  return p;
}

Json point_to_json(const SpaceModel& space, const Point& p) {
  Json j;
  j["model"] = model_tag(space);
  auto coords = point_to_array(space, p);
  switch (space.kind()) {
    case ModelKind::free_group: j["word"] = coords; break;
    case ModelKind::hyperbolic:
      j["u"] = coords[0];
      j["a"] = coords[1];
      break;
    default: j["x"] = coords; break;
  }
  return j;
}

Point point_from_json(const SpaceModel& space, const Json& j) {
  const auto tag = field<std::string>(j, "model");
  if (tag != model_tag(space)) throw ModelMismatchError("point tagged '" + tag + "' used in model " + space.id());
  switch (space.kind()) {
    case ModelKind::free_group: return point_from_array(space, j.at("word"));
    case ModelKind::hyperbolic: return point_from_array(space, Json::array({field<double>(j, "u"), field<double>(j, "a")}));
    default: return point_from_array(space, j.contains("x") ? j.at("x") : Json());
  }
}

Json lattice_to_json(const QuasiLattice& lattice, const Json& config) {
  Json j;
  j["format"] = "coarse-lattice";
  j["version"] = 1;
  j["config"] = config;
  j["space"] = lattice.space.id();
  j["window"] = to_string(lattice.window);
  j["construction"] = to_string(lattice.construction);
  j["delta"] = lattice.separation_delta;
  j["density_radius"] = lattice.density_radius;
  j["vacuous"] = lattice.vacuous;
  Json pts = Json::array();
  for (const auto& p : lattice.points) pts.push_back(point_to_array(lattice.space, p));
  j["points"] = std::move(pts);
  return j;
}

QuasiLattice lattice_from_json(const Json& j) {
  if (field<std::string>(j, "format") != "coarse-lattice") throw SchemaError("not a lattice file");
  QuasiLattice lattice{SpaceModel::parse(field<std::string>(j, "space")),
                       parse_window(field<std::string>(j, "window")),
                       parse_construction(field<std::string>(j, "construction")),
                       {},
                       field<double>(j, "delta"),
                       field<double>(j, "density_radius"),
                       field<bool>(j, "vacuous")};
  check_window(lattice.space, lattice.window);
  if (!j.contains("points") || !j.at("points").is_array()) throw SchemaError("lattice file has no point array");
  for (const auto& p : j.at("points")) lattice.points.push_back(point_from_array(lattice.space, p));
  return lattice;
}

Json graph_to_json(const RoughGraph& graph, const Json& config) {
  Json j;
  j["format"] = "coarse-graph";
  j["version"] = 1;
  j["config"] = config;
  j["r"] = graph.r();
  j["c"] = graph.c();
  j["threshold"] = graph.threshold();
  j["vertices"] = graph.vertex_count();
  j["edges"] = graph.edge_count();
  j["degree_bound"] = graph.degree_bound();
  j["lattice"] = lattice_to_json(graph.lattice(), Json::object());
  return j;
}

RoughGraph graph_from_json(const Json& j) {
  if (field<std::string>(j, "format") != "coarse-graph") throw SchemaError("not a graph file");
  auto lattice = std::make_shared<const QuasiLattice>(lattice_from_json(j.at("lattice")));
  GraphOptions options;
  options.r = field<double>(j, "r");
  options.c = field<double>(j, "c");
  auto graph = build_graph(lattice, options);
  if (j.contains("edges") && field<std::size_t>(j, "edges") != graph.edge_count()) {
    throw SchemaError("rebuilt graph has " + std::to_string(graph.edge_count()) + " edges, file records " +
                      std::to_string(field<std::size_t>(j, "edges")));
  }
  return graph;
}

Json to_json(const QiConstants& qi) {
  return Json{{"C", qi.C}, {"r", qi.r}, {"sample_size", qi.sample_size}, {"certified_over", qi.certified_over}};
}

Json to_json(const LatticeVerification& v, std::uint64_t seed) {
  Json profile = Json::array();
  for (const auto& [R, M] : v.multiplicity.entries) profile.push_back(Json{{"R", R}, {"M", M}});
  return Json{{"density", Json{{"max_distance", v.density.max_distance},
                               {"worst_probe", v.density.worst_probe},
                               {"probes", v.density.probe_count},
                               {"vacuous", v.density.vacuous},
                               {"seed", seed}}},
              {"multiplicity", profile},
              {"min_separation", v.min_separation}};
}

Json to_json(const AxiomCertificate& cert) {
  Json proper = Json::array();
  for (const auto& w : cert.properness) {
    proper.push_back(Json{{"R", w.R}, {"x", w.x}, {"count", w.count}, {"radius", w.radius}});
  }
  return Json{{"per_s", to_json(cert.per_s)},
              {"identity_defect", cert.identity_defect},
              {"associativity_defect", cert.associativity_defect},
              {"associativity_witness", cert.associativity_witness},
              {"orbit_diameter", cert.orbit_diameter},
              {"properness", proper},
              {"sample", cert.sample},
              {"seed", cert.seed}};
}

Json to_json(const OrbitReport& report) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < report.radii.size(); ++i) {
    auto row = to_json(report.constants[i]);
    row["radius"] = report.radii[i];
    rows.push_back(std::move(row));
  }
  return Json{{"fits", rows}, {"stable", report.stable}};
}

Json to_json(const GrowthVerdict& v) {
  return Json{{"class", to_string(v.kind)},     {"estimate", v.estimate},       {"half_width", v.half_width},
              {"loglog_slope", v.loglog_slope}, {"loglog_rms", v.loglog_rms},   {"exp_slope", v.exp_slope},
              {"exp_rms", v.exp_rms},           {"too_short", v.too_short}};
}

Json to_json(const SandwichVerdict& v) {
  return Json{{"equivalent", v.equivalent}, {"alpha", v.alpha}, {"beta", v.beta}, {"gamma", v.gamma}, {"overlap", v.overlap}};
}

Json to_json(const FolnerReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    entries.push_back(Json{{"set", e.descriptor}, {"size", e.set_size}, {"boundary", e.boundary_size}, {"ratio", e.ratio}});
  }
  return Json{{"c", report.c},
              {"family", to_string(report.family)},
              {"epsilon", report.epsilon},
              {"best_ratio", report.best_ratio},
              {"achieved", report.achieved},
              {"entries", entries}};
}

void write_series_csv(std::ostream& out, const GrowthSeries& series, const Json& config) {
  config_line(out, config);
  out << "# source: " << series.source << " base: " << series.base_point << "\n";
  out << "m,count\n";
  for (std::size_t m = 0; m < series.values.size(); ++m) out << m << "," << series.values[m] << "\n";
}

GrowthSeries read_series_csv(std::istream& in) {
  GrowthSeries series;
  std::string line;
  std::size_t expected = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# source: ", 0) == 0) {
      auto rest = line.substr(10);
      auto base = rest.find(" base: ");
      series.source = rest.substr(0, base);
      if (base != std::string::npos) series.base_point = rest.substr(base + 7);
      continue;
    }
    if (line[0] == '#' || line == "m,count") continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw SchemaError("malformed series row '" + line + "'");
    try {
      const auto m = std::stoull(line.substr(0, comma));
      const auto v = std::stoull(line.substr(comma + 1));
      if (m != expected) throw SchemaError("series rows must list m = 0, 1, 2, ...");
      series.values.push_back(v);
      ++expected;
    } catch (const std::logic_error&) {
      throw SchemaError("malformed series row '" + line + "'");
    }
  }
  if (series.values.empty()) throw SchemaError("empty growth series");
  return series;
}

void write_folner_csv(std::ostream& out, const FolnerReport& report, const Json& config) {
  config_line(out, config);
  out << "set,size,boundary,ratio\n";
  for (const auto& e : report.entries) {
    out << e.descriptor << "," << e.set_size << "," << e.boundary_size << "," << real(e.ratio) << "\n";
  }
}

void write_edges_csv(std::ostream& out, const RoughGraph& graph, const Json& config) {
  config_line(out, config);
  out << "i,j,d\n";
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    auto nbrs = graph.neighbors(i);
    auto lens = graph.neighbor_distances(i);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      if (nbrs[k] > i) out << i << "," << nbrs[k] << "," << real(lens[k]) << "\n";
    }
  }
}

void write_dot(std::ostream& out, const RoughGraph& graph, const Json& config) {
  out << "// config: " << config.dump() << "\n";
  out << "graph rough {\n";
  const auto& lattice = graph.lattice();
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    out << "  " << i << " [label=\"" << dot_escape(point_to_json(lattice.space, lattice.points[i]).dump()) << "\"];\n";
  }
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    for (auto j : graph.neighbors(i)) {
      if (j > i) out << "  " << i << " -- " << j << ";\n";
    }
  }
  out << "}\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorKind::io, "write to '" + path + "' failed");
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace coarse::io
