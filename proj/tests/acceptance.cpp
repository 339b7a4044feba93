// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coarse/amenability.hpp"
#include "coarse/error.hpp"
#include "coarse/growth.hpp"
#include "coarse/quasi_action.hpp"
#include "coarse/quasilattice.hpp"
#include "coarse/rough_graph.hpp"

using namespace coarse;

namespace {

// Pinned tolerances and bounds.
constexpr double kEps = 1e-9;
constexpr double kHoroDensityBound = 1.07;
constexpr double kHoroRuntimeSeconds = 10.0;
constexpr std::size_t kHoroProbes = 1000;
constexpr double kHoroMargin = 1.2;
constexpr std::size_t kMultiplicityBound = 27;
constexpr std::size_t kMultiplicityObserved = 24;
constexpr std::size_t kQiPairs = 1000;
constexpr double kStability = 0.10;
constexpr double kDegreeTol = 0.2;
constexpr double kHeisDegreeTol = 0.5;
constexpr double kRateTol = 0.05;
constexpr double kFolnerZ2 = 0.1;
constexpr double kFolnerHeis = 0.2;
constexpr double kFreeFloor = 0.5;
constexpr double kHoroFloor = 0.05;
constexpr std::size_t kHoroMaxSet = 10000;
constexpr std::size_t kHoroMinLargest = 1000;

std::uint64_t base_seed() {
  if (const char* env = std::getenv("COARSE_SEED"); env != nullptr && *env != '\0') return std::strtoull(env, nullptr, 10);
  return 1;
}

std::string fmt(double v, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Lat = std::shared_ptr<const QuasiLattice>;

Lat share(QuasiLattice lattice) { return std::make_shared<const QuasiLattice>(std::move(lattice)); }

Lat even_integers(int window) {
  std::vector<Point> pts;
  for (long x = -window; x <= window; ++x) {
    if (x % 2 == 0) pts.emplace_back(ZdPoint{{x}});
  }
  return share(explicit_lattice(SpaceModel::zd(1), BallWindow{window}, std::move(pts), 1.0));
}

std::size_t nearest_vertex(const QuasiLattice& lattice, const Point& p) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lattice.points.size(); ++i) {
    const double d = distance(lattice.space, lattice.points[i], p);
    if (d < best_d - kEps) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

// All-pairs hop distances by Floyd-Warshall, independent of the BFS code.
std::vector<std::vector<int>> all_pairs(const RoughGraph& g) {
  const auto n = g.vertex_count();
  constexpr int inf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (auto j : g.neighbors(i)) d[i][j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const int dik = d[i][k];
      if (dik >= inf) continue;
      auto& row = d[i];
      const auto& krow = d[k];
      for (std::size_t j = 0; j < n; ++j) row[j] = std::min(row[j], dik + krow[j]);
    }
  }
  return d;
}

// ---------------------------------------------------------------------------

Outcome horocyclic_density() {
  const auto start = std::chrono::steady_clock::now();
  const auto lattice = horocyclic_lattice(-20, 20, -3, 3);
  const auto probes = default_probes(lattice, kHoroMargin, kHoroProbes, base_seed());
  const auto v = verify_quasilattice(lattice, probes, std::vector<double>{1.0});
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = !v.density.vacuous && v.density.probe_count == kHoroProbes &&
                  v.density.max_distance <= kHoroDensityBound + kEps && seconds < kHoroRuntimeSeconds;
  return {ok, "max nearest distance " + fmt(v.density.max_distance) + " over " + std::to_string(v.density.probe_count) +
                  " probes (bound " + fmt(kHoroDensityBound) + "), " + fmt(seconds, 3) + " s"};
}

Outcome horocyclic_multiplicity() {
  const auto lattice = horocyclic_lattice(-20, 20, -3, 3);
  const auto probes = default_probes(lattice, kHoroMargin, kHoroProbes, base_seed());
  const auto v = verify_quasilattice(lattice, probes, std::vector<double>{1.0});
  std::size_t brute = 0;
  for (const auto& y : probes) {
    std::size_t count = 0;
    for (const auto& x : lattice.points) count += distance(lattice.space, x, y) <= 1.0 + kEps ? 1 : 0;
    brute = std::max(brute, count);
  }
  const std::size_t reported = v.multiplicity.entries.at(0).second;
  const bool ok = reported == brute && reported <= kMultiplicityBound && reported <= kMultiplicityObserved;
  return {ok, "M(1) = " + std::to_string(reported) + " (brute force " + std::to_string(brute) + ", bound " +
                  std::to_string(kMultiplicityBound) + ", expected at most " + std::to_string(kMultiplicityObserved) + ")"};
}

Outcome qi_inequalities() {
  const std::vector<std::pair<std::string, Lat>> cases{
      {"zd:1 even", even_integers(400)},
      {"zd:2 delta-3", share(greedy_net(SpaceModel::zd(2), BallWindow{30}, 3.0))},
      {"horocyclic disk", share(horocyclic_ball_lattice(9))},
      {"free:2 ball", share(group_ball_lattice(SpaceModel::free_group(2), 6))}};
  bool ok = true;
  std::string detail;
  for (const auto& [name, lattice] : cases) {
    const auto g = build_graph(lattice);
    try {
      const auto qi = certify_qi(g, QiCheckOptions{kQiPairs, base_seed(), 10000});
      const bool enough = qi.sample_size >= kQiPairs;
      ok = ok && enough;
      detail += name + ": " + std::to_string(qi.sample_size) + " pairs, 0 violations" + (enough ? "" : " (too few pairs)") + "; ";
    } catch (const CertificationError& e) {
      ok = false;
      detail += name + ": violation " + e.witness() + "; ";
    }
  }
  return {ok, detail};
}

Outcome axioms() {
  const auto lattice = share(greedy_net(SpaceModel::zd(2), BallWindow{50}, 3.0));
  const QuasiAction qa(lattice);
  std::vector<double> assoc;
  bool ok = true;
  std::string detail;
  for (double R : {5.0, 10.0, 15.0}) {
    AxiomSample s;
    s.group_radius = R;
    s.point_radius = R;
    s.properness_R = {1.0, 2.0, 4.0, 8.0};
    s.seed = base_seed();
    const auto cert = certify_axioms(qa, s);
    assoc.push_back(cert.associativity_defect);
    ok = ok && cert.identity_defect <= lattice->density_radius + kEps;
    for (std::size_t i = 1; i < cert.properness.size(); ++i) {
      const auto& a = cert.properness[i - 1];
      const auto& b = cert.properness[i];
      if (a.x == b.x) ok = ok && a.count <= b.count && a.radius <= b.radius + kEps;
    }
    detail += "radius " + fmt(R) + ": associativity " + fmt(cert.associativity_defect) + ", identity " +
              fmt(cert.identity_defect) + "; ";
  }
  for (double a : assoc) ok = ok && std::abs(a - assoc.front()) <= kEps && std::isfinite(a);
  return {ok, detail};
}

Outcome orbit_maps() {
  struct Case {
    std::string name;
    Lat lattice;
    std::vector<double> radii;
    bool exact;
  };
  const std::vector<Case> cases{
      {"zd:2 delta-3", share(greedy_net(SpaceModel::zd(2), BallWindow{50}, 3.0)), {10, 15}, false},
      {"zd:1 even", even_integers(40), {10, 15}, false},
      {"zd:2 group", share(group_ball_lattice(SpaceModel::zd(2), 16)), {10, 15}, true},
      {"heisenberg group", share(group_ball_lattice(SpaceModel::heisenberg(), 15)), {10, 15}, true},
      {"free:2 group", share(group_ball_lattice(SpaceModel::free_group(2), 9)), {6, 9}, true},
      {"horocyclic", share(horocyclic_ball_lattice(7)), {2, 3}, false}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const QuasiAction qa(c.lattice);
    const auto x0 = nearest_vertex(*c.lattice, identity(c.lattice->space));
    const auto report = orbit_map_qi(qa, x0, c.radii, 10000, base_seed());
    bool case_ok = report.stable;
    if (c.exact) {
      for (const auto& k : report.constants) case_ok = case_ok && k.C == 1.0 && k.r == 0.0;
    }
    ok = ok && case_ok;
    detail += c.name + " " + fmt(c.radii.front()) + "->" + fmt(c.radii.back()) + ": (" + fmt(report.constants.front().C) +
              ", " + fmt(report.constants.front().r) + ") -> (" + fmt(report.constants.back().C) + ", " +
              fmt(report.constants.back().r) + ")" + (case_ok ? "" : " [unstable]") + "; ";
  }
  return {ok, detail};
}

Outcome conjugacy() {
  const QuasiAction a(share(greedy_net(SpaceModel::zd(2), BallWindow{40}, 2.0)));
  const QuasiAction b(share(greedy_net(SpaceModel::zd(2), BallWindow{40}, 3.0)));
  std::vector<double> defects;
  for (double R : {8.0, 12.0}) {
    defects.push_back(quasi_conjugacy_defect(a, b, ConjugacySample{R, R, 1000000, base_seed()}));
  }
  const double inc = relative_increase(defects[0], defects[1]);
  return {std::isfinite(defects[1]) && inc <= kStability + kEps,
          "defect " + fmt(defects[0]) + " at radius 8, " + fmt(defects[1]) + " at radius 12 (increase " + fmt(inc * 100, 3) +
              "%)"};
}

Outcome same_growth() {
  const auto z2_group = ball_sizes(SpaceModel::zd(2), 25);
  const auto z2_graph_lattice = share(greedy_net(SpaceModel::zd(2), BallWindow{170}, 3.0));
  const auto z2_graph = build_graph(z2_graph_lattice);
  const int z2_m = std::min(25, z2_graph.border_hops(z2_graph.center()));
  const auto z2_graph_series = ball_sizes(z2_graph, z2_graph.center(), z2_m);

  const auto free_group = ball_sizes(SpaceModel::free_group(2), 10);
  const auto free_graph = build_graph(share(group_ball_lattice(SpaceModel::free_group(2), 10)));
  const auto free_graph_series = ball_sizes(free_graph, free_graph.center(), 10);

  const auto v1 = compare_growth(z2_group, z2_graph_series);
  const auto v2 = compare_growth(free_group, free_graph_series);
  const auto v3 = compare_growth(z2_group, free_group);
  auto show = [](const SandwichVerdict& v) {
    return v.equivalent ? "(" + std::to_string(v.alpha) + ", " + std::to_string(v.beta) + ", " + std::to_string(v.gamma) + ")"
                        : std::string("none");
  };
  return {v1.equivalent && v2.equivalent && !v3.equivalent,
          "zd:2 group vs graph (m <= " + std::to_string(z2_m) + "): " + show(v1) + "; free group vs graph: " + show(v2) +
              "; zd:2 vs free: " + show(v3)};
}

Outcome classification() {
  bool ok = true;
  std::string detail;
  const int zd_m[] = {30, 25, 15};
  for (int d = 1; d <= 3; ++d) {
    const auto v = classify_growth(ball_sizes(SpaceModel::zd(d), zd_m[d - 1]));
    ok = ok && v.kind == GrowthClass::polynomial && std::abs(v.estimate - d) <= kDegreeTol + kEps;
    detail += "zd:" + std::to_string(d) + " " + to_string(v.kind) + " " + fmt(v.estimate, 4) + "; ";
  }
  const auto f = classify_growth(ball_sizes(SpaceModel::free_group(2), 12));
  ok = ok && f.kind == GrowthClass::exponential && std::abs(f.estimate - std::log(3.0)) <= kRateTol + kEps;
  detail += "free:2 " + to_string(f.kind) + " " + fmt(f.estimate, 4) + "; ";
  const auto h = classify_growth(ball_sizes(SpaceModel::heisenberg(), 10));
  ok = ok && h.kind == GrowthClass::polynomial && std::abs(h.estimate - 4.0) <= kHeisDegreeTol + kEps;
  detail += "heisenberg " + to_string(h.kind) + " " + fmt(h.estimate, 4);
  return {ok, detail};
}

Outcome amenability() {
  bool ok = true;
  std::string detail;

  // Z^2: explicit rough graph of a large word ball, boxes.
  {
    const auto g = build_graph(share(group_ball_lattice(SpaceModel::zd(2), 170)));
    const auto r = folner_scan(g, 1.0, FolnerFamily::boxes, kFolnerZ2, {10, 20, 30, 40, 50, 60, 70, 80, 90, 100});
    ok = ok && r.achieved && r.best_ratio < kFolnerZ2;
    detail += "zd:2 best " + fmt(r.best_ratio, 4) + " (" + r.entries.back().descriptor + ")" +
              (r.achieved ? " achieved" : " not achieved") + "; ";
  }
  // Heisenberg: implicit Cayley graph with the same threshold, boxes counted column by column.
  {
    std::vector<double> sizes;
    for (int n = 10; n <= 200; n += 10) sizes.push_back(n);
    const auto r = folner_scan(CayleyGraph(SpaceModel::heisenberg(), 2.0), 1.0, kFolnerHeis, sizes);
    ok = ok && r.achieved && r.best_ratio < kFolnerHeis;
    detail += "heisenberg best " + fmt(r.best_ratio, 4) + " (" + r.entries.back().descriptor + ", |A| = " +
              std::to_string(r.entries.back().set_size) + ")" + (r.achieved ? " achieved" : " not achieved") + "; ";
  }
  // Free group: every ball stays above the floor.
  {
    const auto g = build_graph(share(group_ball_lattice(SpaceModel::free_group(2), 9)));
    double lowest = std::numeric_limits<double>::infinity();
    for (int m = 1; m <= 8; ++m) lowest = std::min(lowest, folner_ratio(g, ball_set(g, m), 1.0));
    ok = ok && lowest >= kFreeFloor - kEps;
    detail += "free:2 balls r <= 8 minimum " + fmt(lowest, 4) + "; ";
  }
  // Horocyclic lattice cut to a hyperbolic disk; rectangles are far too thin for interior sets.
  {
    const auto lattice = share(horocyclic_ball_lattice(12));
    const auto g = build_graph(lattice);
    const auto& space = lattice->space;
    const auto center = g.center();
    double lowest = std::numeric_limits<double>::infinity();
    std::size_t tested = 0, largest = 0;
    auto test = [&](const std::vector<std::size_t>& A) {
      if (A.empty() || A.size() > kHoroMaxSet) return false;
      try {
        const double r = folner_ratio(g, A, 1.0);
        lowest = std::min(lowest, r);
        ++tested;
        largest = std::max(largest, A.size());
        return true;
      } catch (const BorderError&) {
        return false;
      }
    };
    for (int m = 1; m <= 20 && test(ball_set(g, m)); ++m) {
    }
    for (double rho = 1.0; rho <= 12.0; rho += 0.5) {
      std::vector<std::size_t> A;
      for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (distance(space, lattice->points[center], lattice->points[v]) <= rho + kEps) A.push_back(v);
      }
      if (!test(A)) break;
    }
    for (int n = 1; n <= 20 && test(box_set(g, n)); ++n) {
    }
    ok = ok && tested > 0 && lowest >= kHoroFloor - kEps && largest >= kHoroMinLargest;
    detail += "horocyclic (" + std::to_string(g.vertex_count()) + " vertices): " + std::to_string(tested) +
              " sets up to " + std::to_string(largest) + " vertices, minimum ratio " + fmt(lowest, 4) +
              (lowest < kHoroFloor ? ", achieved" : ", not achieved");
  }
  return {ok, detail};
}

Outcome oracles() {
  const std::vector<std::pair<std::string, Lat>> cases{
      {"zd:2 delta-3", share(greedy_net(SpaceModel::zd(2), BallWindow{30}, 3.0))},
      {"zd:1 even", even_integers(300)},
      {"free:2 ball", share(group_ball_lattice(SpaceModel::free_group(2), 5))},
      {"heisenberg ball", share(group_ball_lattice(SpaceModel::heisenberg(), 6))},
      {"horocyclic disk", share(horocyclic_ball_lattice(5))}};
  std::mt19937_64 rng(base_seed());
  bool ok = true;
  std::size_t series_checked = 0, boundary_checked = 0;
  std::vector<RoughGraph> graphs;
  std::vector<std::vector<std::vector<int>>> dist;
  for (const auto& [name, lattice] : cases) {
    graphs.push_back(build_graph(lattice));
    if (graphs.back().vertex_count() > 1000) throw DomainError(name + " exceeds 1000 points");
    dist.push_back(all_pairs(graphs.back()));
  }
  // Ball sizes from several base points.
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const auto& g = graphs[gi];
    std::vector<std::size_t> bases{g.center()};
    for (int k = 0; k < 4; ++k) bases.push_back(rng() % g.vertex_count());
    for (auto x0 : bases) {
      const int safe = g.border_hops(x0);
      if (safe < 1) continue;
      const auto fast = ball_sizes(g, x0, safe).values;
      std::vector<std::uint64_t> naive;
      for (int m = 0; m <= safe; ++m) {
        naive.push_back(static_cast<std::uint64_t>(
            std::count_if(dist[gi][x0].begin(), dist[gi][x0].end(), [m](int d) { return d <= m; })));
      }
      ok = ok && fast == naive;
      ++series_checked;
    }
  }
  // Boundaries on random (graph, A, c).
  while (boundary_checked < 10) {
    const auto gi = rng() % graphs.size();
    const auto& g = graphs[gi];
    const int c = 1 + static_cast<int>(rng() % 2);
    std::vector<std::size_t> pool;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      if (g.border_hops(v) >= c) pool.push_back(v);
    }
    if (pool.empty()) continue;
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(1 + rng() % std::min<std::size_t>(pool.size(), 60));
    std::sort(pool.begin(), pool.end());
    std::vector<bool> in_a(g.vertex_count(), false);
    for (auto a : pool) in_a[a] = true;
    std::vector<std::size_t> literal;
    for (std::size_t x = 0; x < g.vertex_count(); ++x) {
      bool near_a = false, near_complement = false;
      for (std::size_t y = 0; y < g.vertex_count(); ++y) {
        if (dist[gi][x][y] > c) continue;
        if (in_a[y]) near_a = true;
        else near_complement = true;
      }
      if (near_a && near_complement) literal.push_back(x);
    }
    ok = ok && c_boundary(g, pool, c) == literal;
    ++boundary_checked;
  }
  return {ok, std::to_string(series_checked) + " ball-size series and " + std::to_string(boundary_checked) +
                  " boundaries compared against all-pairs oracles"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"horocyclic density", horocyclic_density},
      {"horocyclic multiplicity", horocyclic_multiplicity},
      {"rough-graph QI inequalities", qi_inequalities},
      {"quasi-action axioms", axioms},
      {"orbit-map stability", orbit_maps},
      {"quasi-conjugacy", conjugacy},
      {"same growth", same_growth},
      {"growth classification", classification},
      {"amenability dichotomy", amenability},
      {"oracle equivalences", oracles}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": " << o.detail << " ["
              << fmt(seconds, 3) << " s]" << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
