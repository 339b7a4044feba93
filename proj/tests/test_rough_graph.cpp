#include <doctest.h>

#include <cmath>
#include <memory>
#include <set>

#include "coarse/error.hpp"
#include "coarse/rough_graph.hpp"

using namespace coarse;

namespace {

std::shared_ptr<const QuasiLattice> evens(int window) {
  std::vector<Point> pts;
  for (long k = -window; k <= window; ++k) {
    if (k % 2 == 0) pts.push_back(ZdPoint{{k}});
  }
  return std::make_shared<const QuasiLattice>(explicit_lattice(SpaceModel::zd(1), BallWindow{window}, pts, 1.0));
}

std::size_t index_of(const RoughGraph& g, const Point& p) {
  const auto& pts = g.lattice().points;
  return static_cast<std::size_t>(std::find(pts.begin(), pts.end(), p) - pts.begin());
}

}  // namespace

TEST_CASE("even integers: threshold 4, interior degree 4") {
  const auto g = build_graph(evens(10));
  CHECK(g.threshold() == 4.0);
  const auto zero = index_of(g, ZdPoint{{0}});
  std::set<long> nbrs;
  for (auto j : g.neighbors(zero)) nbrs.insert(std::get<ZdPoint>(g.lattice().points[j]).x[0]);
  CHECK(nbrs == std::set<long>{-4, -2, 2, 4});
  CHECK(g.degree_bound() == 4);
}

TEST_CASE("graph distances on the even integers") {
  const auto g = build_graph(evens(24));
  const auto zero = index_of(g, ZdPoint{{0}});
  const auto two = index_of(g, ZdPoint{{2}});
  const auto twenty = index_of(g, ZdPoint{{20}});
  CHECK(graph_distance(g, zero, two) == 1);
  CHECK(graph_distance(g, zero, twenty) == 5);
  CHECK(20 <= g.threshold() * 5);
  CHECK(5 <= 20 + g.c() + 1);
  const auto qi = certify_qi(g);
  CHECK(qi.C == 4.0);
  CHECK(qi.r == 2.0);
  CHECK(qi.sample_size > 0);
}

TEST_CASE("adjacency is symmetric, irreflexive and matches the threshold rule") {
  const auto lattice =
      std::make_shared<const QuasiLattice>(greedy_net(SpaceModel::zd(2), BallWindow{12}, 3.0));
  const auto g = build_graph(lattice);
  const auto& pts = lattice->points;
  std::size_t edges = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::set<std::size_t> nbrs(g.neighbors(i).begin(), g.neighbors(i).end());
    CHECK(!nbrs.contains(i));
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      const bool close = distance(lattice->space, pts[i], pts[j]) <= g.threshold() + 1e-9;
      CHECK(nbrs.contains(j) == close);
      if (close) {
        const auto back = g.neighbors(j);
        CHECK(std::find(back.begin(), back.end(), i) != back.end());
      }
    }
    edges += nbrs.size();
  }
  CHECK(edges == 2 * g.edge_count());
  // Degree is bounded by the multiplicity at the threshold.
  std::size_t multiplicity = 0;
  for (const auto& p : pts) {
    std::size_t count = 0;
    for (const auto& q : pts) count += distance(lattice->space, p, q) <= g.threshold() ? 1 : 0;
    multiplicity = std::max(multiplicity, count);
  }
  CHECK(g.degree_bound() <= multiplicity);
}

TEST_CASE("horocyclic graph") {
  auto lattice = std::make_shared<const QuasiLattice>(horocyclic_lattice(-20, 20, -1, 11));
  GraphOptions options;
  options.r = 1.06;
  const auto g = build_graph(lattice, options);
  CHECK(g.threshold() == doctest::Approx(3.12));
  const auto o = index_of(g, HalfPlanePoint{0, 1});
  const auto p = index_of(g, HalfPlanePoint{1, 1});
  const double d = distance(lattice->space, HalfPlanePoint{0, 1}, HalfPlanePoint{1, 1});
  CHECK(d == doctest::Approx(0.962).epsilon(1e-3));
  const auto nb = g.neighbors(o);
  CHECK(std::find(nb.begin(), nb.end(), p) != nb.end());
  const auto top = index_of(g, HalfPlanePoint{0, std::exp(10.0)});
  REQUIRE(top < lattice->points.size());
  const int hops = graph_distance(g, o, top);
  CHECK(hops <= 10);
  CHECK(hops >= 10.0 / 3.12);
}

TEST_CASE("horocyclic disk graph satisfies both inequalities") {
  // Rectangular windows this thin have no vertex T away from the border, so use a disk.
  const auto g = build_graph(std::make_shared<const QuasiLattice>(horocyclic_ball_lattice(7)));
  CHECK(g.threshold() == doctest::Approx(3.14));
  const auto qi = certify_qi(g, QiCheckOptions{1000, 7, 10000});
  CHECK(qi.sample_size >= 1000);
  CHECK(qi.C == doctest::Approx(3.14));
  CHECK(qi.r == doctest::Approx(1.0));
}

TEST_CASE("group ball lattice of Z^2 gives the threshold-2 Cayley-like graph") {
  const auto space = SpaceModel::zd(2);
  const auto lattice = std::make_shared<const QuasiLattice>(group_ball_lattice(space, 8));
  const auto g = build_graph(lattice);
  CHECK(g.threshold() == 2.0);
  const auto& pts = lattice->points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto dist = bfs_distances(g, i);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const double d = distance(space, pts[i], pts[j]);
      CHECK(dist[j] <= d + 2);
      CHECK(d <= 2.0 * dist[j]);
    }
  }
}

TEST_CASE("single point and disconnected lattices") {
  const auto one = std::make_shared<const QuasiLattice>(
      explicit_lattice(SpaceModel::zd(1), BallWindow{3}, {ZdPoint{{0}}}, 0.0));
  const auto g = build_graph(one);
  CHECK(g.vertex_count() == 1);
  CHECK(g.edge_count() == 0);
  CHECK(graph_distance(g, 0, 0) == 0);

  const auto split = std::make_shared<const QuasiLattice>(
      explicit_lattice(SpaceModel::zd(1), BallWindow{10}, {ZdPoint{{-9}}, ZdPoint{{-8}}, ZdPoint{{9}}}, 0.0));
  try {
    build_graph(split);
    FAIL("expected a disconnected graph");
  } catch (const DisconnectedGraphError& e) {
    CHECK(e.component_sizes() == std::vector<std::size_t>{2, 1});
  }
  GraphOptions loose;
  loose.require_connected = false;
  const auto h = build_graph(split, loose);
  CHECK_THROWS_AS(graph_distance(h, 0, 2), UnreachableError);
}

TEST_CASE("rebuilding reproduces the edge set") {
  const auto lattice =
      std::make_shared<const QuasiLattice>(greedy_net(SpaceModel::hyperbolic(), HalfPlaneWindow{-4, 4, -1.5, 1.5, 0.25}, 0.6));
  const auto a = build_graph(lattice);
  const auto copy = std::make_shared<const QuasiLattice>(*lattice);
  const auto b = build_graph(copy);
  REQUIRE(a.vertex_count() == b.vertex_count());
  for (std::size_t v = 0; v < a.vertex_count(); ++v) {
    CHECK(std::vector<std::uint32_t>(a.neighbors(v).begin(), a.neighbors(v).end()) ==
          std::vector<std::uint32_t>(b.neighbors(v).begin(), b.neighbors(v).end()));
  }
}

TEST_CASE("border hops") {
  const auto g = build_graph(std::make_shared<const QuasiLattice>(group_ball_lattice(SpaceModel::zd(1), 10)));
  // Threshold 2: |x| > 8 is border, hop length 2.
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const long x = std::get<ZdPoint>(g.lattice().points[v]).x[0];
    CHECK(g.is_border(v) == (std::abs(x) > 8));
    if (!g.is_border(v)) CHECK(g.border_hops(v) == (8 - std::abs(x)) / 2 + 1);
  }
}
