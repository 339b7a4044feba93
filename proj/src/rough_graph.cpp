#include "coarse/rough_graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <sstream>

#include "coarse/error.hpp"
#include "coarse/spatial_index.hpp"

namespace coarse {
namespace {

double index_cell(const SpaceModel& space, double threshold) {
  if (space.kind() == ModelKind::euclidean) return std::max(threshold, 0.25);
  return 1.0;
}

std::string pair_label(const RoughGraph& g, std::size_t i, std::size_t j) {
  return "(" + to_string(g.lattice().points[i]) + ", " + to_string(g.lattice().points[j]) + ")";
}

}  // namespace

RoughGraph build_graph(std::shared_ptr<const QuasiLattice> lattice, GraphOptions options) {
  if (!lattice) throw DomainError("build_graph needs a lattice");
  const auto& space = lattice->space;
  const auto& pts = lattice->points;
  if (pts.size() > std::numeric_limits<std::uint32_t>::max()) throw DomainError("lattice too large");

  RoughGraph g;
  g.lattice_ = lattice;
  g.r_ = options.r.value_or(lattice->density_radius);
  g.c_ = options.c.value_or(space.coarse_constant());
  if (g.r_ < 0.0 || g.c_ < 0.0) throw DomainError("r and c must be non-negative");
  g.threshold_ = 2.0 * g.r_ + g.c_ + 1.0;

  SpatialIndex index(space, index_cell(space, g.threshold_));
  for (const auto& p : pts) index.insert(p);

  g.offsets_.assign(pts.size() + 1, 0);
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (auto j : index.within(pts[i], g.threshold_)) {
      if (j == i) continue;
      adj[i].emplace_back(static_cast<std::uint32_t>(j), distance(space, pts[i], pts[j]));
    }
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    g.offsets_[i + 1] = g.offsets_[i] + adj[i].size();
    g.degree_bound_ = std::max(g.degree_bound_, adj[i].size());
  }
  g.targets_.reserve(g.offsets_.back());
  g.lengths_.reserve(g.offsets_.back());
  for (auto& row : adj) {
    for (auto [j, d] : row) {
      g.targets_.push_back(j);
      g.lengths_.push_back(d);
    }
  }

  std::vector<std::size_t> border;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (window_margin(space, lattice->window, pts[i]) < g.threshold_ - kTolerance) border.push_back(i);
  }
  auto hops = bfs_distances(g, border);
  g.border_hops_.resize(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) g.border_hops_[i] = hops[i] < 0 ? RoughGraph::kFarFromBorder : hops[i];

  const Point base = space.base_point();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = distance(space, base, pts[i]);
    if (d < best - kTolerance) {
      best = d;
      g.center_ = i;
    }
  }

  if (options.require_connected && pts.size() > 1) {
    auto sizes = component_sizes(g);
    if (sizes.size() > 1) throw DisconnectedGraphError(std::move(sizes));
  }
  return g;
}

std::vector<int> bfs_distances(const RoughGraph& graph, std::span<const std::size_t> sources, int max_depth) {
  std::vector<int> dist(graph.vertex_count(), -1);
  std::vector<std::size_t> frontier;
  for (auto s : sources) {
    if (s >= dist.size()) throw DomainError("vertex index out of range");
    if (dist[s] < 0) {
      dist[s] = 0;
      frontier.push_back(s);
    }
  }
  std::vector<std::size_t> next;
  for (int depth = 1; !frontier.empty() && (max_depth < 0 || depth <= max_depth); ++depth) {
    next.clear();
    for (auto v : frontier) {
      for (auto w : graph.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = depth;
          next.push_back(w);
        }
      }
    }
    frontier.swap(next);
  }
  return dist;
}

std::vector<int> bfs_distances(const RoughGraph& graph, std::size_t source, int max_depth) {
  const std::size_t sources[] = {source};
  return bfs_distances(graph, sources, max_depth);
}

int graph_distance(const RoughGraph& graph, std::size_t i, std::size_t j) {
  if (i >= graph.vertex_count() || j >= graph.vertex_count()) throw DomainError("vertex index out of range");
  const int d = bfs_distances(graph, i)[j];
  if (d < 0) throw UnreachableError("vertices " + std::to_string(i) + " and " + std::to_string(j) + " lie in different components");
  return d;
}

std::vector<std::size_t> component_sizes(const RoughGraph& graph) {
  std::vector<int> label(graph.vertex_count(), -1);
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < label.size(); ++s) {
    if (label[s] >= 0) continue;
    const int id = static_cast<int>(sizes.size());
    sizes.push_back(0);
    label[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      ++sizes.back();
      for (auto w : graph.neighbors(v)) {
        if (label[w] < 0) {
          label[w] = id;
          stack.push_back(w);
        }
      }
    }
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

QiConstants certify_qi(const RoughGraph& graph, QiCheckOptions options) {
  const auto& lattice = graph.lattice();
  const auto& space = lattice.space;
  const auto& pts = lattice.points;

  std::vector<std::size_t> interior;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    if (!graph.is_border(v)) interior.push_back(v);
  }

  // A pair qualifies when the sampled coarse geodesic keeps margin r, so the
  // lattice points shadowing it all exist inside the window.
  auto qualifies = [&](std::size_t i, std::size_t j) {
    for (const auto& p : coarse_geodesic(space, pts[i], pts[j]).points) {
      if (window_margin(space, lattice.window, p) < graph.r() - kTolerance) return false;
    }
    return true;
  };

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  const std::size_t n = interior.size();
  const std::size_t total = n < 2 ? 0 : n * (n - 1) / 2;
  std::ostringstream desc;
  if (total <= options.exhaustive_limit) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (qualifies(interior[a], interior[b])) pairs.emplace_back(interior[a], interior[b]);
      }
    }
    desc << "all " << pairs.size() << " qualifying interior pairs";
  } else {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    // Few BFS sources, many targets each.
    const std::size_t source_count = std::min<std::size_t>(32, n);
    std::vector<std::size_t> sources;
    for (std::size_t k = 0; k < source_count; ++k) sources.push_back(interior[pick(rng)]);
    std::size_t attempts = 0;
    while (pairs.size() < options.pairs && attempts < 50 * options.pairs) {
      const auto i = sources[attempts++ % source_count];
      const auto j = interior[pick(rng)];
      if (i != j && qualifies(i, j)) pairs.emplace_back(i, j);
    }
    desc << pairs.size() << " seeded interior pairs (seed " << options.seed << ")";
  }

  std::sort(pairs.begin(), pairs.end());
  const double T = graph.threshold();
  const double slack = graph.c() + 1.0;
  std::vector<int> dist;
  std::size_t current = std::numeric_limits<std::size_t>::max();
  for (auto [i, j] : pairs) {
    if (i != current) {
      dist = bfs_distances(graph, i);
      current = i;
    }
    const double d = distance(space, pts[i], pts[j]);
    const int hops = dist[j];
    if (hops < 0) throw CertificationError("interior pair is disconnected", pair_label(graph, i, j));
    if (d > T * hops + kTolerance) {
      throw CertificationError("d > T * d_graph", pair_label(graph, i, j) + " d=" + std::to_string(d) +
                                                      " hops=" + std::to_string(hops));
    }
    if (hops > d + slack + kTolerance) {
      throw CertificationError("d_graph > d + c + 1", pair_label(graph, i, j) + " d=" + std::to_string(d) +
                                                          " hops=" + std::to_string(hops));
    }
  }
  return QiConstants{T, slack, pairs.size(), desc.str()};
}

CayleyGraph::CayleyGraph(SpaceModel space, double threshold) : space_(std::move(space)), threshold_(threshold) {
  if (!space_.is_discrete()) throw UnsupportedOperationError("implicit Cayley graphs need a discrete group model");
  if (threshold_ < 1.0) throw DomainError("Cayley graph threshold must be at least 1");
}

std::vector<Point> CayleyGraph::reach(int hops) const {
  const int radius = hops * static_cast<int>(std::floor(threshold_ + kTolerance));
  auto ball = word_ball(space_, radius);
  const Point e = identity(space_);
  ball.erase(std::remove(ball.begin(), ball.end(), e), ball.end());
  return ball;
}

}  // namespace coarse
