#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "coarse/qi_constants.hpp"
#include "coarse/quasilattice.hpp"

namespace coarse {

struct GraphOptions {
  std::optional<double> r;
  std::optional<double> c;
  bool require_connected = true;
};

/// Vertices are lattice indices; i ~ j iff i != j and d(p_i, p_j) <= threshold.
class RoughGraph {
 public:
  static constexpr int kFarFromBorder = std::numeric_limits<int>::max();

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }
  std::span<const std::uint32_t> neighbors(std::size_t v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  /// Ambient distance of the k-th neighbour of v.
  std::span<const double> neighbor_distances(std::size_t v) const {
    return {lengths_.data() + offsets_[v], lengths_.data() + offsets_[v + 1]};
  }

  const QuasiLattice& lattice() const noexcept { return *lattice_; }
  std::shared_ptr<const QuasiLattice> lattice_ptr() const noexcept { return lattice_; }
  double threshold() const noexcept { return threshold_; }
  double r() const noexcept { return r_; }
  double c() const noexcept { return c_; }
  std::size_t degree_bound() const noexcept { return degree_bound_; }

  /// A vertex is on the border when its threshold ball leaves the window.
  bool is_border(std::size_t v) const { return border_hops_[v] == 0; }
  /// Hops to the nearest border vertex (kFarFromBorder when there is none).
  int border_hops(std::size_t v) const { return border_hops_[v]; }

  /// Vertex at the lattice point closest to the base point.
  std::size_t center() const noexcept { return center_; }

 private:
  friend RoughGraph build_graph(std::shared_ptr<const QuasiLattice>, GraphOptions);

  std::shared_ptr<const QuasiLattice> lattice_;
  double threshold_ = 0.0;
  double r_ = 0.0;
  double c_ = 0.0;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> targets_;
  std::vector<double> lengths_;
  std::size_t degree_bound_ = 0;
  std::vector<int> border_hops_;
  std::size_t center_ = 0;
};

/// Threshold 2r + c + 1 with r = lattice.density_radius and c the model's
/// coarse constant unless overridden. Throws DisconnectedGraphError.
RoughGraph build_graph(std::shared_ptr<const QuasiLattice> lattice, GraphOptions options = {});

/// BFS hop counts from `source`; -1 for unreached or beyond max_depth.
std::vector<int> bfs_distances(const RoughGraph& graph, std::size_t source, int max_depth = -1);

/// Multi-source BFS: hops to the nearest source, -1 beyond max_depth.
std::vector<int> bfs_distances(const RoughGraph& graph, std::span<const std::size_t> sources, int max_depth = -1);

/// Shortest-path hop count. Throws UnreachableError across components.
int graph_distance(const RoughGraph& graph, std::size_t i, std::size_t j);

/// Component sizes, largest first.
std::vector<std::size_t> component_sizes(const RoughGraph& graph);

struct QiCheckOptions {
  std::size_t pairs = 1000;
  std::uint64_t seed = 0;
  /// Use every interior pair when there are at most this many.
  std::size_t exhaustive_limit = 10000;
};

/// Checks d <= T d_G and d_G <= d + c + 1 on interior pairs whose coarse
/// geodesic stays at window margin >= r. Returns (C = T, r = c + 1) or
/// throws CertificationError naming the first violating pair.
QiConstants certify_qi(const RoughGraph& graph, QiCheckOptions options = {});

/// The rough graph of a whole discrete group acting on itself: g ~ g s for
/// 0 < |s| <= threshold. Infinite, so vertices are only touched implicitly.
class CayleyGraph {
 public:
  CayleyGraph(SpaceModel space, double threshold);
  const SpaceModel& space() const noexcept { return space_; }
  double threshold() const noexcept { return threshold_; }
  /// Elements s != e with |s| <= hops * floor(threshold): the hops-step neighbourhood.
  std::vector<Point> reach(int hops) const;

 private:
  SpaceModel space_;
  double threshold_;
};

}  // namespace coarse
