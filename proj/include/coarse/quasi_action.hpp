#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "coarse/qi_constants.hpp"
#include "coarse/quasilattice.hpp"
#include "coarse/rough_graph.hpp"
#include "coarse/spatial_index.hpp"

namespace coarse {

enum class TargetMetric { ambient, graph };

/// s . x = phi(s psi(x)) for a group acting on a quasi-lattice of its own
/// metric model. phi is the nearest lattice point (canonical tie-break), psi
/// the inclusion. Target points are lattice indices.
class QuasiAction {
 public:
  QuasiAction(std::shared_ptr<const QuasiLattice> lattice, TargetMetric metric = TargetMetric::ambient,
              std::shared_ptr<const RoughGraph> graph = nullptr);

  const SpaceModel& group() const noexcept { return lattice_->space; }
  const QuasiLattice& lattice() const noexcept { return *lattice_; }
  TargetMetric metric() const noexcept { return metric_; }

  /// Nearest lattice index. Throws WindowError outside the window.
  std::size_t phi(const Point& s) const;
  const Point& psi(std::size_t x) const { return lattice_->points.at(x); }
  std::size_t act(const Point& s, std::size_t x) const;

  double target_distance(std::size_t i, std::size_t j) const;
  /// Bound on d(phi(s), s) inside the window.
  double phi_defect() const noexcept { return lattice_->density_radius; }
  /// Edge threshold of the target graph (graph metric only).
  double graph_threshold() const { return graph_ ? graph_->threshold() : 0.0; }

 private:
  std::shared_ptr<const QuasiLattice> lattice_;
  TargetMetric metric_;
  std::shared_ptr<const RoughGraph> graph_;
  std::unique_ptr<SpatialIndex> index_;
  mutable std::mutex mu_;
  mutable std::unordered_map<Point, std::size_t, PointHash> phi_memo_;
  mutable std::unordered_map<std::size_t, std::vector<int>> bfs_memo_;
};

/// phi and psi as a pair, for callers that only need the maps.
struct NearestPointMaps {
  std::shared_ptr<const QuasiAction> action;
  std::size_t phi(const Point& s) const { return action->phi(s); }
  const Point& psi(std::size_t x) const { return action->psi(x); }
};

NearestPointMaps nearest_point_maps(std::shared_ptr<const QuasiLattice> lattice);

struct AxiomSample {
  /// s, t range over the word ball of this radius (seeded points for h2).
  double group_radius = 2.0;
  /// Target points are the lattice points within this distance of the base point.
  double point_radius = 2.0;
  std::vector<double> properness_R = {1.0, 2.0, 4.0};
  std::size_t max_pairs = 10000;
  std::size_t max_points = 64;
  std::uint64_t seed = 0;
};

struct ProperWitness {
  double R = 0.0;
  std::string x;
  std::size_t count = 0;
  /// Largest word length among {s : d(s.x, x) <= R}.
  double radius = 0.0;
};

struct AxiomCertificate {
  QiConstants per_s;
  double identity_defect = 0.0;
  double associativity_defect = 0.0;
  std::string associativity_witness;
  double orbit_diameter = 0.0;
  std::vector<ProperWitness> properness;
  std::string sample;
  std::uint64_t seed = 0;
};

AxiomCertificate certify_axioms(const QuasiAction& qa, const AxiomSample& sample);

struct OrbitReport {
  std::vector<double> radii;
  std::vector<QiConstants> constants;
  /// C and r at the last radius within 10% of the previous radius.
  bool stable = true;
};

/// Fits (C, r) for s -> s . x0 against the word metric over group balls.
OrbitReport orbit_map_qi(const QuasiAction& qa, std::size_t x0, const std::vector<double>& radii,
                         std::size_t max_pairs = 10000, std::uint64_t seed = 0);

struct ConjugacySample {
  double group_radius = 4.0;
  double point_radius = 4.0;
  std::size_t max_pairs = 10000;
  std::uint64_t seed = 0;
};

/// sup d(f(s . x), s . f(x)) with f = phi_2 o psi_1.
double quasi_conjugacy_defect(const QuasiAction& qa1, const QuasiAction& qa2, const ConjugacySample& sample);

/// Relative increase of b over a (0 when b <= a, +inf when a = 0 < b).
double relative_increase(double a, double b);

}  // namespace coarse
