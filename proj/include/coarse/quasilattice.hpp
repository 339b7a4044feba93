#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coarse/point.hpp"
#include "coarse/space.hpp"
#include "coarse/window.hpp"

namespace coarse {

enum class Construction { greedy, horocyclic, group_ball, explicit_points };

std::string to_string(Construction c);
Construction parse_construction(std::string_view name);

/// Finite piece of a quasi-lattice: a separated, coarsely dense point set of
/// a window. `density_radius` is the a-priori radius r used downstream (edge
/// threshold 2r + c + 1); verify_quasilattice measures it empirically.
struct QuasiLattice {
  SpaceModel space;
  Window window;
  Construction construction = Construction::greedy;
  std::vector<Point> points;
  double separation_delta = 0.0;
  double density_radius = 0.0;
  /// Set when the window was empty, so no density statement is made.
  bool vacuous = false;
};

struct DensityCertificate {
  double max_distance = 0.0;
  std::string worst_probe;
  std::size_t probe_count = 0;
  bool vacuous = false;
};

struct MultiplicityProfile {
  /// (R, M(R)), R ascending.
  std::vector<std::pair<double, std::size_t>> entries;
};

struct LatticeVerification {
  DensityCertificate density;
  MultiplicityProfile multiplicity;
  double min_separation = 0.0;
};

/// Maximal delta-separated subset of the window, chosen greedily in shell
/// order: by distance from the base point, canonical order within a shell.
QuasiLattice greedy_net(const SpaceModel& space, const Window& window, double delta);

/// {(e^n m, e^n) : n_lo <= n <= n_hi, u_lo <= e^n m <= u_hi} in the upper half-plane.
QuasiLattice horocyclic_lattice(double u_lo, double u_hi, int n_lo, int n_hi);

/// The same point set cut to the closed ball of this radius about i.
QuasiLattice horocyclic_ball_lattice(int radius);

/// Radius of the horocyclic lattice used for the edge threshold.
inline constexpr double kHorocyclicDensity = 1.07;

/// The whole word ball of a discrete group: r = 0, delta = 1.
QuasiLattice group_ball_lattice(const SpaceModel& space, int radius);

/// A caller-supplied point set (e.g. a coset). Separation is measured.
QuasiLattice explicit_lattice(const SpaceModel& space, const Window& window, std::vector<Point> points,
                              double density_radius);

/// Density and multiplicity over the probes. Every probe must sit at window
/// margin >= max(R_list), otherwise BorderError naming the offenders.
LatticeVerification verify_quasilattice(const QuasiLattice& lattice, std::span<const Point> probes,
                                        std::span<const double> R_list);

/// Seeded probes of the lattice window shrunk by `margin`.
std::vector<Point> default_probes(const QuasiLattice& lattice, double margin, std::size_t count, std::uint64_t seed);

/// Smallest pairwise distance, or +inf for fewer than two points.
double min_separation(const QuasiLattice& lattice);

}  // namespace coarse
