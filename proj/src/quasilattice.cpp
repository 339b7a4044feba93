#include "coarse/quasilattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coarse/error.hpp"
#include "coarse/spatial_index.hpp"

namespace coarse {
namespace {

// Largest value a distance < delta can take: integer metrics jump by 1.
double density_bound(const SpaceModel& space, double delta) {
  if (space.is_discrete()) return std::max(0.0, std::ceil(delta - kTolerance) - 1.0);
  return delta;
}

double index_cell(const SpaceModel& space, double scale) {
  if (space.is_discrete()) return 1.0;
  return std::max(scale, 0.25);
}

}  // namespace

std::string to_string(Construction c) {
  switch (c) {
    case Construction::greedy: return "greedy";
    case Construction::horocyclic: return "horocyclic";
    case Construction::group_ball: return "group_ball";
    case Construction::explicit_points: return "explicit";
  }
  return "?";
}

Construction parse_construction(std::string_view name) {
  if (name == "greedy") return Construction::greedy;
  if (name == "horocyclic") return Construction::horocyclic;
  if (name == "group_ball") return Construction::group_ball;
  if (name == "explicit") return Construction::explicit_points;
  throw SchemaError("unknown lattice construction '" + std::string(name) + "'");
}

QuasiLattice greedy_net(const SpaceModel& space, const Window& window, double delta) {
  if (!(delta > 0.0)) throw DomainError("greedy_net needs delta > 0");
  auto candidates = enumerate_window(space, window);
  QuasiLattice lattice{space, window, Construction::greedy, {}, delta, density_bound(space, delta),
                       candidates.empty()};
  const Point base = space.base_point();
  // Distances are quantized to the tolerance; candidates arrive in canonical
  // order, so a stable sort keeps that order inside each shell.
  std::vector<std::pair<long long, std::size_t>> order;
  order.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    order.emplace_back(std::llround(distance(space, base, candidates[i]) / kTolerance), i);
  }
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  SpatialIndex index(space, index_cell(space, delta));
  for (const auto& [d0, i] : order) {
    const Point& p = candidates[i];
    bool separated = true;
    for (auto j : index.within(p, delta)) {
      if (distance(space, p, index.point(j)) < delta - kTolerance) {
        separated = false;
        break;
      }
    }
    if (separated) index.insert(p);
  }
  lattice.points = index.points();
  return lattice;
}

QuasiLattice horocyclic_lattice(double u_lo, double u_hi, int n_lo, int n_hi) {
  QuasiLattice lattice{SpaceModel::hyperbolic(),
                       HalfPlaneWindow{u_lo, u_hi, static_cast<double>(n_lo), static_cast<double>(n_hi), 0.25},
                       Construction::horocyclic,
                       {},
                       0.0,
                       kHorocyclicDensity,
                       false};
  for (int n = n_lo; n <= n_hi; ++n) {
    const double scale = std::exp(static_cast<double>(n));
    const auto m_lo = static_cast<long>(std::ceil(u_lo / scale - kTolerance));
    const auto m_hi = static_cast<long>(std::floor(u_hi / scale + kTolerance));
    for (long m = m_lo; m <= m_hi; ++m) lattice.points.emplace_back(HalfPlanePoint{scale * static_cast<double>(m), scale});
  }
  lattice.vacuous = lattice.points.empty();
  lattice.separation_delta = std::min(1.0, min_separation(lattice));
  return lattice;
}

QuasiLattice horocyclic_ball_lattice(int radius) {
  const auto space = SpaceModel::hyperbolic();
  QuasiLattice lattice{space, BallWindow{radius}, Construction::horocyclic, {}, 0.0, kHorocyclicDensity, false};
  const double cosh_r = std::cosh(static_cast<double>(radius));
  for (int n = -radius; n <= radius; ++n) {
    const double a = std::exp(static_cast<double>(n));
    const double w2 = 2.0 * a * (cosh_r - 1.0) - (a - 1.0) * (a - 1.0);
    if (w2 < 0.0) continue;
    const auto m_max = static_cast<long>(std::floor(std::sqrt(w2) / a + kTolerance));
    for (long m = -m_max; m <= m_max; ++m) {
      HalfPlanePoint p{a * static_cast<double>(m), a};
      if (window_margin(space, lattice.window, p) >= -kTolerance) lattice.points.emplace_back(p);
    }
  }
  std::sort(lattice.points.begin(), lattice.points.end(), CanonicalLess{});
  lattice.vacuous = lattice.points.empty();
  lattice.separation_delta = std::min(1.0, min_separation(lattice));
  return lattice;
}

QuasiLattice group_ball_lattice(const SpaceModel& space, int radius) {
  if (!space.is_discrete()) throw UnsupportedOperationError("group_ball lattices need a discrete group model");
  return QuasiLattice{space, BallWindow{radius}, Construction::group_ball, word_ball(space, radius), 1.0, 0.0,
                      radius < 0};
}

QuasiLattice explicit_lattice(const SpaceModel& space, const Window& window, std::vector<Point> points,
                              double density_radius) {
  check_window(space, window);
  for (const auto& p : points) {
    validate(space, p);
    if (window_margin(space, window, p) < -kTolerance) throw WindowError(to_string(p) + " lies outside the window");
  }
  QuasiLattice lattice{space, window, Construction::explicit_points, std::move(points), 0.0, density_radius, false};
  lattice.vacuous = lattice.points.empty();
  const double sep = min_separation(lattice);
  lattice.separation_delta = std::isfinite(sep) ? sep : 0.0;
  return lattice;
}

double min_separation(const QuasiLattice& lattice) {
  double best = std::numeric_limits<double>::infinity();
  const auto& pts = lattice.points;
  if (pts.size() < 2) return best;
  // Probe growing radii through the index before falling back to all pairs.
  SpatialIndex index(lattice.space, index_cell(lattice.space, 1.0));
  for (const auto& p : pts) index.insert(p);
  for (double r : {1.0, 2.0, 4.0}) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (auto j : index.within(pts[i], r)) {
        if (j != i) best = std::min(best, distance(lattice.space, pts[i], pts[j]));
      }
    }
    if (std::isfinite(best)) return best;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, distance(lattice.space, pts[i], pts[j]));
  }
  return best;
}

LatticeVerification verify_quasilattice(const QuasiLattice& lattice, std::span<const Point> probes,
                                        std::span<const double> R_list) {
  LatticeVerification out;
  const double sep = min_separation(lattice);
  out.min_separation = std::isfinite(sep) ? sep : 0.0;
  std::vector<double> radii(R_list.begin(), R_list.end());
  std::sort(radii.begin(), radii.end());
  const double need = radii.empty() ? 0.0 : std::max(0.0, radii.back());

  std::vector<std::string> offenders;
  for (const auto& p : probes) {
    validate(lattice.space, p);
    if (window_margin(lattice.space, lattice.window, p) < need - kTolerance) offenders.push_back(to_string(p));
  }
  if (!offenders.empty()) {
    throw BorderError("probes closer than " + std::to_string(need) + " to the window border", offenders);
  }

  out.density.probe_count = probes.size();
  out.density.vacuous = probes.empty() || lattice.points.empty();
  for (double R : radii) out.multiplicity.entries.emplace_back(R, 0);
  if (out.density.vacuous) return out;

  const double reach = std::max({need, lattice.density_radius, lattice.separation_delta}) + 1.0;
  SpatialIndex index(lattice.space, index_cell(lattice.space, std::max(need, 1.0)));
  for (const auto& p : lattice.points) index.insert(p);

  for (const auto& probe : probes) {
    auto nearest = index.nearest(probe, reach);
    double d = std::numeric_limits<double>::infinity();
    if (nearest) {
      d = distance(lattice.space, probe, index.point(*nearest));
    } else {
      for (const auto& q : lattice.points) d = std::min(d, distance(lattice.space, probe, q));
    }
    if (d > out.density.max_distance) {
      out.density.max_distance = d;
      out.density.worst_probe = to_string(probe);
    }
    if (radii.empty()) continue;
    auto near = index.within(probe, radii.back());
    std::vector<double> ds;
    ds.reserve(near.size());
    for (auto j : near) ds.push_back(distance(lattice.space, probe, index.point(j)));
    for (auto& [R, M] : out.multiplicity.entries) {
      const auto count = static_cast<std::size_t>(
          std::count_if(ds.begin(), ds.end(), [R = R](double v) { return v <= R + kTolerance; }));
      M = std::max(M, count);
    }
  }
  return out;
}

std::vector<Point> default_probes(const QuasiLattice& lattice, double margin, std::size_t count, std::uint64_t seed) {
  return sample_window(lattice.space, lattice.window, margin, count, seed);
}

}  // namespace coarse
