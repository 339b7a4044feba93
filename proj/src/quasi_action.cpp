#include "coarse/quasi_action.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "coarse/error.hpp"

namespace coarse {
namespace {

constexpr std::size_t kContinuousSample = 48;

std::vector<Point> group_elements(const SpaceModel& space, double radius, std::uint64_t seed) {
  return group_sample(space, radius, kContinuousSample, seed);
}

std::vector<std::size_t> target_points(const QuasiAction& qa, double radius, std::size_t cap, std::uint64_t seed) {
  const auto& lattice = qa.lattice();
  const Point base = lattice.space.base_point();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < lattice.points.size(); ++i) {
    if (distance(lattice.space, base, lattice.points[i]) <= radius + kTolerance) out.push_back(i);
  }
  if (out.size() > cap) {
    std::mt19937_64 rng(seed);
    std::shuffle(out.begin(), out.end(), rng);
    out.resize(cap);
    std::sort(out.begin(), out.end());
  }
  if (out.empty()) throw WindowError("no lattice points within " + std::to_string(radius) + " of the base point");
  return out;
}

// All index pairs (i, j) of an n x m grid when there are at most `cap`,
// otherwise `cap` seeded draws.
std::vector<std::pair<std::size_t, std::size_t>> index_pairs(std::size_t n, std::size_t m, std::size_t cap,
                                                             std::uint64_t seed, bool distinct_upper) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t total = distinct_upper ? (n < 2 ? 0 : n * (n - 1) / 2) : n * m;
  if (total <= cap) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = distinct_upper ? i + 1 : 0; j < m; ++j) out.emplace_back(i, j);
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_i(0, n - 1), pick_j(0, m - 1);
  while (out.size() < cap) {
    auto i = pick_i(rng), j = pick_j(rng);
    if (distinct_upper) {
      if (i == j) continue;
      if (i > j) std::swap(i, j);
    }
    out.emplace_back(i, j);
  }
  return out;
}

}  // namespace

QuasiAction::QuasiAction(std::shared_ptr<const QuasiLattice> lattice, TargetMetric metric,
                         std::shared_ptr<const RoughGraph> graph)
    : lattice_(std::move(lattice)), metric_(metric), graph_(std::move(graph)) {
  if (!lattice_) throw DomainError("quasi-action needs a lattice");
  if (!lattice_->space.is_group()) throw UnsupportedOperationError("model " + lattice_->space.id() + " is not a group");
  if (lattice_->points.empty()) throw WindowError("quasi-action on an empty lattice");
  if (metric_ == TargetMetric::graph) {
    if (!graph_) graph_ = std::make_shared<const RoughGraph>(build_graph(lattice_));
    if (&graph_->lattice() != lattice_.get() && graph_->lattice().points != lattice_->points) {
      throw ModelMismatchError("graph was built on a different lattice");
    }
  }
  index_ = std::make_unique<SpatialIndex>(lattice_->space, lattice_->space.is_discrete() ? 1.0 : 0.5);
  for (const auto& p : lattice_->points) index_->insert(p);
}

std::size_t QuasiAction::phi(const Point& s) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = phi_memo_.find(s); it != phi_memo_.end()) return it->second;
  }
  const auto& space = lattice_->space;
  validate(space, s);
  if (window_margin(space, lattice_->window, s) < -kTolerance) {
    throw WindowError(to_string(s) + " lies outside window " + to_string(lattice_->window));
  }
  auto found = index_->nearest(s, std::max(lattice_->density_radius, lattice_->separation_delta) + 1.0);
  std::size_t best = 0;
  if (found) {
    best = *found;
  } else {
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lattice_->points.size(); ++i) {
      const double d = distance(space, s, lattice_->points[i]);
      if (d < best_d - kTolerance) {
        best_d = d;
        best = i;
      }
    }
  }
  std::lock_guard lock(mu_);
  phi_memo_.emplace(s, best);
  return best;
}

std::size_t QuasiAction::act(const Point& s, std::size_t x) const {
  return phi(multiply(lattice_->space, s, psi(x)));
}

double QuasiAction::target_distance(std::size_t i, std::size_t j) const {
  if (metric_ == TargetMetric::ambient) return distance(lattice_->space, psi(i), psi(j));
  std::lock_guard lock(mu_);
  auto it = bfs_memo_.find(i);
  if (it == bfs_memo_.end()) it = bfs_memo_.emplace(i, bfs_distances(*graph_, i)).first;
  const int d = it->second.at(j);
  if (d < 0) throw UnreachableError("target points " + std::to_string(i) + " and " + std::to_string(j) + " are disconnected");
  return d;
}

NearestPointMaps nearest_point_maps(std::shared_ptr<const QuasiLattice> lattice) {
  return NearestPointMaps{std::make_shared<const QuasiAction>(std::move(lattice))};
}

AxiomCertificate certify_axioms(const QuasiAction& qa, const AxiomSample& sample) {
  const auto& space = qa.group();
  AxiomCertificate cert;
  cert.seed = sample.seed;

  const auto S = group_elements(space, sample.group_radius, sample.seed);
  const auto X = target_points(qa, sample.point_radius, sample.max_points, sample.seed ^ 0x5bd1e995ULL);
  const Point e = identity(space);

  // (i) each s acts as a quasi-isometry; constants maximised over a few s.
  {
    std::vector<std::size_t> chosen(S.size());
    for (std::size_t i = 0; i < S.size(); ++i) chosen[i] = i;
    if (chosen.size() > 16) {
      std::mt19937_64 rng(sample.seed ^ 0x9e3779b9ULL);
      std::shuffle(chosen.begin(), chosen.end(), rng);
      chosen.resize(16);
      std::sort(chosen.begin(), chosen.end());
    }
    const auto xpairs = index_pairs(X.size(), X.size(), sample.max_pairs, sample.seed, true);
    for (auto k : chosen) {
      std::vector<DistancePair> pairs;
      pairs.reserve(xpairs.size());
      for (auto [i, j] : xpairs) {
        pairs.push_back({qa.target_distance(X[i], X[j]), qa.target_distance(qa.act(S[k], X[i]), qa.act(S[k], X[j]))});
      }
      auto fit = fit_qi_constants(pairs);
      cert.per_s.C = std::max(cert.per_s.C, fit.C);
      cert.per_s.r = std::max(cert.per_s.r, fit.r);
      cert.per_s.sample_size += pairs.size();
    }
    cert.per_s.certified_over = std::to_string(chosen.size()) + " group elements x " +
                                std::to_string(xpairs.size()) + " point pairs";
  }

  // (ii) identity defect.
  for (auto x : X) cert.identity_defect = std::max(cert.identity_defect, qa.target_distance(qa.act(e, x), x));

  // (iii) associativity defect.
  const auto st = index_pairs(S.size(), S.size(), sample.max_pairs, sample.seed ^ 0x2545f491ULL, false);
  for (auto [i, j] : st) {
    const Point prod = multiply(space, S[i], S[j]);
    for (auto x : X) {
      const double d = qa.target_distance(qa.act(S[i], qa.act(S[j], x)), qa.act(prod, x));
      if (d > cert.associativity_defect + kTolerance) {
        cert.associativity_defect = d;
        cert.associativity_witness =
            "s=" + to_string(S[i]) + " t=" + to_string(S[j]) + " x=" + to_string(qa.psi(x));
      }
    }
  }

  // (iv) orbit of the radius-1 generating ball.
  const auto K = space.is_discrete() ? word_ball(space, 1) : group_elements(space, 1.0, sample.seed + 1);
  for (auto x : X) {
    std::vector<std::size_t> orbit;
    for (const auto& k : K) orbit.push_back(qa.act(k, x));
    for (std::size_t a = 0; a < orbit.size(); ++a) {
      for (std::size_t b = a + 1; b < orbit.size(); ++b) {
        cert.orbit_diameter = std::max(cert.orbit_diameter, qa.target_distance(orbit[a], orbit[b]));
      }
    }
  }

  // Properness: d(g.x, x) <= R forces d(g psi(x), psi(x)) <= R' + r_phi, so
  // g = psi(x) s psi(x)^-1 with |s| bounded; the outer layer must not qualify.
  if (space.is_discrete()) {
    const std::size_t proper_points = std::min<std::size_t>(X.size(), 8);
    std::vector<double> Rs = sample.properness_R;
    std::sort(Rs.begin(), Rs.end());
    for (std::size_t xi = 0; xi < proper_points; ++xi) {
      const auto x = X[xi];
      const Point& px = qa.psi(x);
      const Point px_inv = inverse(space, px);
      for (double R : Rs) {
        const double ambient_R = qa.metric() == TargetMetric::graph ? R * qa.graph_threshold() : R;
        const int rho = static_cast<int>(std::floor(ambient_R + qa.phi_defect() + kTolerance)) + 1;
        ProperWitness w{R, to_string(px), 0, 0.0};
        for (const auto& s : word_ball(space, rho)) {
          const Point g = multiply(space, multiply(space, px, s), px_inv);
          if (qa.target_distance(qa.act(g, x), x) > R + kTolerance) continue;
          if (word_length(space, s) >= rho) {
            throw CertificationError("properness scan did not close", "g=" + to_string(g) + " x=" + to_string(px) +
                                                                          " R=" + std::to_string(R));
          }
          ++w.count;
          w.radius = std::max(w.radius, word_length(space, g));
        }
        cert.properness.push_back(std::move(w));
      }
    }
  }
  std::ostringstream desc;
  desc << S.size() << " group elements (radius " << sample.group_radius << "), " << X.size()
       << " target points (radius " << sample.point_radius << "), " << st.size() << " (s,t) pairs";
  cert.sample = desc.str();
  return cert;
}

}  // namespace coarse

namespace coarse {

OrbitReport orbit_map_qi(const QuasiAction& qa, std::size_t x0, const std::vector<double>& radii,
                         std::size_t max_pairs, std::uint64_t seed) {
  const auto& space = qa.group();
  if (x0 >= qa.lattice().points.size()) throw DomainError("orbit base point index out of range");
  OrbitReport report;
  for (double radius : radii) {
    const auto S = group_elements(space, radius, seed);
    std::vector<std::size_t> orbit;
    orbit.reserve(S.size());
    for (const auto& s : S) orbit.push_back(qa.act(s, x0));
    const auto idx = index_pairs(S.size(), S.size(), max_pairs, seed + static_cast<std::uint64_t>(radius * 1000), true);
    std::vector<DistancePair> pairs;
    pairs.reserve(idx.size());
    for (auto [i, j] : idx) pairs.push_back({distance(space, S[i], S[j]), qa.target_distance(orbit[i], orbit[j])});
    std::ostringstream desc;
    desc << pairs.size() << " pairs from " << S.size() << " group elements within " << radius;
    report.radii.push_back(radius);
    report.constants.push_back(fit_qi_constants(pairs, desc.str()));
  }
  if (report.constants.size() >= 2) {
    const auto& prev = report.constants[report.constants.size() - 2];
    const auto& last = report.constants.back();
    report.stable = relative_increase(prev.C, last.C) <= 0.1 + kTolerance &&
                    relative_increase(prev.r, last.r) <= 0.1 + kTolerance;
  }
  return report;
}

double quasi_conjugacy_defect(const QuasiAction& qa1, const QuasiAction& qa2, const ConjugacySample& sample) {
  if (!(qa1.group() == qa2.group())) throw ModelMismatchError("quasi-actions of different groups");
  const auto S = group_elements(qa1.group(), sample.group_radius, sample.seed);
  const auto X = target_points(qa1, sample.point_radius, std::numeric_limits<std::size_t>::max(), sample.seed);
  auto f = [&](std::size_t x) { return qa2.phi(qa1.psi(x)); };
  double defect = 0.0;
  for (auto [i, k] : index_pairs(S.size(), X.size(), sample.max_pairs, sample.seed, false)) {
    const auto x = X[k];
    defect = std::max(defect, qa2.target_distance(f(qa1.act(S[i], x)), qa2.act(S[i], f(x))));
  }
  return defect;
}

double relative_increase(double a, double b) {
  if (b <= a + kTolerance) return 0.0;
  if (a <= kTolerance) return std::numeric_limits<double>::infinity();
  return (b - a) / a;
}

}  // namespace coarse
