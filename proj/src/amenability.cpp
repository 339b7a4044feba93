#include "coarse/amenability.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "coarse/error.hpp"

namespace coarse {
namespace {

int hop_bound(double c) {
  if (c < 0.0) throw DomainError("c must be non-negative");
  return static_cast<int>(std::floor(c + kTolerance));
}

// Hop distances up to `depth` from a source set, touching only the vertices reached.
std::unordered_map<std::size_t, int> local_bfs(const RoughGraph& graph, const std::vector<std::size_t>& sources,
                                               int depth) {
  std::unordered_map<std::size_t, int> dist;
  std::vector<std::size_t> frontier;
  for (auto s : sources) {
    if (dist.emplace(s, 0).second) frontier.push_back(s);
  }
  std::vector<std::size_t> next;
  for (int d = 1; d <= depth && !frontier.empty(); ++d) {
    next.clear();
    for (auto v : frontier) {
      for (auto w : graph.neighbors(v)) {
        if (dist.emplace(w, d).second) next.push_back(w);
      }
    }
    frontier.swap(next);
  }
  return dist;
}

std::vector<std::size_t> boundary_of(const RoughGraph& graph, const std::unordered_set<std::size_t>& in_a,
                                     const std::vector<std::size_t>& a, int k) {
  if (a.empty() || k == 0) return {};
  auto from_a = local_bfs(graph, a, k);
  // A shortest path from a in A to the complement leaves A through an
  // outside neighbour of A, so those neighbours stand in for the complement.
  std::vector<std::size_t> exits;
  for (const auto& [v, d] : from_a) {
    if (d == 1) exits.push_back(v);
  }
  std::sort(exits.begin(), exits.end());
  auto from_exit = local_bfs(graph, exits, k);
  std::vector<std::size_t> out;
  for (const auto& [v, d] : from_a) {
    if (!in_a.contains(v) || from_exit.contains(v)) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void check_interior(const RoughGraph& graph, std::span<const std::size_t> A, int k) {
  std::vector<std::string> offenders;
  for (auto v : A) {
    if (v >= graph.vertex_count()) throw DomainError("vertex index out of range");
    if (graph.border_hops(v) < k) {
      if (offenders.size() < 10) offenders.push_back(std::to_string(v) + ":" + to_string(graph.lattice().points[v]));
    }
  }
  if (!offenders.empty()) {
    throw BorderError("set reaches within c of the window border", std::move(offenders));
  }
}

bool fits_interior(const RoughGraph& graph, const std::vector<std::size_t>& A, int k) {
  return std::all_of(A.begin(), A.end(), [&](std::size_t v) { return graph.border_hops(v) >= k; });
}

FolnerEntry evaluate(const RoughGraph& graph, const std::vector<std::size_t>& A, int k, std::string descriptor) {
  std::unordered_set<std::size_t> in_a(A.begin(), A.end());
  const auto boundary = boundary_of(graph, in_a, A, k);
  return FolnerEntry{std::move(descriptor), A.size(), boundary.size(),
                     static_cast<double>(boundary.size()) / static_cast<double>(A.size())};
}

void finish(FolnerReport& report) {
  for (const auto& e : report.entries) report.best_ratio = std::min(report.best_ratio, e.ratio);
  report.achieved = report.best_ratio < report.epsilon;
}

std::string format_size(double s) {
  if (s == std::floor(s)) return std::to_string(static_cast<long long>(s));
  return std::to_string(s);
}

// Hill-climbing by single-vertex toggles on the boundary, first improvement.
FolnerEntry improve(const RoughGraph& graph, std::vector<std::size_t> A, int k) {
  std::unordered_set<std::size_t> in_a(A.begin(), A.end());
  auto ratio_of = [&](const std::unordered_set<std::size_t>& s, const std::vector<std::size_t>& list) {
    return static_cast<double>(boundary_of(graph, s, list, k).size()) / static_cast<double>(list.size());
  };
  double current = ratio_of(in_a, A);
  const std::size_t budget = 10 * A.size();
  std::size_t attempts = 0;
  bool improved = true;
  while (improved && attempts < budget) {
    improved = false;
    for (auto v : boundary_of(graph, in_a, A, k)) {
      if (attempts >= budget) break;
      const bool removing = in_a.contains(v);
      if (!removing && graph.border_hops(v) < k) continue;
      if (removing && A.size() == 1) continue;
      ++attempts;
      auto trial = A;
      auto trial_set = in_a;
      if (removing) {
        trial.erase(std::find(trial.begin(), trial.end(), v));
        trial_set.erase(v);
      } else {
        trial.insert(std::upper_bound(trial.begin(), trial.end(), v), v);
        trial_set.insert(v);
      }
      const double r = ratio_of(trial_set, trial);
      if (r < current - kTolerance) {
        A = std::move(trial);
        in_a = std::move(trial_set);
        current = r;
        improved = true;
        break;
      }
    }
  }
  return evaluate(graph, A, k, "greedy:" + std::to_string(A.size()) + " after " + std::to_string(attempts) + " tries");
}

}  // namespace

std::vector<std::size_t> c_boundary(const RoughGraph& graph, std::span<const std::size_t> A, double c) {
  const int k = hop_bound(c);
  check_interior(graph, A, k);
  std::vector<std::size_t> a(A.begin(), A.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  std::unordered_set<std::size_t> in_a(a.begin(), a.end());
  return boundary_of(graph, in_a, a, k);
}

double folner_ratio(const RoughGraph& graph, std::span<const std::size_t> A, double c) {
  std::unordered_set<std::size_t> distinct(A.begin(), A.end());
  if (distinct.empty()) throw UndefinedRatioError("Folner ratio of the empty set");
  return static_cast<double>(c_boundary(graph, A, c).size()) / static_cast<double>(distinct.size());
}

std::string to_string(FolnerFamily family) {
  switch (family) {
    case FolnerFamily::metric_balls: return "metric_balls";
    case FolnerFamily::boxes: return "boxes";
    case FolnerFamily::greedy_improved: return "greedy_improved";
  }
  return "?";
}

FolnerFamily parse_folner_family(std::string_view name) {
  if (name == "metric_balls" || name == "balls") return FolnerFamily::metric_balls;
  if (name == "boxes") return FolnerFamily::boxes;
  if (name == "greedy_improved" || name == "greedy") return FolnerFamily::greedy_improved;
  throw SchemaError("unknown Folner family '" + std::string(name) + "'");
}

std::vector<std::size_t> ball_set(const RoughGraph& graph, int m) {
  auto dist = bfs_distances(graph, graph.center(), m);
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (dist[v] >= 0) out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> box_set(const RoughGraph& graph, double n, double z_scale) {
  const auto& lattice = graph.lattice();
  const auto& space = lattice.space;
  if (space.kind() == ModelKind::free_group) throw UnsupportedOperationError("free groups have no coordinate boxes");
  const Point& center = lattice.points[graph.center()];
  std::vector<std::size_t> out;
  const double tol = kTolerance;
  for (std::size_t v = 0; v < lattice.points.size(); ++v) {
    const Point& p = lattice.points[v];
    bool inside = true;
    switch (space.kind()) {
      case ModelKind::zd: {
        const auto& x = std::get<ZdPoint>(p).x;
        const auto& c0 = std::get<ZdPoint>(center).x;
        for (std::size_t i = 0; i < x.size() && inside; ++i) inside = std::abs(static_cast<double>(x[i] - c0[i])) <= n + tol;
        break;
      }
      case ModelKind::heisenberg: {
        const auto g = std::get<HeisenbergPoint>(multiply(space, inverse(space, center), p));
        const double z_half = std::ceil(z_scale * n * n - tol);
        inside = std::abs(static_cast<double>(g.x)) <= n + tol && std::abs(static_cast<double>(g.y)) <= n + tol &&
                 std::abs(static_cast<double>(g.z)) <= z_half + tol;
        break;
      }
      case ModelKind::euclidean: {
        const auto& x = std::get<EuclideanPoint>(p).x;
        const auto& c0 = std::get<EuclideanPoint>(center).x;
        for (std::size_t i = 0; i < x.size() && inside; ++i) inside = std::abs(x[i] - c0[i]) <= n + tol;
        break;
      }
      case ModelKind::hyperbolic: {
        const auto g = std::get<HalfPlanePoint>(multiply(space, inverse(space, center), p));
        inside = std::abs(g.u) <= n + tol && std::abs(std::log(g.a)) <= n / 2.0 + tol;
        break;
      }
      case ModelKind::free_group: break;
    }
    if (inside) out.push_back(v);
  }
  return out;
}

FolnerReport folner_scan(const RoughGraph& graph, double c, FolnerFamily family, double epsilon,
                         std::vector<double> sizes, FolnerScanOptions options) {
  const int k = hop_bound(c);
  FolnerReport report;
  report.c = c;
  report.family = family;
  report.epsilon = epsilon;
  std::sort(sizes.begin(), sizes.end());
  const bool use_boxes = family == FolnerFamily::boxes;
  const bool stop_early = options.stop_early && family != FolnerFamily::greedy_improved;
  std::vector<std::size_t> best_set;
  double best = std::numeric_limits<double>::infinity();
  for (double s : sizes) {
    auto A = use_boxes ? box_set(graph, s, options.z_scale) : ball_set(graph, static_cast<int>(std::floor(s + kTolerance)));
    if (A.empty() || !fits_interior(graph, A, k)) continue;
    auto entry = evaluate(graph, A, k, (use_boxes ? "box:" : "ball:") + format_size(s));
    if (entry.ratio < best) {
      best = entry.ratio;
      best_set = A;
    }
    report.entries.push_back(std::move(entry));
    if (stop_early && report.entries.back().ratio < epsilon) break;
  }
  if (report.entries.empty()) {
    throw WindowError("no candidate set of the schedule fits the interior of " + to_string(graph.lattice().window));
  }
  if (family == FolnerFamily::greedy_improved) report.entries.push_back(improve(graph, best_set, k));
  finish(report);
  return report;
}

FolnerEntry box_boundary(const CayleyGraph& graph, std::int64_t n, std::int64_t z_half, double c) {
  const auto& space = graph.space();
  const bool heis = space.kind() == ModelKind::heisenberg;
  if (!heis && !(space.kind() == ModelKind::zd && space.dim() >= 2)) {
    throw UnsupportedOperationError("implicit box counts need Z^d (d >= 2) or the Heisenberg group");
  }
  if (n < 0 || z_half < 0) throw DomainError("box half-widths must be non-negative");
  const int k = hop_bound(c);
  const int cols = heis ? 2 : space.dim() - 1;

  // Offsets as (column shift, z shift, heisenberg twist coefficient y).
  struct Step {
    std::vector<std::int64_t> shift;
    std::int64_t dz;
    std::int64_t twist;
  };
  std::vector<Step> steps;
  std::int64_t reach = 0;
  if (k > 0) {
    for (const auto& s : graph.reach(k)) {
      Step st;
      if (heis) {
        const auto& h = std::get<HeisenbergPoint>(s);
        st = {{h.x, h.y}, h.z, h.y};
      } else {
        const auto& x = std::get<ZdPoint>(s).x;
        st = {std::vector<std::int64_t>(x.begin(), x.end() - 1), x.back(), 0};
      }
      for (auto v : st.shift) reach = std::max(reach, std::abs(v));
      steps.push_back(std::move(st));
    }
  }

  auto in_square = [&](const std::vector<std::int64_t>& col) {
    return std::all_of(col.begin(), col.end(), [&](std::int64_t v) { return std::abs(v) <= n; });
  };
  const std::int64_t height = 2 * z_half + 1;
  std::uint64_t boundary = 0;
  std::vector<std::int64_t> col(static_cast<std::size_t>(cols), -(n + reach));
  std::vector<std::int64_t> target(static_cast<std::size_t>(cols));
  std::vector<std::pair<std::int64_t, std::int64_t>> intervals;
  while (true) {
    const bool inside = in_square(col);
    intervals.clear();
    std::int64_t lo_keep = -z_half, hi_keep = z_half;
    bool whole_column = false;
    for (const auto& st : steps) {
      for (int i = 0; i < cols; ++i) target[static_cast<std::size_t>(i)] = col[static_cast<std::size_t>(i)] + st.shift[static_cast<std::size_t>(i)];
      // (x, y, z) s = (x + s_x, y + s_y, z + s_z + x s_y).
      const std::int64_t dz = st.dz + (heis ? col[0] * st.twist : 0);
      const bool lands = in_square(target);
      if (inside) {
        if (!lands) {
          whole_column = true;
        } else {
          lo_keep = std::max(lo_keep, -z_half - dz);
          hi_keep = std::min(hi_keep, z_half - dz);
        }
      } else if (lands) {
        intervals.emplace_back(-z_half - dz, z_half - dz);
      }
    }
    if (inside) {
      // Inside vertices: boundary unless every step stays in the box.
      const std::int64_t keep = whole_column ? 0 : std::max<std::int64_t>(0, hi_keep - lo_keep + 1);
      boundary += static_cast<std::uint64_t>(height - keep);
      // Outside vertices of an inside column sit above or below the box.
      for (const auto& st : steps) {
        for (int i = 0; i < cols; ++i) target[static_cast<std::size_t>(i)] = col[static_cast<std::size_t>(i)] + st.shift[static_cast<std::size_t>(i)];
        if (!in_square(target)) continue;
        const std::int64_t dz = st.dz + (heis ? col[0] * st.twist : 0);
        intervals.emplace_back(-z_half - dz, z_half - dz);
      }
    }
    if (!intervals.empty()) {
      std::sort(intervals.begin(), intervals.end());
      std::int64_t cur_lo = intervals[0].first, cur_hi = intervals[0].second;
      auto flush = [&](std::int64_t lo, std::int64_t hi) {
        std::int64_t count = hi - lo + 1;
        if (inside) {
          const std::int64_t olo = std::max(lo, -z_half), ohi = std::min(hi, z_half);
          if (olo <= ohi) count -= ohi - olo + 1;
        }
        boundary += static_cast<std::uint64_t>(count);
      };
      for (std::size_t i = 1; i < intervals.size(); ++i) {
        if (intervals[i].first <= cur_hi + 1) {
          cur_hi = std::max(cur_hi, intervals[i].second);
        } else {
          flush(cur_lo, cur_hi);
          cur_lo = intervals[i].first;
          cur_hi = intervals[i].second;
        }
      }
      flush(cur_lo, cur_hi);
    }
    int i = cols - 1;
    while (i >= 0 && ++col[static_cast<std::size_t>(i)] > n + reach) {
      col[static_cast<std::size_t>(i)] = -(n + reach);
      --i;
    }
    if (i < 0) break;
  }

  std::uint64_t size = static_cast<std::uint64_t>(height);
  for (int i = 0; i < cols; ++i) size *= static_cast<std::uint64_t>(2 * n + 1);
  return FolnerEntry{"box:" + std::to_string(n) + ",z=" + std::to_string(z_half), size, boundary,
                     static_cast<double>(boundary) / static_cast<double>(size)};
}

FolnerReport folner_scan(const CayleyGraph& graph, double c, double epsilon, std::vector<double> sizes,
                         FolnerScanOptions options) {
  FolnerReport report;
  report.c = c;
  report.family = FolnerFamily::boxes;
  report.epsilon = epsilon;
  std::sort(sizes.begin(), sizes.end());
  const bool heis = graph.space().kind() == ModelKind::heisenberg;
  for (double s : sizes) {
    const auto n = static_cast<std::int64_t>(std::floor(s + kTolerance));
    const auto z = heis ? static_cast<std::int64_t>(std::ceil(options.z_scale * static_cast<double>(n * n) - kTolerance)) : n;
    report.entries.push_back(box_boundary(graph, n, z, c));
    if (options.stop_early && report.entries.back().ratio < epsilon) break;
  }
  if (report.entries.empty()) throw WindowError("empty size schedule");
  finish(report);
  return report;
}

}  // namespace coarse
