#include "coarse/growth.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "coarse/error.hpp"

namespace coarse {
namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
  double slope_se = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double res = y[i] - fit.intercept - fit.slope * x[i];
    sse += res * res;
  }
  fit.rms = std::sqrt(sse / n);
  if (x.size() > 2 && sxx > 0.0) fit.slope_se = std::sqrt(sse / (n - 2.0) / sxx);
  return fit;
}

}  // namespace

GrowthSeries ball_sizes(const RoughGraph& graph, std::size_t x0, int m_max) {
  if (x0 >= graph.vertex_count()) throw DomainError("base vertex out of range");
  if (m_max < 0) throw DomainError("m_max must be non-negative");
  const int safe = graph.border_hops(x0);
  if (safe < m_max) {
    throw BorderError("balls around vertex " + std::to_string(x0) + " reach the window border beyond m = " +
                          std::to_string(safe),
                      {to_string(graph.lattice().points[x0])}, safe);
  }
  GrowthSeries series{"graph:" + graph.lattice().space.id(), to_string(graph.lattice().points[x0]), {}};
  auto dist = bfs_distances(graph, x0, m_max);
  series.values.assign(static_cast<std::size_t>(m_max) + 1, 0);
  for (int d : dist) {
    if (d >= 0) ++series.values[static_cast<std::size_t>(d)];
  }
  for (std::size_t m = 1; m < series.values.size(); ++m) series.values[m] += series.values[m - 1];
  return series;
}

GrowthSeries ball_sizes(const SpaceModel& space, int m_max) {
  if (!space.is_discrete()) throw UnsupportedOperationError("group ball sizes need a discrete group model");
  if (m_max < 0) throw DomainError("m_max must be non-negative");
  GrowthSeries series{"group:" + space.id(), to_string(identity(space)), {1}};
  // Cayley-graph neighbours of layer k lie in layers k - 1, k, k + 1, so
  // three layers are enough to tell new elements from old ones.
  const auto gens = space.generators();
  std::unordered_set<Point, PointHash> previous, current{identity(space)};
  for (int m = 1; m <= m_max; ++m) {
    std::unordered_set<Point, PointHash> next;
    for (const auto& g : current) {
      for (const auto& s : gens) {
        Point h = multiply(space, g, s);
        if (!previous.contains(h) && !current.contains(h)) next.insert(std::move(h));
      }
    }
    series.values.push_back(series.values.back() + next.size());
    previous = std::move(current);
    current = std::move(next);
  }
  return series;
}

std::string to_string(GrowthClass c) {
  switch (c) {
    case GrowthClass::polynomial: return "polynomial";
    case GrowthClass::exponential: return "exponential";
    case GrowthClass::inconclusive: return "inconclusive";
  }
  return "?";
}

GrowthVerdict classify_growth(const GrowthSeries& series) {
  GrowthVerdict v;
  const auto& values = series.values;
  for (std::size_t m = 0; m < values.size(); ++m) {
    if (values[m] == 0) throw DomainError("growth series must be positive");
    if (m > 0 && values[m] < values[m - 1]) throw DomainError("growth series must be non-decreasing");
  }
  if (values.size() < 8) {
    v.too_short = true;
    return v;
  }
  std::vector<double> lx, ex, ly;
  for (std::size_t m = 4; m < values.size(); ++m) {
    lx.push_back(std::log(static_cast<double>(m) + 0.5));
    ex.push_back(static_cast<double>(m));
    ly.push_back(std::log(static_cast<double>(values[m])));
  }
  const auto loglog = least_squares(lx, ly);
  const auto expfit = least_squares(ex, ly);
  v.loglog_slope = loglog.slope;
  v.loglog_rms = loglog.rms;
  v.exp_slope = expfit.slope;
  v.exp_rms = expfit.rms;
  if (loglog.rms < 0.1) {
    v.kind = GrowthClass::polynomial;
    v.estimate = loglog.slope;
    v.half_width = 1.96 * loglog.slope_se;
  } else if (expfit.slope > 0.05 && expfit.rms < 0.2) {
    v.kind = GrowthClass::exponential;
    v.estimate = expfit.slope;
    v.half_width = 1.96 * expfit.slope_se;
  }
  return v;
}

SandwichVerdict compare_growth(const GrowthSeries& a, const GrowthSeries& b) {
  SandwichVerdict verdict;
  if (a.values.empty() || b.values.empty()) return verdict;
  const std::size_t n = std::min(a.values.size(), b.values.size());
  verdict.overlap = n;
  auto at = [](const GrowthSeries& s, std::size_t i) { return s.values[std::min(i, s.values.size() - 1)]; };
  auto holds = [&](const GrowthSeries& lhs, const GrowthSeries& rhs, int alpha, int beta, int gamma) {
    for (std::size_t m = 0; m < n; ++m) {
      const auto k = static_cast<std::size_t>(beta) * m + static_cast<std::size_t>(gamma);
      if (lhs.values[m] > static_cast<std::uint64_t>(alpha) * at(rhs, k)) return false;
    }
    return true;
  };
  for (int beta = 1; beta <= 8; ++beta) {
    for (int gamma = 0; gamma <= 8; ++gamma) {
      for (int alpha = 1; alpha <= 8; ++alpha) {
        if (holds(a, b, alpha, beta, gamma) && holds(b, a, alpha, beta, gamma)) {
          verdict.equivalent = true;
          verdict.alpha = alpha;
          verdict.beta = beta;
          verdict.gamma = gamma;
          return verdict;
        }
      }
    }
  }
  return verdict;
}

}  // namespace coarse
