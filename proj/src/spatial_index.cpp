#include "coarse/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coarse/error.hpp"

namespace coarse {

std::size_t SpatialIndex::KeyHash::operator()(const std::vector<std::int64_t>& key) const noexcept {
  std::size_t seed = key.size();
  for (auto v : key) seed ^= std::hash<std::int64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  return seed;
}

SpatialIndex::SpatialIndex(SpaceModel space, double cell) : space_(std::move(space)), cell_(cell) {
  if (!(cell_ > 0.0)) throw DomainError("spatial index cell size must be positive");
}

std::vector<std::int64_t> SpatialIndex::bucket_key(const Point& p) const {
  std::vector<std::int64_t> key;
  if (const auto* e = std::get_if<EuclideanPoint>(&p)) {
    for (double v : e->x) key.push_back(static_cast<std::int64_t>(std::floor(v / cell_)));
  } else {
    const auto& h = std::get<HalfPlanePoint>(p);
    const auto row = static_cast<std::int64_t>(std::floor(std::log(h.a) / cell_));
    const double width = cell_ * std::exp(static_cast<double>(row) * cell_);
    key = {row, static_cast<std::int64_t>(std::floor(h.u / width))};
  }
  return key;
}

std::size_t SpatialIndex::insert(Point p) {
  const std::size_t idx = points_.size();
  if (space_.is_discrete()) {
    exact_.emplace(p, idx);
  } else {
    exact_.emplace(p, idx);
    buckets_[bucket_key(p)].push_back(idx);
  }
  points_.push_back(std::move(p));
  return idx;
}

std::optional<std::size_t> SpatialIndex::find(const Point& p) const {
  auto it = exact_.find(p);
  if (it == exact_.end()) return std::nullopt;
  return it->second;
}

const std::vector<Point>& SpatialIndex::offsets(int radius) const {
  std::lock_guard lock(offsets_mu_);
  auto it = offsets_.find(radius);
  if (it == offsets_.end()) it = offsets_.emplace(radius, word_ball(space_, radius)).first;
  return it->second;
}

void SpatialIndex::scan_bucket(const std::vector<std::int64_t>& key, const Point& p, double radius,
                               std::vector<std::size_t>& out) const {
  auto it = buckets_.find(key);
  if (it == buckets_.end()) return;
  for (auto idx : it->second) {
    if (distance(space_, p, points_[idx]) <= radius + kTolerance) out.push_back(idx);
  }
}

std::vector<std::size_t> SpatialIndex::within(const Point& p, double radius) const {
  std::vector<std::size_t> out;
  if (radius < -kTolerance || points_.empty()) return out;
  switch (space_.kind()) {
    case ModelKind::zd:
    case ModelKind::free_group:
    case ModelKind::heisenberg: {
      const auto r = static_cast<int>(std::floor(radius + kTolerance));
      for (const auto& s : offsets(r)) {
        if (auto it = exact_.find(multiply(space_, p, s)); it != exact_.end()) out.push_back(it->second);
      }
      break;
    }
    case ModelKind::euclidean: {
      const auto& x = std::get<EuclideanPoint>(p).x;
      std::vector<std::int64_t> lo(x.size()), hi(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        lo[i] = static_cast<std::int64_t>(std::floor((x[i] - radius) / cell_));
        hi[i] = static_cast<std::int64_t>(std::floor((x[i] + radius) / cell_));
      }
      std::vector<std::int64_t> key = lo;
      while (true) {
        scan_bucket(key, p, radius, out);
        std::size_t i = key.size();
        bool done = true;
        while (i > 0) {
          --i;
          if (++key[i] <= hi[i]) {
            done = false;
            break;
          }
          key[i] = lo[i];
        }
        if (done) break;
      }
      break;
    }
    case ModelKind::hyperbolic: {
      const auto& h = std::get<HalfPlanePoint>(p);
      const double log_a = std::log(h.a);
      const auto row_lo = static_cast<std::int64_t>(std::floor((log_a - radius) / cell_));
      const auto row_hi = static_cast<std::int64_t>(std::floor((log_a + radius) / cell_));
      // cosh d = 1 + (du^2 + da^2) / (2ab) bounds du^2 <= 2ab(cosh R - 1).
      const double k = 2.0 * (std::cosh(radius) - 1.0);
      for (auto row = row_lo; row <= row_hi; ++row) {
        const double b_max = std::min(h.a * std::exp(radius), std::exp(static_cast<double>(row + 1) * cell_));
        const double du = std::sqrt(h.a * b_max * k) * (1.0 + 1e-9) + 1e-12;
        const double width = cell_ * std::exp(static_cast<double>(row) * cell_);
        const auto col_lo = static_cast<std::int64_t>(std::floor((h.u - du) / width));
        const auto col_hi = static_cast<std::int64_t>(std::floor((h.u + du) / width));
        for (auto col = col_lo; col <= col_hi; ++col) scan_bucket({row, col}, p, radius, out);
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> SpatialIndex::nearest(const Point& p, double max_radius) const {
  if (points_.empty()) return std::nullopt;
  auto pick = [&](const std::vector<std::size_t>& candidates) -> std::optional<std::size_t> {
    std::optional<std::size_t> best;
    double best_d = std::numeric_limits<double>::infinity();
    for (auto idx : candidates) {
      const double d = distance(space_, p, points_[idx]);
      if (d < best_d - kTolerance ||
          (std::abs(d - best_d) <= kTolerance && canonical_less(points_[idx], points_[*best]))) {
        best = idx;
        best_d = d;
      }
    }
    return best;
  };
  if (space_.is_discrete()) {
    const auto cap = static_cast<int>(std::floor(max_radius + kTolerance));
    for (int r = 0; r <= cap; ++r) {
      auto candidates = within(p, r);
      if (!candidates.empty()) return pick(candidates);
    }
    return std::nullopt;
  }
  double r = std::min(cell_, max_radius);
  while (true) {
    auto candidates = within(p, r);
    if (!candidates.empty()) return pick(candidates);
    if (r >= max_radius) return std::nullopt;
    r = std::min(2.0 * r, max_radius);
  }
}

}  // namespace coarse
