#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "coarse/point.hpp"
#include "coarse/space.hpp"

namespace coarse {

/// Radius queries over a growing point set. Discrete group models look up
/// p * s for s in a cached word ball; euclidean and half-plane models use
/// bucket grids (hyperbolic buckets are rows in log a, columns scaled by a).
class SpatialIndex {
 public:
  explicit SpatialIndex(SpaceModel space, double cell = 1.0);

  SpatialIndex(const SpatialIndex&) = delete;
  SpatialIndex& operator=(const SpatialIndex&) = delete;

  std::size_t insert(Point p);
  std::size_t size() const noexcept { return points_.size(); }
  const Point& point(std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const noexcept { return points_; }
  const SpaceModel& space() const noexcept { return space_; }

  std::optional<std::size_t> find(const Point& p) const;

  /// Indices of stored points with d(p, q) <= radius (+ tolerance), ascending.
  std::vector<std::size_t> within(const Point& p, double radius) const;

  /// Nearest stored point, canonical order breaking ties; nullopt if none lies
  /// within max_radius.
  std::optional<std::size_t> nearest(const Point& p, double max_radius) const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& key) const noexcept;
  };

  std::vector<std::int64_t> bucket_key(const Point& p) const;
  const std::vector<Point>& offsets(int radius) const;
  void scan_bucket(const std::vector<std::int64_t>& key, const Point& p, double radius,
                   std::vector<std::size_t>& out) const;

  SpaceModel space_;
  double cell_;
  std::vector<Point> points_;
  std::unordered_map<Point, std::size_t, PointHash> exact_;
  std::unordered_map<std::vector<std::int64_t>, std::vector<std::size_t>, KeyHash> buckets_;
  mutable std::mutex offsets_mu_;
  mutable std::map<int, std::vector<Point>> offsets_;
};

}  // namespace coarse
