#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "coarse/point.hpp"

namespace coarse {

enum class ModelKind { zd, free_group, heisenberg, euclidean, hyperbolic };

/// Absolute tolerance for every real-valued metric comparison.
inline constexpr double kTolerance = 1e-9;

namespace detail {
class HeisenbergBallCache;
}

/// A pointed metric-space model. Immutable after construction; copies share
/// the (internally synchronized) word-metric cache, so a SpaceModel can be
/// read from several threads at once.
class SpaceModel {
 public:
  static SpaceModel zd(int dim);
  static SpaceModel free_group(int rank);
  static SpaceModel heisenberg();
  static SpaceModel euclidean(int dim, bool additive_group = false);
  static SpaceModel hyperbolic();

  /// Parses "zd:2", "free:2", "heisenberg", "euclidean:2", "euclidean:2:group", "h2".
  static SpaceModel parse(std::string_view id);

  ModelKind kind() const noexcept { return kind_; }
  /// Dimension for zd/euclidean, rank for free groups, 3 for heisenberg, 2 for h2.
  int dim() const noexcept { return dim_; }
  std::string id() const;

  /// c such that the model is c-coarsely geodesic with the sampler below.
  double coarse_constant() const noexcept;
  bool is_discrete() const noexcept;
  bool is_group() const noexcept;
  bool additive_group() const noexcept { return additive_; }
  Point base_point() const;

  /// Symmetric generating list (generators, then inverses, in canonical
  /// order). Discrete group models only.
  std::vector<Point> generators() const;

  bool operator==(const SpaceModel& other) const noexcept {
    return kind_ == other.kind_ && dim_ == other.dim_ && additive_ == other.additive_;
  }

  detail::HeisenbergBallCache& heisenberg_cache() const;

 private:
  SpaceModel(ModelKind kind, int dim, bool additive);

  ModelKind kind_;
  int dim_;
  bool additive_;
  std::shared_ptr<detail::HeisenbergBallCache> cache_;
};

/// Throws ModelMismatchError if `p` is not a point of `space`, DomainError if
/// it violates the model's invariants (a <= 0, unreduced word, ...).
void validate(const SpaceModel& space, const Point& p);

double distance(const SpaceModel& space, const Point& x, const Point& y);

Point identity(const SpaceModel& space);
Point multiply(const SpaceModel& space, const Point& x, const Point& y);
Point inverse(const SpaceModel& space, const Point& x);

/// distance(identity, g). Integer-valued for discrete group models.
double word_length(const SpaceModel& space, const Point& g);

/// The word ball N_m(e) of a discrete group model in canonical order.
std::vector<Point> word_ball(const SpaceModel& space, int radius);

/// f sampled at parameters t_0 = 0 < t_1 < ... < t_n = d(x, y), step <= 1.
struct SampledPath {
  std::vector<double> params;
  std::vector<Point> points;
};

/// A c-coarse geodesic from x to y with c = space.coarse_constant().
SampledPath coarse_geodesic(const SpaceModel& space, const Point& x, const Point& y);

namespace detail {

/// Lazily grown word ball of the Heisenberg group, memoizing word lengths.
/// Lengths beyond the cap radius are resolved by a breadth-first search from
/// the far end that stops as soon as it meets the memoized ball.
class HeisenbergBallCache {
 public:
  explicit HeisenbergBallCache(int cap_radius = 32);
  std::int64_t word_length(const HeisenbergPoint& g);
  /// Elements of the radius-m ball in breadth-first order.
  std::vector<HeisenbergPoint> ball(int radius);

 private:
  void grow_locked(int radius);
  int radius_locked() const { return static_cast<int>(layers_.size()) - 1; }

  std::mutex mu_;
  int cap_;
  std::unordered_map<HeisenbergPoint, std::int64_t, PointHash> length_;
  std::vector<std::vector<HeisenbergPoint>> layers_;
};

HeisenbergPoint heisenberg_multiply(const HeisenbergPoint& a, const HeisenbergPoint& b);
HeisenbergPoint heisenberg_inverse(const HeisenbergPoint& a);

/// Hyperbolic distance via 2 log((|x - conj y| + |x - y|) / (2 sqrt(a b))),
/// which avoids the cancellation in |x - conj y| - |x - y|.
double hyperbolic_distance(const HalfPlanePoint& x, const HalfPlanePoint& y);

}  // namespace detail
}  // namespace coarse
