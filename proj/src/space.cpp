#include "coarse/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_set>

#include "coarse/error.hpp"

namespace coarse {
namespace detail {

HeisenbergPoint heisenberg_multiply(const HeisenbergPoint& a, const HeisenbergPoint& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z + a.x * b.y};
}

HeisenbergPoint heisenberg_inverse(const HeisenbergPoint& a) {
  return {-a.x, -a.y, -a.z + a.x * a.y};
}

double hyperbolic_distance(const HalfPlanePoint& x, const HalfPlanePoint& y) {
  const double du = x.u - y.u;
  const double near = std::hypot(du, x.a - y.a);
  const double far = std::hypot(du, x.a + y.a);
  const double d = 2.0 * std::log((far + near) / (2.0 * std::sqrt(x.a * y.a)));
  return d > 0.0 ? d : 0.0;
}

namespace {
const HeisenbergPoint kHeisenbergGenerators[] = {{-1, 0, 0}, {0, -1, 0}, {0, 1, 0}, {1, 0, 0}};
}

HeisenbergBallCache::HeisenbergBallCache(int cap_radius) : cap_(cap_radius) {
  layers_.push_back({HeisenbergPoint{}});
  length_.emplace(HeisenbergPoint{}, 0);
}

void HeisenbergBallCache::grow_locked(int radius) {
  while (radius_locked() < radius) {
    const auto depth = static_cast<std::int64_t>(layers_.size());
    std::vector<HeisenbergPoint> next;
    for (const auto& h : layers_.back()) {
      for (const auto& s : kHeisenbergGenerators) {
        auto q = heisenberg_multiply(h, s);
        if (length_.emplace(q, depth).second) next.push_back(q);
      }
    }
    layers_.push_back(std::move(next));
  }
}

std::int64_t HeisenbergBallCache::word_length(const HeisenbergPoint& g) {
  std::lock_guard lock(mu_);
  if (auto it = length_.find(g); it != length_.end()) return it->second;
  while (radius_locked() < cap_) {
    grow_locked(radius_locked() + 1);
    if (auto it = length_.find(g); it != length_.end()) return it->second;
  }
  // |g| > cap: any geodesic from g to e crosses the sphere of radius cap, so
  // the first BFS layer k from g with best <= k + cap already holds the answer.
  const std::int64_t memo_radius = radius_locked();
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::unordered_set<HeisenbergPoint, PointHash> seen{g};
  std::vector<HeisenbergPoint> frontier{g};
  for (std::int64_t k = 0;; ++k) {
    for (const auto& h : frontier) {
      if (auto it = length_.find(h); it != length_.end()) best = std::min(best, k + it->second);
    }
    if (best <= k + memo_radius) return best;
    std::vector<HeisenbergPoint> next;
    for (const auto& h : frontier) {
      for (const auto& s : kHeisenbergGenerators) {
        auto q = heisenberg_multiply(h, s);
        if (seen.insert(q).second) next.push_back(q);
      }
    }
    frontier = std::move(next);
  }
}

std::vector<HeisenbergPoint> HeisenbergBallCache::ball(int radius) {
  std::lock_guard lock(mu_);
  grow_locked(radius);
  std::vector<HeisenbergPoint> out;
  for (int r = 0; r <= radius; ++r) out.insert(out.end(), layers_[r].begin(), layers_[r].end());
  return out;
}

}  // namespace detail

namespace {

std::string model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::zd: return "zd";
    case ModelKind::free_group: return "free";
    case ModelKind::heisenberg: return "heisenberg";
    case ModelKind::euclidean: return "euclidean";
    case ModelKind::hyperbolic: return "h2";
  }
  return "?";
}

template <class T>
const T& as(const SpaceModel& space, const Point& p) {
  const T* v = std::get_if<T>(&p);
  if (v == nullptr) {
    throw ModelMismatchError("point " + to_string(p) + " does not belong to model " + space.id());
  }
  return *v;
}

std::vector<std::int32_t> reduce_concat(std::vector<std::int32_t> word, const std::vector<std::int32_t>& tail) {
  for (auto letter : tail) {
    if (!word.empty() && word.back() == -letter) {
      word.pop_back();
    } else {
      word.push_back(letter);
    }
  }
  return word;
}

int parse_int(std::string_view text, std::string_view what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(std::string(text), &used);
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw SchemaError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  }
}

}  // namespace

SpaceModel::SpaceModel(ModelKind kind, int dim, bool additive)
    : kind_(kind), dim_(dim), additive_(additive) {
  if (kind == ModelKind::heisenberg) cache_ = std::make_shared<detail::HeisenbergBallCache>();
}

SpaceModel SpaceModel::zd(int dim) {
  if (dim < 1) throw SchemaError("zd dimension must be >= 1");
  return SpaceModel(ModelKind::zd, dim, true);
}

SpaceModel SpaceModel::free_group(int rank) {
  if (rank < 1) throw SchemaError("free group rank must be >= 1");
  return SpaceModel(ModelKind::free_group, rank, true);
}

SpaceModel SpaceModel::heisenberg() { return SpaceModel(ModelKind::heisenberg, 3, true); }

SpaceModel SpaceModel::euclidean(int dim, bool additive_group) {
  if (dim < 1) throw SchemaError("euclidean dimension must be >= 1");
  return SpaceModel(ModelKind::euclidean, dim, additive_group);
}

SpaceModel SpaceModel::hyperbolic() { return SpaceModel(ModelKind::hyperbolic, 2, true); }

SpaceModel SpaceModel::parse(std::string_view id) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto colon = id.find(':', start);
    parts.push_back(id.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  const auto name = parts[0];
  if (name == "h2" || name == "hyperbolic" || name == "affine") {
    if (parts.size() != 1) throw SchemaError("h2 takes no parameters");
    return hyperbolic();
  }
  if (name == "heisenberg") {
    if (parts.size() != 1) throw SchemaError("heisenberg takes no parameters");
    return heisenberg();
  }
  if (parts.size() < 2) throw SchemaError("model '" + std::string(id) + "' needs a dimension, e.g. zd:2");
  const int n = parse_int(parts[1], "model dimension");
  if (name == "zd" && parts.size() == 2) return zd(n);
  if (name == "free" && parts.size() == 2) return free_group(n);
  if (name == "euclidean") {
    if (parts.size() == 2) return euclidean(n);
    if (parts.size() == 3 && parts[2] == "group") return euclidean(n, true);
  }
  throw SchemaError("unknown space model '" + std::string(id) + "'");
}

std::string SpaceModel::id() const {
  switch (kind_) {
    case ModelKind::zd: return "zd:" + std::to_string(dim_);
    case ModelKind::free_group: return "free:" + std::to_string(dim_);
    case ModelKind::heisenberg: return "heisenberg";
    case ModelKind::euclidean: return "euclidean:" + std::to_string(dim_) + (additive_ ? ":group" : "");
    case ModelKind::hyperbolic: return "h2";
  }
  return model_name(kind_);
}

double SpaceModel::coarse_constant() const noexcept {
  return (kind_ == ModelKind::zd || kind_ == ModelKind::heisenberg) ? 1.0 : 0.0;
}

bool SpaceModel::is_discrete() const noexcept {
  return kind_ == ModelKind::zd || kind_ == ModelKind::free_group || kind_ == ModelKind::heisenberg;
}

bool SpaceModel::is_group() const noexcept { return kind_ != ModelKind::euclidean || additive_; }

Point SpaceModel::base_point() const {
  switch (kind_) {
    case ModelKind::zd: return ZdPoint{std::vector<std::int64_t>(dim_, 0)};
    case ModelKind::free_group: return Word{};
    case ModelKind::heisenberg: return HeisenbergPoint{};
    case ModelKind::euclidean: return EuclideanPoint{std::vector<double>(dim_, 0.0)};
    case ModelKind::hyperbolic: return HalfPlanePoint{0.0, 1.0};
  }
  return Word{};
}

std::vector<Point> SpaceModel::generators() const {
  std::vector<Point> gens;
  switch (kind_) {
    case ModelKind::zd:
      for (int i = 0; i < dim_; ++i) {
        for (int sign : {-1, 1}) {
          ZdPoint g{std::vector<std::int64_t>(dim_, 0)};
          g.x[i] = sign;
          gens.emplace_back(std::move(g));
        }
      }
      break;
    case ModelKind::free_group:
      for (int i = 1; i <= dim_; ++i) {
        gens.emplace_back(Word{{i}});
        gens.emplace_back(Word{{-i}});
      }
      break;
    case ModelKind::heisenberg:
      gens = {HeisenbergPoint{-1, 0, 0}, HeisenbergPoint{0, -1, 0}, HeisenbergPoint{0, 1, 0},
              HeisenbergPoint{1, 0, 0}};
      break;
    default:
      throw UnsupportedOperationError("model " + id() + " has no finite generating set");
  }
  std::sort(gens.begin(), gens.end(), CanonicalLess{});
  return gens;
}

detail::HeisenbergBallCache& SpaceModel::heisenberg_cache() const {
  if (!cache_) throw UnsupportedOperationError("model " + id() + " has no Heisenberg cache");
  return *cache_;
}

void validate(const SpaceModel& space, const Point& p) {
  switch (space.kind()) {
    case ModelKind::zd:
      if (as<ZdPoint>(space, p).x.size() != static_cast<std::size_t>(space.dim())) {
        throw ModelMismatchError("point " + to_string(p) + " has wrong dimension for " + space.id());
      }
      return;
    case ModelKind::heisenberg:
      as<HeisenbergPoint>(space, p);
      return;
    case ModelKind::free_group: {
      const auto& w = as<Word>(space, p).letters;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 0 || std::abs(w[i]) > space.dim()) {
          throw ModelMismatchError("letter out of range in " + to_string(p) + " for " + space.id());
        }
        if (i > 0 && w[i] == -w[i - 1]) throw DomainError("word " + to_string(p) + " is not reduced");
      }
      return;
    }
    case ModelKind::euclidean: {
      const auto& x = as<EuclideanPoint>(space, p).x;
      if (x.size() != static_cast<std::size_t>(space.dim())) {
        throw ModelMismatchError("point " + to_string(p) + " has wrong dimension for " + space.id());
      }
      for (double v : x) {
        if (!std::isfinite(v)) throw DomainError("non-finite coordinate in " + to_string(p));
      }
      return;
    }
    case ModelKind::hyperbolic: {
      const auto& h = as<HalfPlanePoint>(space, p);
      if (!std::isfinite(h.u) || !std::isfinite(h.a) || !(h.a > 0.0)) {
        throw DomainError("half-plane point " + to_string(p) + " needs finite u and a > 0");
      }
      return;
    }
  }
}

double distance(const SpaceModel& space, const Point& x, const Point& y) {
  switch (space.kind()) {
    case ModelKind::zd: {
      const auto& a = as<ZdPoint>(space, x).x;
      const auto& b = as<ZdPoint>(space, y).x;
      if (a.size() != b.size()) throw ModelMismatchError("zd points of different dimension");
      std::int64_t sum = 0;
      for (std::size_t i = 0; i < a.size(); ++i) sum += std::llabs(a[i] - b[i]);
      return static_cast<double>(sum);
    }
    case ModelKind::free_group: {
      const auto& a = as<Word>(space, x).letters;
      const auto& b = as<Word>(space, y).letters;
      std::size_t common = 0;
      while (common < a.size() && common < b.size() && a[common] == b[common]) ++common;
      return static_cast<double>(a.size() + b.size() - 2 * common);
    }
    case ModelKind::heisenberg: {
      const auto& a = as<HeisenbergPoint>(space, x);
      const auto& b = as<HeisenbergPoint>(space, y);
      auto g = detail::heisenberg_multiply(detail::heisenberg_inverse(a), b);
      return static_cast<double>(space.heisenberg_cache().word_length(g));
    }
    case ModelKind::euclidean: {
      const auto& a = as<EuclideanPoint>(space, x).x;
      const auto& b = as<EuclideanPoint>(space, y).x;
      if (a.size() != b.size()) throw ModelMismatchError("euclidean points of different dimension");
      double sum = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
      return std::sqrt(sum);
    }
    case ModelKind::hyperbolic: {
      const auto& a = as<HalfPlanePoint>(space, x);
      const auto& b = as<HalfPlanePoint>(space, y);
      if (!(a.a > 0.0) || !(b.a > 0.0)) throw DomainError("half-plane points need a > 0");
      return detail::hyperbolic_distance(a, b);
    }
  }
  return 0.0;
}

Point identity(const SpaceModel& space) {
  if (!space.is_group()) {
    throw UnsupportedOperationError("model " + space.id() + " has no group structure (use euclidean:d:group)");
  }
  return space.base_point();
}

Point multiply(const SpaceModel& space, const Point& x, const Point& y) {
  switch (space.kind()) {
    case ModelKind::zd: {
      auto out = as<ZdPoint>(space, x);
      const auto& b = as<ZdPoint>(space, y).x;
      if (out.x.size() != b.size()) throw ModelMismatchError("zd points of different dimension");
      for (std::size_t i = 0; i < b.size(); ++i) out.x[i] += b[i];
      return out;
    }
    case ModelKind::free_group:
      return Word{reduce_concat(as<Word>(space, x).letters, as<Word>(space, y).letters)};
    case ModelKind::heisenberg:
      return detail::heisenberg_multiply(as<HeisenbergPoint>(space, x), as<HeisenbergPoint>(space, y));
    case ModelKind::euclidean: {
      if (!space.additive_group()) {
        throw UnsupportedOperationError("model " + space.id() + " has no group structure (use euclidean:d:group)");
      }
      auto out = as<EuclideanPoint>(space, x);
      const auto& b = as<EuclideanPoint>(space, y).x;
      for (std::size_t i = 0; i < b.size(); ++i) out.x[i] += b[i];
      return out;
    }
    case ModelKind::hyperbolic: {
      const auto& g = as<HalfPlanePoint>(space, x);
      const auto& h = as<HalfPlanePoint>(space, y);
      return HalfPlanePoint{g.a * h.u + g.u, g.a * h.a};
    }
  }
  return x;
}

Point inverse(const SpaceModel& space, const Point& x) {
  switch (space.kind()) {
    case ModelKind::zd: {
      auto out = as<ZdPoint>(space, x);
      for (auto& c : out.x) c = -c;
      return out;
    }
    case ModelKind::free_group: {
      auto letters = as<Word>(space, x).letters;
      std::reverse(letters.begin(), letters.end());
      for (auto& l : letters) l = -l;
      return Word{std::move(letters)};
    }
    case ModelKind::heisenberg:
      return detail::heisenberg_inverse(as<HeisenbergPoint>(space, x));
    case ModelKind::euclidean: {
      if (!space.additive_group()) {
        throw UnsupportedOperationError("model " + space.id() + " has no group structure (use euclidean:d:group)");
      }
      auto out = as<EuclideanPoint>(space, x);
      for (auto& c : out.x) c = -c;
      return out;
    }
    case ModelKind::hyperbolic: {
      const auto& g = as<HalfPlanePoint>(space, x);
      return HalfPlanePoint{-g.u / g.a, 1.0 / g.a};
    }
  }
  return x;
}

double word_length(const SpaceModel& space, const Point& g) { return distance(space, identity(space), g); }

std::vector<Point> word_ball(const SpaceModel& space, int radius) {
  std::vector<Point> out;
  if (radius < 0) return out;
  switch (space.kind()) {
    case ModelKind::zd: {
      const int d = space.dim();
      std::vector<std::int64_t> cur(d, 0);
      // Lexicographic recursion keeps the output sorted.
      auto rec = [&](auto&& self, int i, std::int64_t budget) -> void {
        if (i == d) {
          out.emplace_back(ZdPoint{cur});
          return;
        }
        for (std::int64_t v = -budget; v <= budget; ++v) {
          cur[i] = v;
          self(self, i + 1, budget - std::llabs(v));
        }
        cur[i] = 0;
      };
      rec(rec, 0, radius);
      return out;
    }
    case ModelKind::free_group: {
      std::vector<std::vector<std::int32_t>> layer{{}};
      out.emplace_back(Word{});
      for (int r = 1; r <= radius; ++r) {
        std::vector<std::vector<std::int32_t>> next;
        for (const auto& w : layer) {
          for (int g = 1; g <= space.dim(); ++g) {
            for (int letter : {g, -g}) {
              if (!w.empty() && w.back() == -letter) continue;
              auto v = w;
              v.push_back(letter);
              next.push_back(std::move(v));
            }
          }
        }
        for (const auto& w : next) out.emplace_back(Word{w});
        layer = std::move(next);
      }
      break;
    }
    case ModelKind::heisenberg:
      for (const auto& h : space.heisenberg_cache().ball(radius)) out.emplace_back(h);
      break;
    default:
      throw UnsupportedOperationError("word balls are only defined for discrete group models, not " + space.id());
  }
  std::sort(out.begin(), out.end(), CanonicalLess{});
  return out;
}

namespace {

SampledPath integer_path(std::vector<Point> points) {
  SampledPath path;
  path.params.resize(points.size());
  std::iota(path.params.begin(), path.params.end(), 0.0);
  path.points = std::move(points);
  return path;
}

std::vector<double> uniform_params(double length) {
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(length - kTolerance)));
  std::vector<double> t(n + 1);
  for (std::size_t k = 0; k <= n; ++k) t[k] = length * static_cast<double>(k) / static_cast<double>(n);
  t[n] = length;
  return t;
}

SampledPath zd_staircase(const ZdPoint& from, const ZdPoint& to) {
  const std::size_t d = from.x.size();
  std::vector<std::int64_t> total(d), remaining(d);
  for (std::size_t i = 0; i < d; ++i) total[i] = remaining[i] = to.x[i] - from.x[i];
  std::vector<Point> pts{from};
  ZdPoint cur = from;
  while (true) {
    // Step along the axis with the largest remaining fraction; stays near the segment.
    std::size_t best = d;
    for (std::size_t i = 0; i < d; ++i) {
      if (remaining[i] == 0) continue;
      if (best == d ||
          std::llabs(remaining[i]) * std::llabs(total[best]) > std::llabs(remaining[best]) * std::llabs(total[i])) {
        best = i;
      }
    }
    if (best == d) break;
    const std::int64_t step = remaining[best] > 0 ? 1 : -1;
    cur.x[best] += step;
    remaining[best] -= step;
    pts.emplace_back(cur);
  }
  return integer_path(std::move(pts));
}

SampledPath hyperbolic_geodesic(const HalfPlanePoint& x, const HalfPlanePoint& y) {
  const double length = detail::hyperbolic_distance(x, y);
  SampledPath path;
  if (length <= kTolerance) {
    path.params = {0.0};
    path.points = {x};
    return path;
  }
  path.params = uniform_params(length);
  const double scale = std::max({std::abs(x.u), std::abs(y.u), x.a, y.a});
  if (std::abs(x.u - y.u) <= 1e-14 * scale) {
    const double sign = y.a > x.a ? 1.0 : -1.0;
    for (double t : path.params) path.points.emplace_back(HalfPlanePoint{x.u, x.a * std::exp(sign * t)});
  } else {
    const double center = ((y.u * y.u + y.a * y.a) - (x.u * x.u + x.a * x.a)) / (2.0 * (y.u - x.u));
    const double radius = std::hypot(x.u - center, x.a);
    const double s0 = std::log(std::tan(std::atan2(x.a, x.u - center) / 2.0));
    const double s1 = std::log(std::tan(std::atan2(y.a, y.u - center) / 2.0));
    const double sign = s1 > s0 ? 1.0 : -1.0;
    for (double t : path.params) {
      const double theta = 2.0 * std::atan(std::exp(s0 + sign * t));
      path.points.emplace_back(HalfPlanePoint{center + radius * std::cos(theta), radius * std::sin(theta)});
    }
  }
  path.points.front() = x;
  path.points.back() = y;
  return path;
}

}  // namespace

SampledPath coarse_geodesic(const SpaceModel& space, const Point& x, const Point& y) {
  validate(space, x);
  validate(space, y);
  switch (space.kind()) {
    case ModelKind::zd:
      return zd_staircase(std::get<ZdPoint>(x), std::get<ZdPoint>(y));
    case ModelKind::free_group: {
      const auto g = std::get<Word>(inverse(space, x)).letters;
      const auto w = reduce_concat(g, std::get<Word>(y).letters);
      std::vector<Point> pts{x};
      for (auto letter : w) pts.push_back(multiply(space, pts.back(), Word{{letter}}));
      return integer_path(std::move(pts));
    }
    case ModelKind::heisenberg: {
      auto& cache = space.heisenberg_cache();
      const auto& hx = std::get<HeisenbergPoint>(x);
      auto cur = detail::heisenberg_multiply(detail::heisenberg_inverse(hx), std::get<HeisenbergPoint>(y));
      std::vector<HeisenbergPoint> chain{cur};
      for (auto len = cache.word_length(cur); len > 0; --len) {
        for (const auto& s : space.generators()) {
          auto q = detail::heisenberg_multiply(cur, std::get<HeisenbergPoint>(s));
          if (cache.word_length(q) == len - 1) {
            cur = q;
            break;
          }
        }
        chain.push_back(cur);
      }
      std::vector<Point> pts;
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) pts.emplace_back(detail::heisenberg_multiply(hx, *it));
      return integer_path(std::move(pts));
    }
    case ModelKind::euclidean: {
      const auto& a = std::get<EuclideanPoint>(x).x;
      const auto& b = std::get<EuclideanPoint>(y).x;
      const double length = distance(space, x, y);
      SampledPath path;
      path.params = length <= kTolerance ? std::vector<double>{0.0} : uniform_params(length);
      for (double t : path.params) {
        EuclideanPoint p{a};
        const double s = length <= kTolerance ? 0.0 : t / length;
        for (std::size_t i = 0; i < a.size(); ++i) p.x[i] = a[i] + s * (b[i] - a[i]);
        path.points.emplace_back(std::move(p));
      }
      path.points.back() = y;
      return path;
    }
    case ModelKind::hyperbolic:
      return hyperbolic_geodesic(std::get<HalfPlanePoint>(x), std::get<HalfPlanePoint>(y));
  }
  return {};
}

}  // namespace coarse
