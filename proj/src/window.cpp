#include "coarse/window.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "coarse/error.hpp"

namespace coarse {
namespace {

double parse_real(std::string_view text) {
  try {
    std::size_t used = 0;
    double v = std::stod(std::string(text), &used);
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw SchemaError("invalid number '" + std::string(text) + "' in window spec");
  }
}

std::pair<double, double> parse_range(std::string_view text) {
  auto dots = text.find("..");
  if (dots == std::string_view::npos) throw SchemaError("expected LO..HI, got '" + std::string(text) + "'");
  return {parse_real(text.substr(0, dots)), parse_real(text.substr(dots + 2))};
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string format_real(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

std::vector<double> grid_axis(double lo, double hi, double pitch) {
  std::vector<double> values;
  if (!(pitch > 0.0) || lo > hi) return values;
  const auto n = static_cast<long>(std::floor((hi - lo) / pitch + kTolerance));
  for (long k = 0; k <= n; ++k) values.push_back(lo + static_cast<double>(k) * pitch);
  return values;
}

// Point of the half-plane at distance rho from i in direction theta, through
// the disk model: z = tanh(rho/2) e^{i theta}.
HalfPlanePoint disk_point(double rho, double theta) {
  const double t = std::tanh(rho / 2.0);
  const double x = t * std::cos(theta), y = t * std::sin(theta);
  const double den = (1.0 - x) * (1.0 - x) + y * y;
  return HalfPlanePoint{-2.0 * y / den, (1.0 - x * x - y * y) / den};
}

// Largest |u| with d((u, a), i) <= radius; negative when the level misses the ball.
double ball_half_width(double a, double radius) {
  const double w2 = 2.0 * a * (std::cosh(radius) - 1.0) - (a - 1.0) * (a - 1.0);
  return w2 < 0.0 ? -1.0 : std::sqrt(w2);
}

constexpr double kBallPitch = 0.25;

}  // namespace

Window parse_window(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw SchemaError("window spec '" + std::string(spec) + "' has no kind prefix");
  const auto kind = spec.substr(0, colon);
  auto parts = split(spec.substr(colon + 1), ':');
  if (kind == "ball") {
    if (parts.size() != 1) throw SchemaError("ball window takes one radius");
    const double r = parse_real(parts[0]);
    if (r != std::floor(r)) throw SchemaError("ball radius must be an integer");
    return BallWindow{static_cast<int>(r)};
  }
  if (kind == "box" || kind == "h2box") {
    if (parts.empty() || parts.size() > 2) throw SchemaError("malformed box window '" + std::string(spec) + "'");
    std::vector<double> lo, hi;
    for (auto r : split(parts[0], ',')) {
      auto [a, b] = parse_range(r);
      lo.push_back(a);
      hi.push_back(b);
    }
    const double pitch = parts.size() == 2 ? parse_real(parts[1]) : (kind == "box" ? 1.0 : 0.25);
    if (!(pitch > 0.0)) throw SchemaError("window pitch must be positive");
    if (kind == "box") return BoxWindow{lo, hi, pitch};
    if (lo.size() != 2) throw SchemaError("h2box needs a u-range and a log a-range");
    return HalfPlaneWindow{lo[0], hi[0], lo[1], hi[1], pitch};
  }
  throw SchemaError("unknown window kind '" + std::string(kind) + "'");
}

std::string to_string(const Window& window) {
  return std::visit(
      [](const auto& w) -> std::string {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, BallWindow>) {
          return "ball:" + std::to_string(w.radius);
        } else if constexpr (std::is_same_v<T, BoxWindow>) {
          std::string out = "box:";
          for (std::size_t i = 0; i < w.lo.size(); ++i) {
            out += (i ? "," : "") + format_real(w.lo[i]) + ".." + format_real(w.hi[i]);
          }
          return out + ":" + format_real(w.pitch);
        } else {
          return "h2box:" + format_real(w.u_lo) + ".." + format_real(w.u_hi) + "," + format_real(w.log_a_lo) + ".." +
                 format_real(w.log_a_hi) + ":" + format_real(w.pitch);
        }
      },
      window);
}

void check_window(const SpaceModel& space, const Window& window) {
  const bool ok = std::visit(
      [&](const auto& w) {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, BallWindow>) {
          return space.is_discrete() || space.kind() == ModelKind::hyperbolic;
        } else if constexpr (std::is_same_v<T, BoxWindow>) {
          return space.kind() == ModelKind::euclidean && w.lo.size() == static_cast<std::size_t>(space.dim()) &&
                 w.hi.size() == w.lo.size();
        } else {
          return space.kind() == ModelKind::hyperbolic;
        }
      },
      window);
  if (!ok) throw SchemaError("window " + to_string(window) + " does not fit model " + space.id());
}

std::vector<Point> enumerate_window(const SpaceModel& space, const Window& window) {
  check_window(space, window);
  std::vector<Point> out;
  if (const auto* ball = std::get_if<BallWindow>(&window)) {
    if (space.is_discrete()) return word_ball(space, ball->radius);
    const double R = ball->radius;
    const auto j_max = static_cast<long>(std::floor(R / kBallPitch + kTolerance));
    for (long j = -j_max; j <= j_max; ++j) {
      const double a = std::exp(static_cast<double>(j) * kBallPitch);
      const double w = ball_half_width(a, R);
      if (w < 0.0) continue;
      const double step = kBallPitch * a;
      const auto k_max = static_cast<long>(std::floor(w / step + kTolerance));
      for (long k = -k_max; k <= k_max; ++k) out.emplace_back(HalfPlanePoint{static_cast<double>(k) * step, a});
    }
    std::sort(out.begin(), out.end(), CanonicalLess{});
    return out;
  }
  if (const auto* box = std::get_if<BoxWindow>(&window)) {
    std::vector<std::vector<double>> axes;
    for (std::size_t i = 0; i < box->lo.size(); ++i) {
      axes.push_back(grid_axis(box->lo[i], box->hi[i], box->pitch));
      if (axes.back().empty()) return out;
    }
    std::vector<std::size_t> idx(axes.size(), 0);
    while (true) {
      EuclideanPoint p;
      for (std::size_t i = 0; i < axes.size(); ++i) p.x.push_back(axes[i][idx[i]]);
      out.emplace_back(std::move(p));
      std::size_t i = axes.size();
      while (i > 0) {
        --i;
        if (++idx[i] < axes[i].size()) break;
        idx[i] = 0;
        if (i == 0) return out;
      }
    }
  }
  const auto& h = std::get<HalfPlaneWindow>(window);
  if (h.u_lo > h.u_hi || h.log_a_lo > h.log_a_hi || !(h.pitch > 0.0)) return out;
  const auto j_lo = static_cast<long>(std::ceil(h.log_a_lo / h.pitch - kTolerance));
  const auto j_hi = static_cast<long>(std::floor(h.log_a_hi / h.pitch + kTolerance));
  for (long j = j_lo; j <= j_hi; ++j) {
    const double a = std::exp(static_cast<double>(j) * h.pitch);
    const double step = h.pitch * a;
    const auto k_lo = static_cast<long>(std::ceil(h.u_lo / step - kTolerance));
    const auto k_hi = static_cast<long>(std::floor(h.u_hi / step + kTolerance));
    for (long k = k_lo; k <= k_hi; ++k) out.emplace_back(HalfPlanePoint{static_cast<double>(k) * step, a});
  }
  std::sort(out.begin(), out.end(), CanonicalLess{});
  return out;
}

double window_margin(const SpaceModel& space, const Window& window, const Point& p) {
  check_window(space, window);
  validate(space, p);
  if (const auto* ball = std::get_if<BallWindow>(&window)) {
    if (space.kind() == ModelKind::hyperbolic) return ball->radius - distance(space, identity(space), p);
    return static_cast<double>(ball->radius) - word_length(space, p);
  }
  if (const auto* box = std::get_if<BoxWindow>(&window)) {
    const auto& x = std::get<EuclideanPoint>(p).x;
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) m = std::min({m, x[i] - box->lo[i], box->hi[i] - x[i]});
    return m;
  }
  const auto& h = std::get<HalfPlaneWindow>(window);
  const auto& q = std::get<HalfPlanePoint>(p);
  const double log_a = std::log(q.a);
  // Distance to a horizontal horocycle is the log-height gap; to a vertical
  // geodesic it is asinh(|du| / a).
  return std::min({log_a - h.log_a_lo, h.log_a_hi - log_a, std::asinh((q.u - h.u_lo) / q.a),
                   std::asinh((h.u_hi - q.u) / q.a)});
}

std::vector<Point> sample_window(const SpaceModel& space, const Window& window, double margin, std::size_t count,
                                 std::uint64_t seed) {
  check_window(space, window);
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  if (count == 0) return out;
  if (const auto* ball = std::get_if<BallWindow>(&window)) {
    if (space.kind() == ModelKind::hyperbolic) {
      const double inner = ball->radius - margin;
      if (inner < -kTolerance) {
        throw WindowError("window " + to_string(window) + " shrunk by " + std::to_string(margin) + " is empty");
      }
      // Uniform in area: cosh(rho) - 1 is uniform on [0, cosh(inner) - 1].
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (std::size_t i = 0; i < count; ++i) {
        const double rho = std::acosh(1.0 + unit(rng) * (std::cosh(std::max(inner, 0.0)) - 1.0));
        out.emplace_back(disk_point(rho, 2.0 * M_PI * unit(rng)));
      }
      return out;
    }
    const auto inner = static_cast<int>(std::floor(ball->radius - margin + kTolerance));
    auto pool = word_ball(space, inner);
    if (pool.empty()) throw WindowError("window " + to_string(window) + " shrunk by " + std::to_string(margin) + " is empty");
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (std::size_t i = 0; i < count; ++i) out.push_back(pool[pick(rng)]);
    return out;
  }
  if (const auto* box = std::get_if<BoxWindow>(&window)) {
    for (std::size_t i = 0; i < box->lo.size(); ++i) {
      if (box->lo[i] + margin > box->hi[i] - margin) {
        throw WindowError("window " + to_string(window) + " shrunk by " + std::to_string(margin) + " is empty");
      }
    }
    for (std::size_t n = 0; n < count; ++n) {
      EuclideanPoint p;
      for (std::size_t i = 0; i < box->lo.size(); ++i) {
        p.x.push_back(std::uniform_real_distribution<double>(box->lo[i] + margin, box->hi[i] - margin)(rng));
      }
      out.emplace_back(std::move(p));
    }
    return out;
  }
  const auto& h = std::get<HalfPlaneWindow>(window);
  if (h.log_a_lo + margin > h.log_a_hi - margin) {
    throw WindowError("window " + to_string(window) + " shrunk by " + std::to_string(margin) + " is empty");
  }
  std::uniform_real_distribution<double> level(h.log_a_lo + margin, h.log_a_hi - margin);
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 1000 * count) {
      throw WindowError("window " + to_string(window) + " shrunk by " + std::to_string(margin) + " is (nearly) empty");
    }
    const double a = std::exp(level(rng));
    const double slack = a * std::sinh(margin);
    if (h.u_lo + slack > h.u_hi - slack) continue;
    const double u = std::uniform_real_distribution<double>(h.u_lo + slack, h.u_hi - slack)(rng);
    out.emplace_back(HalfPlanePoint{u, a});
  }
  return out;
}

std::vector<Point> group_sample(const SpaceModel& space, double radius, std::size_t count, std::uint64_t seed) {
  if (space.is_discrete()) return word_ball(space, static_cast<int>(std::floor(radius + kTolerance)));
  if (!space.is_group()) throw UnsupportedOperationError("model " + space.id() + " is not a group");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> out{identity(space)};
  while (out.size() < count) {
    if (space.kind() == ModelKind::hyperbolic) {
      const double rho = radius * unit(rng);
      out.emplace_back(disk_point(rho, 2.0 * M_PI * unit(rng)));
    } else {
      EuclideanPoint p;
      double norm = 0.0;
      for (int i = 0; i < space.dim(); ++i) {
        p.x.push_back(radius * (2.0 * unit(rng) - 1.0));
        norm += p.x.back() * p.x.back();
      }
      if (std::sqrt(norm) <= radius) out.emplace_back(std::move(p));
    }
  }
  return out;
}

}  // namespace coarse
