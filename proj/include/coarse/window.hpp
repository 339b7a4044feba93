#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "coarse/point.hpp"
#include "coarse/space.hpp"

namespace coarse {

/// Word ball N_m(e) of a discrete group model, or the closed ball of radius m
/// about i in the half-plane (enumerated on the same grid as HalfPlaneWindow
/// with pitch 1/4).
struct BallWindow {
  int radius = 0;
  bool operator==(const BallWindow&) const = default;
};

/// Axis-aligned box of a euclidean model, enumerated on the grid lo + k * pitch.
struct BoxWindow {
  std::vector<double> lo;
  std::vector<double> hi;
  double pitch = 1.0;
  bool operator==(const BoxWindow&) const = default;
};

/// u in [u_lo, u_hi], log a in [log_a_lo, log_a_hi]. Enumerated on levels
/// log a = j * pitch with horizontal step pitch * a, so neighbouring grid
/// points are roughly `pitch` apart in the hyperbolic metric.
struct HalfPlaneWindow {
  double u_lo = 0.0;
  double u_hi = 0.0;
  double log_a_lo = 0.0;
  double log_a_hi = 0.0;
  double pitch = 0.25;
  bool operator==(const HalfPlaneWindow&) const = default;
};

using Window = std::variant<BallWindow, BoxWindow, HalfPlaneWindow>;

/// "ball:M", "box:LO..HI[,LO..HI...][:PITCH]", "h2box:ULO..UHI,LLO..LHI[:PITCH]".
Window parse_window(std::string_view spec);
std::string to_string(const Window& window);

/// Throws SchemaError when the window kind does not fit the model.
void check_window(const SpaceModel& space, const Window& window);

/// Window points in canonical order. Empty or inverted windows give an empty list.
std::vector<Point> enumerate_window(const SpaceModel& space, const Window& window);

/// Largest rho such that the closed rho-ball around p lies in the window
/// (a lower bound for ball windows); negative outside.
double window_margin(const SpaceModel& space, const Window& window, const Point& p);

/// `count` seeded pseudo-random points of the window shrunk by `margin`.
std::vector<Point> sample_window(const SpaceModel& space, const Window& window, double margin, std::size_t count,
                                 std::uint64_t seed);

/// Group elements within `radius` of the identity: the whole word ball for
/// discrete models, `count` seeded random points for continuous ones.
std::vector<Point> group_sample(const SpaceModel& space, double radius, std::size_t count, std::uint64_t seed);

}  // namespace coarse
