#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "coarse/rough_graph.hpp"
#include "coarse/space.hpp"

namespace coarse {

struct GrowthSeries {
  std::string source;
  std::string base_point;
  /// |N_m(x0)| for m = 0..m_max.
  std::vector<std::uint64_t> values;
};

/// Exact BFS ball counts around a vertex. BorderError (with the largest safe
/// m) when the balls would reach the window border.
GrowthSeries ball_sizes(const RoughGraph& graph, std::size_t x0, int m_max);

/// Word-ball sizes of a discrete group model, by layered BFS.
GrowthSeries ball_sizes(const SpaceModel& space, int m_max);

enum class GrowthClass { polynomial, exponential, inconclusive };
std::string to_string(GrowthClass c);

struct GrowthVerdict {
  GrowthClass kind = GrowthClass::inconclusive;
  /// Degree for polynomial, rate for exponential.
  double estimate = 0.0;
  /// Half-width of the 95% interval of the estimate.
  double half_width = 0.0;
  double loglog_slope = 0.0;
  double loglog_rms = 0.0;
  double exp_slope = 0.0;
  double exp_rms = 0.0;
  bool too_short = false;
};

/// Fits log v(m) against log(m + 1/2) for m >= 4: RMS < 0.1 means
/// polynomial. Otherwise log v(m) against m: slope > 0.05 with RMS < 0.2
/// means exponential. Anything else, or fewer than 8 terms, is inconclusive.
GrowthVerdict classify_growth(const GrowthSeries& series);

struct SandwichVerdict {
  bool equivalent = false;
  int alpha = 0;
  int beta = 0;
  int gamma = 0;
  /// Number of m values compared.
  std::size_t overlap = 0;
};

/// Searches alpha, beta in 1..8 and gamma in 0..8 for a(m) <= alpha b(beta m + gamma)
/// and b(m) <= alpha a(beta m + gamma) on the overlapping range. Arguments past
/// the end of a series read its last value, which can only under-estimate.
SandwichVerdict compare_growth(const GrowthSeries& a, const GrowthSeries& b);

}  // namespace coarse
