#include "coarse/qi_constants.hpp"

#include <algorithm>

#include "coarse/error.hpp"
#include "coarse/space.hpp"

namespace coarse {

double additive_constant(std::span<const DistancePair> pairs, double C) {
  double r = 0.0;
  for (const auto& p : pairs) r = std::max({r, p.image - C * p.domain, p.domain / C - p.image});
  return r;
}

QiConstants fit_qi_constants(std::span<const DistancePair> pairs, std::string certified_over) {
  QiConstants out;
  out.sample_size = pairs.size();
  out.certified_over = std::move(certified_over);
  const double r1 = additive_constant(pairs, 1.0);
  if (r1 <= 1e-12) return out;

  // C + r(C) is convex on C >= 1 and bounded below by C, so the minimum lies in [1, 1 + r(1)].
  auto objective = [&](double C) { return C + additive_constant(pairs, C); };
  double lo = 1.0, hi = 1.0 + r1;
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    if (objective(m1) <= objective(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  const double best = objective(0.5 * (lo + hi));
  const double target = best + 1e-9;
  double C = 1.0;
  if (objective(1.0) > target) {
    double left = 1.0, right = 0.5 * (lo + hi);
    for (int i = 0; i < 200 && right - left > 1e-12; ++i) {
      const double mid = 0.5 * (left + right);
      if (objective(mid) <= target) {
        right = mid;
      } else {
        left = mid;
      }
    }
    C = right;
  }
  out.C = C;
  out.r = additive_constant(pairs, C);
  return out;
}

bool satisfies(std::span<const DistancePair> pairs, double C, double r) {
  if (C < 1.0 || r < 0.0) throw DomainError("QI constants need C >= 1 and r >= 0");
  for (const auto& p : pairs) {
    if (p.image > C * p.domain + r + kTolerance) return false;
    if (p.domain / C - r > p.image + kTolerance) return false;
  }
  return true;
}

}  // namespace coarse
