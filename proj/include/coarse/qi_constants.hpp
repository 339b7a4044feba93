#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace coarse {

/// (C, r) such that C^-1 d(x, y) - r <= d(f(x), f(y)) <= C d(x, y) + r held
/// for every pair of the recorded sample.
struct QiConstants {
  double C = 1.0;
  double r = 0.0;
  std::size_t sample_size = 0;
  std::string certified_over;
};

/// One sampled pair: distance before and after the map.
struct DistancePair {
  double domain = 0.0;
  double image = 0.0;
};

/// Smallest additive constant that certifies multiplicative constant C.
double additive_constant(std::span<const DistancePair> pairs, double C);

/// Fits (C, r) by minimising C + r(C) over C >= 1, taking the smallest C on
/// a flat minimum. An exact isometry on the sample gives (1, 0) exactly.
QiConstants fit_qi_constants(std::span<const DistancePair> pairs, std::string certified_over = {});

/// True if every pair satisfies the two-sided (C, r) inequality up to tolerance.
bool satisfies(std::span<const DistancePair> pairs, double C, double r);

}  // namespace coarse
