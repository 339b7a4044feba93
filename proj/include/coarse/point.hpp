#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace coarse {

/// Element of Z^d.
struct ZdPoint {
  std::vector<std::int64_t> x;
  bool operator==(const ZdPoint&) const = default;
};

/// Element (x, y, z) of the integer Heisenberg group with product
/// (a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b').
struct HeisenbergPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;
  bool operator==(const HeisenbergPoint&) const = default;
};

/// Reduced word in a free group. Letter +i is the i-th generator (1-based),
/// -i its inverse.
struct Word {
  std::vector<std::int32_t> letters;
  bool operator==(const Word&) const = default;
};

struct EuclideanPoint {
  std::vector<double> x;
  bool operator==(const EuclideanPoint&) const = default;
};

/// Upper half-plane point (u, a), a > 0. Doubles as the affine map t -> a t + u.
struct HalfPlanePoint {
  double u = 0.0;
  double a = 1.0;
  bool operator==(const HalfPlanePoint&) const = default;
};

using Point = std::variant<ZdPoint, HeisenbergPoint, Word, EuclideanPoint, HalfPlanePoint>;

/// Canonical total order: lexicographic on coordinates, shortlex for words
/// (letter order a < a^-1 < b < b^-1 < ...). Points of different alternatives
/// order by alternative index.
bool canonical_less(const Point& lhs, const Point& rhs);

struct CanonicalLess {
  bool operator()(const Point& lhs, const Point& rhs) const { return canonical_less(lhs, rhs); }
};

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept;
  std::size_t operator()(const HeisenbergPoint& p) const noexcept;
};

/// Human-readable form, e.g. "(3,-1)", "ab^-1", "e", "(0.5,1.25)".
std::string to_string(const Point& p);

}  // namespace coarse
