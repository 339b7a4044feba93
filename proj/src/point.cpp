#include "coarse/point.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>

namespace coarse {
namespace {

int letter_key(std::int32_t letter) {
  return 2 * (std::abs(letter) - 1) + (letter < 0 ? 1 : 0);
}

bool word_less(const Word& lhs, const Word& rhs) {
  if (lhs.letters.size() != rhs.letters.size()) return lhs.letters.size() < rhs.letters.size();
  return std::lexicographical_compare(
      lhs.letters.begin(), lhs.letters.end(), rhs.letters.begin(), rhs.letters.end(),
      [](std::int32_t l, std::int32_t r) { return letter_key(l) < letter_key(r); });
}

inline void mix(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::string format_real(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

}  // namespace

bool canonical_less(const Point& lhs, const Point& rhs) {
  if (lhs.index() != rhs.index()) return lhs.index() < rhs.index();
  return std::visit(
      [&rhs](const auto& l) -> bool {
        using T = std::decay_t<decltype(l)>;
        const auto& r = std::get<T>(rhs);
        if constexpr (std::is_same_v<T, ZdPoint>) {
          return l.x < r.x;
        } else if constexpr (std::is_same_v<T, HeisenbergPoint>) {
          return std::tie(l.x, l.y, l.z) < std::tie(r.x, r.y, r.z);
        } else if constexpr (std::is_same_v<T, Word>) {
          return word_less(l, r);
        } else if constexpr (std::is_same_v<T, EuclideanPoint>) {
          return l.x < r.x;
        } else {
          return std::tie(l.u, l.a) < std::tie(r.u, r.a);
        }
      },
      lhs);
}

std::size_t PointHash::operator()(const HeisenbergPoint& p) const noexcept {
  std::size_t seed = 3;
  mix(seed, std::hash<std::int64_t>{}(p.x));
  mix(seed, std::hash<std::int64_t>{}(p.y));
  mix(seed, std::hash<std::int64_t>{}(p.z));
  return seed;
}

std::size_t PointHash::operator()(const Point& p) const noexcept {
  std::size_t seed = p.index();
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ZdPoint>) {
          for (auto c : v.x) mix(seed, std::hash<std::int64_t>{}(c));
        } else if constexpr (std::is_same_v<T, HeisenbergPoint>) {
          mix(seed, (*this)(v));
        } else if constexpr (std::is_same_v<T, Word>) {
          for (auto c : v.letters) mix(seed, std::hash<std::int32_t>{}(c));
        } else if constexpr (std::is_same_v<T, EuclideanPoint>) {
          for (auto c : v.x) mix(seed, std::hash<double>{}(c));
        } else {
          mix(seed, std::hash<double>{}(v.u));
          mix(seed, std::hash<double>{}(v.a));
        }
      },
      p);
  return seed;
}

std::string to_string(const Point& p) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        std::ostringstream out;
        if constexpr (std::is_same_v<T, ZdPoint>) {
          out << "(";
          for (std::size_t i = 0; i < v.x.size(); ++i) out << (i ? "," : "") << v.x[i];
          out << ")";
        } else if constexpr (std::is_same_v<T, HeisenbergPoint>) {
          out << "[" << v.x << "," << v.y << "," << v.z << "]";
        } else if constexpr (std::is_same_v<T, Word>) {
          if (v.letters.empty()) return "e";
          for (auto l : v.letters) {
            out << static_cast<char>('a' + std::abs(l) - 1);
            if (l < 0) out << "^-1";
          }
        } else if constexpr (std::is_same_v<T, EuclideanPoint>) {
          out << "(";
          for (std::size_t i = 0; i < v.x.size(); ++i) out << (i ? "," : "") << format_real(v.x[i]);
          out << ")";
        } else {
          out << "(" << format_real(v.u) << "," << format_real(v.a) << ")";
        }
        return out.str();
      },
      p);
}

}  // namespace coarse
