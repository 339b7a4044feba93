#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "coarse/rough_graph.hpp"

namespace coarse {

/// Vertices within c hops of both A and its complement, sorted. Every vertex
/// of A must be at least c hops from the window border (BorderError).
std::vector<std::size_t> c_boundary(const RoughGraph& graph, std::span<const std::size_t> A, double c);

/// |boundary_c A| / |A|; UndefinedRatioError for empty A.
double folner_ratio(const RoughGraph& graph, std::span<const std::size_t> A, double c);

enum class FolnerFamily { metric_balls, boxes, greedy_improved };
std::string to_string(FolnerFamily family);
FolnerFamily parse_folner_family(std::string_view name);

struct FolnerEntry {
  std::string descriptor;
  std::uint64_t set_size = 0;
  std::uint64_t boundary_size = 0;
  double ratio = 0.0;
};

struct FolnerReport {
  double c = 1.0;
  FolnerFamily family = FolnerFamily::metric_balls;
  std::vector<FolnerEntry> entries;
  double best_ratio = std::numeric_limits<double>::infinity();
  double epsilon = 0.0;
  bool achieved = false;
};

/// Graph ball of hop radius m around the center vertex.
std::vector<std::size_t> ball_set(const RoughGraph& graph, int m);

/// Coordinate box of parameter n around the center vertex (after translating
/// it to the identity): |x_i| <= n in Z^d and euclidean space; |x|, |y| <= n,
/// |z| <= ceil(z_scale n^2) in the Heisenberg group; |u| <= n, |log a| <= n / 2
/// in the half-plane. Free groups have no boxes.
std::vector<std::size_t> box_set(const RoughGraph& graph, double n, double z_scale = 1.0);

struct FolnerScanOptions {
  bool stop_early = true;
  double z_scale = 1.0;
};

/// Evaluates the family over `sizes` (radii for balls, n for boxes) in
/// increasing order, skipping candidates that leave the interior.
/// greedy_improved hill-climbs from the best ball with single-vertex toggles.
FolnerReport folner_scan(const RoughGraph& graph, double c, FolnerFamily family, double epsilon,
                         std::vector<double> sizes, FolnerScanOptions options = {});

/// Exact boundary count of a box in an implicit Cayley graph (Z^d with
/// d >= 2, or the Heisenberg group), one column of the last coordinate at a time.
FolnerEntry box_boundary(const CayleyGraph& graph, std::int64_t n, std::int64_t z_half, double c);

/// Box family on an implicit Cayley graph; z half-width n for Z^d and
/// ceil(z_scale n^2) for the Heisenberg group.
FolnerReport folner_scan(const CayleyGraph& graph, double c, double epsilon, std::vector<double> sizes,
                         FolnerScanOptions options = {});

}  // namespace coarse
