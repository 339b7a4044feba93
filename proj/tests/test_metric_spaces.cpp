#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>
#include <queue>
#include <random>
#include <set>

#include "coarse/error.hpp"
#include "coarse/space.hpp"
#include "coarse/window.hpp"

using namespace coarse;

namespace {

// Test-side Heisenberg law, written out independently of the library.
std::array<long, 3> heis_mul(std::array<long, 3> g, std::array<long, 3> h) {
  return {g[0] + h[0], g[1] + h[1], g[2] + h[2] + g[0] * h[1]};
}

std::map<std::array<long, 3>, int> heis_bfs(int radius) {
  const std::array<std::array<long, 3>, 4> gens{{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}}};
  std::map<std::array<long, 3>, int> depth{{{0, 0, 0}, 0}};
  std::queue<std::array<long, 3>> q;
  q.push({0, 0, 0});
  while (!q.empty()) {
    auto g = q.front();
    q.pop();
    if (depth[g] == radius) continue;
    for (const auto& s : gens) {
      auto h = heis_mul(g, s);
      if (depth.emplace(h, depth[g] + 1).second) q.push(h);
    }
  }
  return depth;
}

// Generic BFS over the library's multiply with the listed generators.
std::map<std::string, int> cayley_bfs(const SpaceModel& space, int radius) {
  std::map<std::string, int> depth;
  std::vector<Point> layer{identity(space)};
  depth[to_string(layer[0])] = 0;
  for (int m = 1; m <= radius; ++m) {
    std::vector<Point> next;
    for (const auto& g : layer) {
      for (const auto& s : space.generators()) {
        Point h = multiply(space, g, s);
        if (depth.emplace(to_string(h), m).second) next.push_back(h);
      }
    }
    layer = std::move(next);
  }
  return depth;
}

double h2_tanh_form(HalfPlanePoint x, HalfPlanePoint y) {
  std::complex<double> zx(x.u, x.a), zy(y.u, y.a);
  return 2.0 * std::atanh(std::abs(zx - zy) / std::abs(zx - std::conj(zy)));
}

double h2_log_form(HalfPlanePoint x, HalfPlanePoint y) {
  std::complex<double> zx(x.u, x.a), zy(y.u, y.a);
  const double p = std::abs(zx - std::conj(zy)), q = std::abs(zx - zy);
  return std::log((p + q) / (p - q));
}

}  // namespace

TEST_CASE("distance examples") {
  CHECK(distance(SpaceModel::hyperbolic(), HalfPlanePoint{0, 1}, HalfPlanePoint{0, std::exp(1.0)}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(distance(SpaceModel::zd(2), ZdPoint{{0, 0}}, ZdPoint{{3, 4}}) == 7);
  const auto f2 = SpaceModel::free_group(2);
  CHECK(distance(f2, identity(f2), Word{{1, 2, -1}}) == 3);

  const auto H = SpaceModel::heisenberg();
  const HeisenbergPoint x{1, 0, 0}, y{0, 1, 0};
  const Point comm = multiply(H, multiply(H, multiply(H, x, y), inverse(H, x)), inverse(H, y));
  CHECK(std::get<HeisenbergPoint>(comm) == HeisenbergPoint{0, 0, 1});
  const auto oracle = heis_bfs(6);
  CHECK(oracle.at({0, 0, 1}) == 4);
  CHECK(distance(H, identity(H), comm) == 4);
}

TEST_CASE("distance errors") {
  CHECK_THROWS_AS(distance(SpaceModel::zd(2), ZdPoint{{0, 0}}, Word{{1}}), ModelMismatchError);
  CHECK_THROWS_AS(distance(SpaceModel::hyperbolic(), HalfPlanePoint{0, -1}, HalfPlanePoint{0, 1}), DomainError);
  CHECK_THROWS_AS(distance(SpaceModel::zd(2), ZdPoint{{0, 0}}, ZdPoint{{0, 0, 0}}), ModelMismatchError);
  CHECK_THROWS_AS(validate(SpaceModel::free_group(2), Word{{1, -1}}), DomainError);
}

TEST_CASE("group laws") {
  const auto aff = SpaceModel::hyperbolic();
  const auto p = std::get<HalfPlanePoint>(multiply(aff, HalfPlanePoint{1, 2}, HalfPlanePoint{3, 4}));
  CHECK(p.u == 7.0);
  CHECK(p.a == 8.0);

  const auto f2 = SpaceModel::free_group(2);
  CHECK(std::get<Word>(multiply(f2, Word{{1, 2}}, Word{{-2, 1}})) == Word{{1, 1}});

  const auto z2 = SpaceModel::zd(2);
  CHECK(std::get<ZdPoint>(multiply(z2, ZdPoint{{3, -1}}, ZdPoint{{-3, 1}})) == ZdPoint{{0, 0}});
  CHECK(std::get<ZdPoint>(inverse(z2, ZdPoint{{3, -1}})) == ZdPoint{{-3, 1}});

  const auto e2 = SpaceModel::euclidean(2);
  CHECK_THROWS_AS(multiply(e2, EuclideanPoint{{0, 0}}, EuclideanPoint{{1, 1}}), UnsupportedOperationError);
  CHECK_THROWS_AS(identity(e2), UnsupportedOperationError);
  const auto e2g = SpaceModel::euclidean(2, true);
  CHECK(std::get<EuclideanPoint>(multiply(e2g, EuclideanPoint{{1, 2}}, EuclideanPoint{{3, 4}})).x ==
        std::vector<double>{4, 6});

  const auto H = SpaceModel::heisenberg();
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> c(-5, 5);
  for (int i = 0; i < 200; ++i) {
    const HeisenbergPoint a{c(rng), c(rng), c(rng)}, b{c(rng), c(rng), c(rng)}, d{c(rng), c(rng), c(rng)};
    CHECK(multiply(H, multiply(H, a, b), d) == multiply(H, a, multiply(H, b, d)));
    CHECK(multiply(H, a, inverse(H, a)) == identity(H));
    const auto t = heis_mul({a.x, a.y, a.z}, {b.x, b.y, b.z});
    CHECK(std::get<HeisenbergPoint>(multiply(H, a, b)) == HeisenbergPoint{t[0], t[1], t[2]});
  }
  std::uniform_real_distribution<double> u(-3, 3), la(-2, 2);
  for (int i = 0; i < 200; ++i) {
    const HalfPlanePoint g{u(rng), std::exp(la(rng))};
    const auto id = std::get<HalfPlanePoint>(multiply(aff, g, inverse(aff, g)));
    CHECK(id.u == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(id.a == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("word metric equals BFS depth on the radius-6 ball") {
  for (const auto& space : {SpaceModel::zd(1), SpaceModel::zd(2), SpaceModel::zd(3), SpaceModel::free_group(2),
                            SpaceModel::heisenberg()}) {
    const auto depth = cayley_bfs(space, 6);
    const auto ball = word_ball(space, 6);
    CHECK(ball.size() == depth.size());
    for (const auto& g : ball) CHECK(word_length(space, g) == depth.at(to_string(g)));
  }
  // Independent Heisenberg oracle with its own group law.
  const auto H = SpaceModel::heisenberg();
  for (const auto& [g, d] : heis_bfs(7)) CHECK(word_length(H, HeisenbergPoint{g[0], g[1], g[2]}) == d);
}

TEST_CASE("heisenberg lengths of long elements") {
  const auto H = SpaceModel::heisenberg();
  CHECK(word_length(H, HeisenbergPoint{0, 0, 1}) == 4);
  CHECK(word_length(H, HeisenbergPoint{0, 0, 4}) == 8);
  CHECK(word_length(H, HeisenbergPoint{20, 0, 0}) == 20);
  CHECK(word_length(H, HeisenbergPoint{20, 20, 0}) == 40);
  const auto oracle = heis_bfs(12);
  for (const auto& [g, d] : oracle) {
    if (d >= 11) CHECK(word_length(H, HeisenbergPoint{g[0], g[1], g[2]}) == d);
  }
}

TEST_CASE("hyperbolic distance agrees with both closed forms") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5, 5), la(-3, 3);
  const auto h2 = SpaceModel::hyperbolic();
  for (int i = 0; i < 1000; ++i) {
    const HalfPlanePoint x{u(rng), std::exp(la(rng))}, y{u(rng), std::exp(la(rng))};
    const double d = distance(h2, x, y);
    CHECK(std::abs(h2_tanh_form(x, y) - h2_log_form(x, y)) <= 1e-9 * std::max(1.0, d));
    CHECK(std::abs(d - h2_log_form(x, y)) <= 1e-9 * std::max(1.0, d));
  }
  const HalfPlanePoint o{0, 1}, p{1, 1};
  CHECK(distance(h2, o, p) == doctest::Approx(std::log((std::sqrt(5.0) + 1) / (std::sqrt(5.0) - 1))).epsilon(1e-12));
}

TEST_CASE("metric axioms on random triples") {
  std::mt19937_64 rng(5);
  auto check_triples = [&](const SpaceModel& space, const std::vector<Point>& pool, double tol) {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int i = 0; i < 1000; ++i) {
      const auto& x = pool[pick(rng)];
      const auto& y = pool[pick(rng)];
      const auto& z = pool[pick(rng)];
      const double xy = distance(space, x, y), yx = distance(space, y, x);
      CHECK(xy == doctest::Approx(yx).epsilon(1e-12));
      CHECK(distance(space, x, x) <= tol);
      CHECK(xy <= distance(space, x, z) + distance(space, z, y) + tol);
      if (!(x == y)) CHECK(xy > 0.0);
    }
  };
  check_triples(SpaceModel::zd(2), word_ball(SpaceModel::zd(2), 8), 0.0);
  check_triples(SpaceModel::free_group(2), word_ball(SpaceModel::free_group(2), 5), 0.0);
  check_triples(SpaceModel::heisenberg(), word_ball(SpaceModel::heisenberg(), 6), 0.0);
  const auto h2 = SpaceModel::hyperbolic();
  check_triples(h2, group_sample(h2, 4.0, 300, 9), 1e-9);
  const auto e3 = SpaceModel::euclidean(3);
  check_triples(e3, sample_window(e3, BoxWindow{{0, 0, 0}, {5, 5, 5}, 1.0}, 0.0, 300, 9), 1e-9);
}

TEST_CASE("left invariance") {
  std::mt19937_64 rng(8);
  for (const auto& space : {SpaceModel::zd(2), SpaceModel::free_group(2), SpaceModel::heisenberg()}) {
    const auto ball = word_ball(space, 4);
    std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
    for (int i = 0; i < 300; ++i) {
      const auto &g = ball[pick(rng)], &x = ball[pick(rng)], &y = ball[pick(rng)];
      CHECK(distance(space, multiply(space, g, x), multiply(space, g, y)) == distance(space, x, y));
    }
  }
  const auto h2 = SpaceModel::hyperbolic();
  const auto pts = group_sample(h2, 3.0, 300, 4);
  for (std::size_t i = 0; i + 2 < pts.size(); i += 3) {
    const double before = distance(h2, pts[i + 1], pts[i + 2]);
    const double after = distance(h2, multiply(h2, pts[i], pts[i + 1]), multiply(h2, pts[i], pts[i + 2]));
    CHECK(std::abs(before - after) <= 1e-9 * std::max(1.0, before));
  }
}

TEST_CASE("coarse geodesics satisfy the two-sided inequality") {
  auto check = [](const SpaceModel& space, const Point& x, const Point& y) {
    const auto path = coarse_geodesic(space, x, y);
    const double c = space.coarse_constant();
    REQUIRE(path.points.size() == path.params.size());
    CHECK(path.points.front() == x);
    CHECK(path.points.back() == y);
    CHECK(path.params.front() == 0.0);
    CHECK(path.params.back() == doctest::Approx(distance(space, x, y)).epsilon(1e-12));
    for (std::size_t i = 1; i < path.params.size(); ++i) CHECK(path.params[i] - path.params[i - 1] <= 1.0 + 1e-9);
    for (std::size_t i = 0; i < path.points.size(); ++i) {
      for (std::size_t j = i; j < path.points.size(); ++j) {
        const double gap = path.params[j] - path.params[i];
        const double d = distance(space, path.points[i], path.points[j]);
        CHECK(d <= gap + c + 1e-9);
        CHECK(d >= gap - c - 1e-9);
      }
    }
  };
  const auto h2 = SpaceModel::hyperbolic();
  CHECK(h2.coarse_constant() == 0.0);
  check(h2, HalfPlanePoint{0, 1}, HalfPlanePoint{0, std::exp(2.0)});
  check(h2, HalfPlanePoint{-3, 0.5}, HalfPlanePoint{4, 2.0});
  check(h2, HalfPlanePoint{0, 1}, HalfPlanePoint{1e-7, 1.0});
  const auto z2 = SpaceModel::zd(2);
  CHECK(z2.coarse_constant() == 1.0);
  check(z2, ZdPoint{{0, 0}}, ZdPoint{{3, 4}});
  check(SpaceModel::zd(3), ZdPoint{{0, 0, 0}}, ZdPoint{{-5, 2, 7}});
  const auto f2 = SpaceModel::free_group(2);
  const Word w{{1, 2, -1, -2, -2}};
  const auto path = coarse_geodesic(f2, identity(f2), w);
  CHECK(path.points.size() == 6);
  CHECK(std::get<Word>(path.points[2]) == Word{{1, 2}});
  check(f2, Word{{1, 1}}, w);
  check(SpaceModel::heisenberg(), HeisenbergPoint{0, 0, 0}, HeisenbergPoint{2, -1, 5});
  check(SpaceModel::euclidean(2), EuclideanPoint{{0, 0}}, EuclideanPoint{{3.5, -2}});
}

TEST_CASE("window enumeration") {
  const auto z1 = enumerate_window(SpaceModel::zd(1), BallWindow{2});
  REQUIRE(z1.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(std::get<ZdPoint>(z1[static_cast<std::size_t>(i)]).x[0] == i - 2);
  const auto f1 = enumerate_window(SpaceModel::free_group(2), BallWindow{1});
  CHECK(f1.size() == 5);
  CHECK(f1.front() == Point{Word{}});
  for (int m = 0; m <= 6; ++m) {
    const auto oracle = cayley_bfs(SpaceModel::free_group(2), m);
    const auto n = enumerate_window(SpaceModel::free_group(2), BallWindow{m}).size();
    CHECK(n == oracle.size());
    CHECK(n == static_cast<std::size_t>(2 * std::pow(3, m) - 1));
  }
  CHECK(enumerate_window(SpaceModel::euclidean(2), BoxWindow{{0, 0}, {9, 9}, 1.0}).size() == 100);
  CHECK(enumerate_window(SpaceModel::euclidean(2), BoxWindow{{0, 5}, {9, 4}, 1.0}).empty());
  CHECK(enumerate_window(SpaceModel::hyperbolic(), HalfPlaneWindow{5, -5, 0, 1, 0.25}).empty());
  const auto h = enumerate_window(SpaceModel::hyperbolic(), HalfPlaneWindow{-5, 5, -2, 2, 0.25});
  CHECK(!h.empty());
  CHECK(std::is_sorted(h.begin(), h.end(), CanonicalLess{}));
  CHECK_THROWS_AS(enumerate_window(SpaceModel::zd(2), HalfPlaneWindow{}), SchemaError);
}

TEST_CASE("window parsing round trip") {
  for (const std::string spec : {"ball:7", "box:-1.5..2,0..3:0.5", "h2box:-5..5,-2..2:0.25"}) {
    const auto w = parse_window(spec);
    CHECK(parse_window(to_string(w)) == w);
  }
  CHECK_THROWS_AS(parse_window("ball:x"), SchemaError);
  CHECK_THROWS_AS(parse_window("disk:3"), SchemaError);
  CHECK(SpaceModel::parse("zd:3") == SpaceModel::zd(3));
  CHECK(SpaceModel::parse("h2") == SpaceModel::hyperbolic());
  CHECK(SpaceModel::parse("euclidean:2:group").additive_group());
  CHECK_THROWS_AS(SpaceModel::parse("torus:2"), SchemaError);
}

TEST_CASE("canonical order") {
  CHECK(canonical_less(Word{{1}}, Word{{-1}}));
  CHECK(canonical_less(Word{{-1}}, Word{{2}}));
  CHECK(canonical_less(Word{{2}}, Word{{1, 1}}));
  CHECK(to_string(Word{{1, -2}}) == "ab^-1");
  CHECK(to_string(Word{}) == "e");
}
