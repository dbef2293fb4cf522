#include <doctest.h>

#include <cmath>
#include <set>

#include "generators.hpp"
#include "rlab/lattice.hpp"

using namespace rlab;
using rlab::testing::spike;

namespace {

// Independent boundary: scan the bounding box grown by one.
std::set<Point> boundary_by_scan(const std::vector<Point>& xs) {
  const std::set<Point> in(xs.begin(), xs.end());
  std::int64_t lo = 0, hi = 0;
  for (const Point& p : xs)
    for (int i = 0; i < p.dim(); ++i) {
      lo = std::min(lo, p[i]);
      hi = std::max(hi, p[i]);
    }
  std::set<Point> out;
  for (std::int64_t x = lo - 1; x <= hi + 1; ++x)
    for (std::int64_t y = lo - 1; y <= hi + 1; ++y) {
      const Point q{x, y};
      if (in.count(q)) continue;
      for (const Point& p : xs)
        if (l1_distance(p, q) == 1) {
          out.insert(q);
          break;
        }
    }
  return out;
}

}  // namespace

TEST_CASE("neighbors are the 2d unit translates") {
  const auto n = neighbors(Point{0, 0});
  CHECK(n.size() == 4);
  CHECK(std::set<Point>(n.begin(), n.end()) == std::set<Point>{{-1, 0}, {1, 0}, {0, -1}, {0, 1}});
  for (const Point& q : neighbors(Point{2, -1})) CHECK(l1_distance(q, Point{2, -1}) == 1);
  CHECK(neighbors(Point{0, 0, 0}).size() == 6);
}

TEST_CASE("vertex boundary") {
  CHECK(vertex_boundary(std::vector<Point>{{0, 0}}).size() == 4);
  CHECK(vertex_boundary(std::vector<Point>{{0, 0}, {1, 0}}).size() == 6);
  for (std::int64_t k = 0; k <= 6; ++k) {
    std::vector<Point> ball;
    for (std::int64_t x = -k; x <= k; ++x)
      for (std::int64_t y = -k; y <= k; ++y)
        if (std::abs(x) + std::abs(y) <= k) ball.push_back({x, y});
    CHECK(vertex_boundary(ball).size() == static_cast<std::size_t>(4 * k + 4));
  }
}

TEST_CASE("vertex boundary agrees with a box scan on random sets") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Point> xs;
    PointSet seen;
    const auto m = 1 + uniform_below(rng, 12);
    while (xs.size() < m) {
      const Point p{static_cast<std::int64_t>(uniform_below(rng, 6)) - 3,
                    static_cast<std::int64_t>(uniform_below(rng, 6)) - 3};
      if (seen.insert(p).second) xs.push_back(p);
    }
    const PointSet b = vertex_boundary(xs);
    CHECK(std::set<Point>(b.begin(), b.end()) == boundary_by_scan(xs));
  }
}

TEST_CASE("support edges") {
  CHECK(support_edges(spike()).size() == 4);
  CHECK(support_edges(RealFunction(2)).empty());
  RealFunction two(2);
  two.set({0, 0}, 1.0);
  two.set({1, 0}, 1.0);
  CHECK(support_edges(two).size() == 7);
}

TEST_CASE("exponent parsing") {
  CHECK(Exponent::parse("inf").is_infinite());
  CHECK(Exponent::parse("2").as_integer() == 2);
  CHECK(Exponent::parse("1.5").value() == doctest::Approx(1.5));
  CHECK_FALSE(Exponent::parse("1.5").as_integer().has_value());
  CHECK_THROWS_AS(Exponent(0.5), std::domain_error);
  CHECK_THROWS(Exponent::parse("abc"));
  CHECK_THROWS(Exponent(std::nan("")));
}

TEST_CASE("gradient norms of a unit spike") {
  CHECK(grad_lp(spike(), Exponent(1)) == doctest::Approx(4));
  CHECK(grad_lp(spike(), Exponent::infinity()) == doctest::Approx(1));
  CHECK(grad_lp(spike(), Exponent(2)) == doctest::Approx(2));
}

TEST_CASE("vertex norms") {
  RealFunction f(2);
  f.set({0, 0}, 3);
  f.set({5, 5}, 4);
  CHECK(lp_norm(f, Exponent(1)) == doctest::Approx(7));
  CHECK(lp_norm(f, Exponent::infinity()) == doctest::Approx(4));
  RealFunction g(2);
  g.set({0, 0}, 1);
  g.set({1, 0}, 1);
  g.set({2, 0}, 1);
  CHECK(lp_norm(g, Exponent(3)) == doctest::Approx(std::cbrt(3.0)));
}

TEST_CASE("functions reject invalid values") {
  RealFunction f(2);
  CHECK_THROWS(f.set({0, 0}, 0.0));
  CHECK_THROWS(f.set({0, 0}, -1.0));
  CHECK_THROWS(f.set(Point{0, 0, 0}, 1.0));
  CHECK_THROWS(RealFunction::from_entries(2, {{{0, 0}, 1.0}, {{0, 0}, 2.0}}));
}

TEST_CASE("coarea identity on a spike") {
  for (int p : {1, 2}) {
    const auto sides = coarea_check(spike(), Exponent(p));
    CHECK(sides.lhs == doctest::Approx(4));
    CHECK(sides.rhs == doctest::Approx(4));
  }
}

TEST_CASE("coarea identity holds exactly on random rational functions") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const ExactFunction f = rlab::testing::random_exact_function(rng);
    for (int p : {1, 2, 3}) {
      const auto sides = coarea_check(f, Exponent(p));
      CHECK(sides.lhs == sides.rhs);
      CHECK(sides.lhs == grad_power_sum(f, p));
    }
  }
}

TEST_CASE("coarea identity in floating point for fractional p") {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const RealFunction f = rlab::testing::random_real_function(rng);
    const auto sides = coarea_check(f, Exponent(1.5));
    CHECK(sides.lhs == doctest::Approx(sides.rhs).epsilon(1e-9));
  }
  CHECK_THROWS(coarea_check(spike(), Exponent::infinity()));
}

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/2") == Rational(3, 2));
  CHECK(parse_rational("-4/6") == Rational(-2, 3));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(format_rational(Rational(6, 4)) == "3/2");
  CHECK(format_rational(Rational(5)) == "5");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("1.5"));
  CHECK_THROWS(parse_rational(""));
}
