#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "rlab/comparison.hpp"

using namespace rlab;
using rlab::testing::spike;

namespace {

// ||grad f_c||_p from explicit children lists.
double tree_norm_by_children(const ComparisonFunction<double>& fc, const ComparisonTree& t, const Exponent& p) {
  std::vector<double> diffs;
  for (std::int64_t v = 1; v <= t.size(); ++v)
    for (std::int64_t c : t.children(v))
      if (fc(v) != 0.0 || fc(c) != 0.0) diffs.push_back(std::abs(fc(v) - fc(c)));
  return lp_combine(diffs, p);
}

}  // namespace

TEST_CASE("initial segment of the Z^2 comparison tree") {
  const ComparisonTree t = lattice_comparison_tree(2, 200);
  CHECK(t.children(1) == std::vector<std::int64_t>{2, 3, 4, 5});
  CHECK(t.children(2) == std::vector<std::int64_t>{6, 7, 8});
  CHECK(t.children(3) == std::vector<std::int64_t>{9, 10});
  CHECK(t.parent(10) == 3);
  CHECK(t.depth(1) == 0);
  CHECK(t.depth(8) == 2);
  CHECK_THROWS_AS(t.parent(1), std::out_of_range);
  CHECK_THROWS_AS(t.parent(201), std::out_of_range);
}

TEST_CASE("every vertex but the root has one smaller neighbour") {
  const ComparisonTree t = lattice_comparison_tree(2, 5000);
  std::vector<int> smaller(5001, 0);
  for (std::int64_t v = 1; v <= 5000; ++v)
    for (std::int64_t c : t.children(v)) {
      CHECK(c > v);
      ++smaller[static_cast<std::size_t>(c)];
    }
  CHECK(smaller[1] == 0);
  for (std::int64_t v = 2; v <= 5000; ++v) REQUIRE(smaller[static_cast<std::size_t>(v)] == 1);
}

TEST_CASE("tree boundaries are label intervals") {
  const ComparisonTree t = lattice_comparison_tree(2, 1200);
  for (std::int64_t n = 1; n <= 1000; ++n) REQUIRE(tree_boundary_check(t, n));
}

TEST_CASE("sphere and ball sizes") {
  const ComparisonTree t = lattice_comparison_tree(2, 6000);
  CHECK(sphere_ball_sizes(t, 0).sphere == 1);
  CHECK(sphere_ball_sizes(t, 0).ball == 1);
  CHECK(sphere_ball_sizes(t, 1).sphere == 4);
  CHECK(sphere_ball_sizes(t, 1).ball == 5);
  CHECK(sphere_ball_sizes(t, 2).sphere == 8);
  CHECK(sphere_ball_sizes(t, 2).ball == 13);
  for (std::int64_t r = 1; r <= 50; ++r) {
    const SphereBall sb = sphere_ball_sizes(t, r);
    CHECK(sb.sphere == 4 * r);
    CHECK(sb.ball == 1 + 2 * r * (r + 1));
  }
  CHECK_THROWS_AS(sphere_ball_sizes(lattice_comparison_tree(2, 20), 5), std::out_of_range);
}

TEST_CASE("comparison functions") {
  RealFunction f(2);
  f.set({0, 0}, 3);
  f.set({4, 4}, 1);
  f.set({-2, 1}, 2);
  CHECK(comparison_function(f).values == std::vector<double>{3, 2, 1});
  CHECK(comparison_function(RealFunction(2)).values.empty());
  RealFunction g(2);
  g.set({0, 0}, 2);
  g.set({1, 0}, 2);
  g.set({5, 0}, 1);
  CHECK(comparison_function(g).values == std::vector<double>{2, 2, 1});
}

TEST_CASE("tree gradient norms") {
  const ComparisonTree t = lattice_comparison_tree(2, 100);
  const ComparisonFunction<double> one{{1.0}};
  CHECK(grad_lp_tree(one, t, Exponent(1)) == doctest::Approx(4));
  CHECK(grad_lp_tree(one, t, Exponent::infinity()) == doctest::Approx(1));
  const ComparisonFunction<double> five{{1, 1, 1, 1, 1}};
  CHECK(grad_lp_tree(five, t, Exponent(1)) == doctest::Approx(8));
  CHECK_THROWS_AS(grad_lp_tree(five, lattice_comparison_tree(2, 10), Exponent(1)), std::length_error);
}

TEST_CASE("comparison lemma on simple functions") {
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const auto s = comparison_lemma_check(spike(), Exponent(p));
    CHECK(s.lhs == doctest::Approx(std::pow(4.0, 1.0 / p)));
    CHECK(s.rhs == doctest::Approx(std::pow(4.0, 1.0 / p)));
  }
  RealFunction ball(2);
  for (const Point& q : {Point{0, 0}, Point{1, 0}, Point{-1, 0}, Point{0, 1}, Point{0, -1}}) ball.set(q, 1.0);
  // tree side: one edge per boundary vertex; lattice side: 3 outer edges per arm
  const auto s = comparison_lemma_check(ball, Exponent(1));
  CHECK(s.lhs == doctest::Approx(8));
  CHECK(s.rhs == doctest::Approx(12));
}

TEST_CASE("comparison lemma on random functions") {
  Rng rng(21);
  const ComparisonTree t = lattice_comparison_tree(2, 200);
  const std::vector<Exponent> ps{Exponent(1), Exponent(1.5), Exponent(2), Exponent(3), Exponent(10),
                                 Exponent::infinity()};
  for (int trial = 0; trial < 500; ++trial) {
    const RealFunction f = rlab::testing::random_real_function(rng);
    for (const Exponent& p : ps) {
      const auto s = comparison_lemma_check(f, p, t);
      REQUIRE(s.lhs <= s.rhs * (1.0 + 1e-9));
      REQUIRE(s.lhs == doctest::Approx(tree_norm_by_children(comparison_function(f), t, p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("exact tree power sums") {
  Rng rng(8);
  const ComparisonTree t = lattice_comparison_tree(2, 200);
  for (int trial = 0; trial < 50; ++trial) {
    const ExactFunction f = rlab::testing::random_exact_function(rng);
    for (int p : {1, 2, 3}) CHECK(grad_tree_power_sum(comparison_function(f), t, p) <= grad_power_sum(f, p));
  }
}

TEST_CASE("invalid profiles are rejected") {
  IsoProfile bad{2, {1, 4, 3}, false, "test"};
  CHECK_THROWS_AS(ComparisonTree(bad, 5), std::invalid_argument);
  IsoProfile short_profile{2, {1, 4}, false, "test"};
  CHECK_THROWS_AS(ComparisonTree(short_profile, 100), std::invalid_argument);
}
