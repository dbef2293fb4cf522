#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "rlab/rayleigh.hpp"
#include "rlab/random.hpp"
#include "rlab/rearrangement.hpp"
#include "rlab/search.hpp"

using namespace rlab;

namespace {

Matrix<double> random_spd(Rng& rng, int n) {
  Matrix<double> a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = 2.0 * uniform01(rng) - 1.0;
  return a * a.transpose() + Matrix<double>::Identity(n, n) * 0.5;
}

Matrix<double> random_symmetric(Rng& rng, int n) {
  Matrix<double> a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = 2.0 * uniform01(rng) - 1.0;
  return a;
}

double power_ratio_of(const Enumeration& e, const std::vector<Point>& support, const std::vector<double>& values) {
  RealFunction f(2);
  for (std::size_t i = 0; i < support.size(); ++i) f.set(support[i], values[i]);
  return ps_ratio(f, e, Exponent(2)).power_ratio;
}

}  // namespace

TEST_CASE("Jacobi agrees with Eigen on symmetric matrices") {
  Rng rng(1);
  for (int n = 1; n <= 7; ++n) {
    const Matrix<double> a = random_symmetric(rng, n);
    const SymmetricEigen<double> mine = jacobi_eigen<double>(a);
    Eigen::SelfAdjointEigenSolver<Matrix<double>> ref(a);
    for (int i = 0; i < n; ++i) CHECK(mine.values(i) == doctest::Approx(ref.eigenvalues()(i)).epsilon(1e-12));
    CHECK((a * mine.vectors - mine.vectors * mine.values.asDiagonal()).norm() < 1e-12);
  }
}

TEST_CASE("generalized problem agrees with Eigen") {
  Rng rng(2);
  for (int n = 1; n <= 6; ++n) {
    const Matrix<double> a = random_symmetric(rng, n);
    const Matrix<double> b = random_spd(rng, n);
    const SymmetricEigen<double> mine = generalized_eigen<double>(a, b);
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix<double>> ref(a, b);
    for (int i = 0; i < n; ++i) CHECK(mine.values(i) == doctest::Approx(ref.eigenvalues()(i)).epsilon(1e-10));
    CHECK((mine.vectors.transpose() * b * mine.vectors - Matrix<double>::Identity(n, n)).norm() < 1e-10);
  }
  CHECK_THROWS(generalized_eigen<double>(Matrix<double>::Identity(2, 2), -Matrix<double>::Identity(2, 2)));
}

TEST_CASE("Jacobi works in long double") {
  Matrix<long double> a(2, 2);
  a << 2, 1, 1, 2;
  const auto e = jacobi_eigen<long double>(a, 1e-18L);
  CHECK(static_cast<double>(e.values(0)) == doctest::Approx(1.0));
  CHECK(static_cast<double>(e.values(1)) == doctest::Approx(3.0));
}

TEST_CASE("gradient form reproduces the energy") {
  Rng rng(3);
  const std::vector<Point> vs{{0, 0}, {1, 0}, {1, 1}, {3, 0}};
  const Matrix<double> a = gradient_form(vs);
  for (int trial = 0; trial < 20; ++trial) {
    RealFunction f(2);
    Vector<double> x(4);
    for (int i = 0; i < 4; ++i) {
      x(i) = uniform_open_closed(rng);
      f.set(vs[static_cast<std::size_t>(i)], x(i));
    }
    CHECK(x.dot(a * x) == doctest::Approx(std::pow(grad_lp(f, Exponent(2)), 2)));
  }
}

TEST_CASE("single vertex quotient is one") {
  const Enumeration e = spiral(50);
  CHECK(rayleigh_oracle_p2(e, {{4, 4}}).value == doctest::Approx(1.0));
  CHECK(rayleigh_oracle_p2(e, {{4, 4}}, {0}).value == doctest::Approx(1.0));
}

TEST_CASE("oracle maximizer reproduces its value") {
  const Enumeration e = spiral(50);
  const std::vector<Point> support{{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  const RayleighResult r = rayleigh_oracle_p2(e, support);
  CHECK(r.value >= 1.01);
  // maximizer values may tie at zero; the ratio is continuous there
  std::vector<double> values = r.values;
  for (double& v : values) v = std::max(v, 1e-300);
  CHECK(power_ratio_of(e, support, values) == doctest::Approx(r.value).epsilon(1e-9));
}

TEST_CASE("oracle dominates random value assignments") {
  Rng rng(4);
  const Enumeration e = spiral(50);
  const std::vector<Point> support{{0, 0}, {1, 0}, {2, 0}, {1, 1}};
  const RayleighResult r = rayleigh_oracle_p2(e, support);
  for (int trial = 0; trial < 20000; ++trial) {
    std::vector<double> v(support.size());
    for (double& x : v) x = uniform_open_closed(rng);
    REQUIRE(power_ratio_of(e, support, v) <= r.value * (1.0 + 1e-9));
  }
}

TEST_CASE("fixed ordering bounds the functions with that ordering") {
  Rng rng(5);
  const Enumeration e = wang_wang(50);
  const std::vector<Point> support{{0, 0}, {2, 1}, {0, 1}};
  const std::vector<int> ordering{1, 0, 2};
  const RayleighResult r = rayleigh_oracle_p2(e, support, ordering);
  for (int trial = 0; trial < 5000; ++trial) {
    double a = uniform_open_closed(rng), b = uniform_open_closed(rng), c = uniform_open_closed(rng);
    std::vector<double> s{a, b, c};
    std::sort(s.begin(), s.end(), std::greater<double>());
    std::vector<double> v(3);
    for (int k = 0; k < 3; ++k) v[static_cast<std::size_t>(ordering[static_cast<std::size_t>(k)])] = s[static_cast<std::size_t>(k)];
    REQUIRE(power_ratio_of(e, support, v) <= r.value * (1.0 + 1e-9));
  }
  CHECK_THROWS(rayleigh_oracle_p2(e, support, {0, 0, 1}));
}

TEST_CASE("oracle agrees with the search on fixed five-point supports") {
  const Enumeration e = spiral(100);
  const std::vector<std::vector<Point>> supports{
      {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}},
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}},
      {{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}},
  };
  for (const auto& support : supports) {
    const RayleighResult r = rayleigh_oracle_p2(e, support);
    SearchConfig config;
    config.support = support;
    config.support_size = 5;
    config.budget = 100000;
    config.seed = 3;
    const SearchReport found = counterexample_search(e, Exponent(2), config);
    CHECK(found.power_ratio <= r.value * (1.0 + 1e-9));
    CHECK(found.power_ratio == doctest::Approx(r.value).epsilon(1e-6));
  }
}
