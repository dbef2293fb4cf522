#pragma once

// The lattice graph (Z^d, l1): points, finitely supported functions, vertex
// boundaries and L^p norms of functions and of their edge gradients.
//
// Functions are templated on the scalar so the same code serves the float64
// fast path and the exact rational path (see rational.hpp).

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rlab/rational.hpp"

namespace rlab {

inline constexpr int kMaxDim = 8;

/// Integer lattice point of Z^d, 1 <= d <= kMaxDim.
class Point {
 public:
  Point() = default;

  Point(std::initializer_list<std::int64_t> coords) {
    if (coords.size() == 0 || coords.size() > static_cast<std::size_t>(kMaxDim))
      throw std::invalid_argument("Point: dimension must be in [1, kMaxDim]");
    dim_ = static_cast<int>(coords.size());
    std::copy(coords.begin(), coords.end(), coords_.begin());
  }

  static Point origin(int dim) {
    if (dim < 1 || dim > kMaxDim)
      throw std::invalid_argument("Point: dimension must be in [1, kMaxDim]");
    Point p;
    p.dim_ = dim;
    return p;
  }

  int dim() const { return dim_; }
  std::int64_t operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  std::int64_t& operator[](int i) { return coords_[static_cast<std::size_t>(i)]; }

  std::int64_t l1() const {
    std::int64_t s = 0;
    for (int i = 0; i < dim_; ++i) s += coords_[i] < 0 ? -coords_[i] : coords_[i];
    return s;
  }

  // dim first, then coordinates lexicographically
  auto operator<=>(const Point&) const = default;
  bool operator==(const Point&) const = default;

  std::string str() const;

 private:
  int dim_ = 0;
  std::array<std::int64_t, kMaxDim> coords_{};
};

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(p.dim());
    for (int i = 0; i < p.dim(); ++i) {
      h ^= static_cast<std::uint64_t>(p[i]) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

using PointSet = std::unordered_set<Point, PointHash>;

inline std::int64_t l1_distance(const Point& a, const Point& b) {
  std::int64_t s = 0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
  return s;
}

/// The 2d lattice neighbours: coordinate index ascending, minus before plus.
std::vector<Point> neighbors(const Point& p);

/// Points outside `xs` adjacent to some point of `xs`.
PointSet vertex_boundary(const PointSet& xs);
PointSet vertex_boundary(const std::vector<Point>& xs);

/// Unordered lattice edge, stored with a < b.
struct Edge {
  Point a;
  Point b;
  auto operator<=>(const Edge&) const = default;
};
using EdgeList = std::vector<Edge>;

/// Exponent p in [1, inf]. p = inf is a distinct state, never a large double.
class Exponent {
 public:
  explicit Exponent(double p);
  static Exponent infinity() { return Exponent(std::numeric_limits<double>::infinity()); }
  /// "inf" or a decimal >= 1.
  static Exponent parse(std::string_view text);

  bool is_infinite() const { return infinite_; }
  double value() const { return value_; }
  /// Set when p is a finite integer.
  std::optional<int> as_integer() const;
  std::string str() const;

 private:
  double value_;
  bool infinite_;
};

/// Finitely supported positive function on Z^d. Zero values are never
/// stored, so the key set is the support.
template <class Scalar>
class LatticeFunction {
 public:
  using Map = std::map<Point, Scalar>;

  LatticeFunction() = default;
  explicit LatticeFunction(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("LatticeFunction: bad dimension");
  }

  /// Rejects duplicate vertices, nonpositive values and dimension mismatches.
  static LatticeFunction from_entries(int dim, const std::vector<std::pair<Point, Scalar>>& entries) {
    LatticeFunction f(dim);
    for (const auto& [p, v] : entries) {
      if (f.entries_.count(p)) throw std::invalid_argument("duplicate vertex " + p.str());
      f.set(p, v);
    }
    return f;
  }

  void set(const Point& p, const Scalar& v) {
    if (p.dim() != dim_) throw std::invalid_argument("point dimension does not match function");
    if (!(v > Scalar(0))) throw std::invalid_argument("nonpositive value at " + p.str());
    entries_[p] = v;
  }

  Scalar operator()(const Point& p) const {
    auto it = entries_.find(p);
    return it == entries_.end() ? Scalar(0) : it->second;
  }

  bool contains(const Point& p) const { return entries_.count(p) != 0; }
  int dim() const { return dim_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Map& entries() const { return entries_; }

  std::vector<Point> support() const {
    std::vector<Point> out;
    out.reserve(entries_.size());
    for (const auto& kv : entries_) out.push_back(kv.first);
    return out;
  }

  std::vector<Scalar> values() const {
    std::vector<Scalar> out;
    out.reserve(entries_.size());
    for (const auto& kv : entries_) out.push_back(kv.second);
    return out;
  }

  bool operator==(const LatticeFunction&) const = default;

 private:
  int dim_ = 2;
  Map entries_;
};

using RealFunction = LatticeFunction<double>;
using ExactFunction = LatticeFunction<Rational>;

template <class Scalar>
Scalar abs_diff(const Scalar& a, const Scalar& b) {
  return a < b ? Scalar(b - a) : Scalar(a - b);
}

/// Calls fn(f(x), f(y)) once per edge with at least one endpoint in the support.
template <class Scalar, class Fn>
void for_each_support_edge(const LatticeFunction<Scalar>& f, Fn&& fn) {
  for (const auto& [x, fx] : f.entries()) {
    for (const Point& y : neighbors(x)) {
      auto it = f.entries().find(y);
      if (it == f.entries().end()) {
        fn(fx, Scalar(0));
      } else if (x < y) {
        fn(fx, it->second);
      }
    }
  }
}

template <class Scalar>
EdgeList support_edges(const LatticeFunction<Scalar>& f) {
  EdgeList edges;
  for (const auto& kv : f.entries()) {
    const Point& x = kv.first;
    for (const Point& y : neighbors(x)) {
      if (f.contains(y) && !(x < y)) continue;
      edges.push_back(x < y ? Edge{x, y} : Edge{y, x});
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

/// Stable (sum |t_i|^p)^(1/p) over nonnegative terms; max for p = inf.
double lp_combine(const std::vector<double>& terms, const Exponent& p);

/// ||grad f||_p over the lattice edges.
template <class Scalar>
double grad_lp(const LatticeFunction<Scalar>& f, const Exponent& p) {
  std::vector<double> diffs;
  diffs.reserve(f.size() * 2 * static_cast<std::size_t>(f.dim()));
  for_each_support_edge(f, [&](const Scalar& a, const Scalar& b) {
    diffs.push_back(to_double(abs_diff(a, b)));
  });
  return lp_combine(diffs, p);
}

/// ||f||_p as a vertex sum.
template <class Scalar>
double lp_norm(const LatticeFunction<Scalar>& f, const Exponent& p) {
  std::vector<double> vals;
  vals.reserve(f.size());
  for (const auto& kv : f.entries()) vals.push_back(to_double(kv.second));
  return lp_combine(vals, p);
}

/// sum_{x~y} |f(x)-f(y)|^p, exact for integer p.
template <class Scalar>
Scalar grad_power_sum(const LatticeFunction<Scalar>& f, int p) {
  if (p < 1) throw std::domain_error("exponent must be >= 1");
  Scalar total(0);
  for_each_support_edge(f, [&](const Scalar& a, const Scalar& b) { total += ipow(abs_diff(a, b), p); });
  return total;
}

/// sum_v |f(v)|^p, exact for integer p.
template <class Scalar>
Scalar power_sum(const LatticeFunction<Scalar>& f, int p) {
  if (p < 1) throw std::domain_error("exponent must be >= 1");
  Scalar total(0);
  for (const auto& kv : f.entries()) total += ipow(kv.second, p);
  return total;
}

template <class Scalar>
Scalar max_value(const LatticeFunction<Scalar>& f) {
  Scalar m(0);
  for (const auto& kv : f.entries()) m = std::max(m, kv.second);
  return m;
}

template <class Scalar>
struct CoareaSides {
  Scalar lhs;
  Scalar rhs;
};

/// Both sides of the modified coarea formula
///   ||grad f||_p^p = p * int_0^inf sum_{cut edges of {f >= s}} (s - min(f))^(p-1) ds.
/// The right side is integrated level by level: between consecutive distinct
/// values of f the set of cut edges is fixed and each integrand has a closed
/// antiderivative. Exact scalars require an integer p.
template <class Scalar>
CoareaSides<Scalar> coarea_check(const LatticeFunction<Scalar>& f, const Exponent& p) {
  if (p.is_infinite()) throw std::domain_error("coarea formula needs a finite exponent");
  const auto ip = p.as_integer();
  if constexpr (!std::is_floating_point_v<Scalar>) {
    if (!ip) throw std::domain_error("exact coarea check needs an integer exponent");
  }
  auto power = [&](const Scalar& base) -> Scalar {
    if constexpr (std::is_floating_point_v<Scalar>) {
      return ip ? ipow(base, *ip) : std::pow(base, p.value());
    } else {
      return ipow(base, *ip);
    }
  };

  struct Span {
    Scalar lo;
    Scalar hi;
  };
  std::vector<Span> edges;
  Scalar lhs(0);
  for_each_support_edge(f, [&](const Scalar& a, const Scalar& b) {
    const Scalar lo = a < b ? a : b;
    const Scalar hi = a < b ? b : a;
    lhs += power(Scalar(hi - lo));
    if (lo < hi) edges.push_back({lo, hi});
  });

  std::vector<Scalar> levels{Scalar(0)};
  for (const auto& kv : f.entries()) levels.push_back(kv.second);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  // p * int_a^b (s - lo)^(p-1) ds = (b - lo)^p - (a - lo)^p
  Scalar rhs(0);
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    const Scalar& a = levels[k];
    const Scalar& b = levels[k + 1];
    for (const Span& e : edges) {
      if (e.lo <= a && b <= e.hi) rhs += power(Scalar(b - e.lo)) - power(Scalar(a - e.lo));
    }
  }
  return {lhs, rhs};
}

template <class Scalar>
LatticeFunction<double> to_real(const LatticeFunction<Scalar>& f) {
  LatticeFunction<double> out(f.dim());
  for (const auto& [p, v] : f.entries()) out.set(p, to_double(v));
  return out;
}

}  // namespace rlab
