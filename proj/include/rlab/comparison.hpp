#pragma once

// The universal comparison tree of a graph with monotone isoperimetric
// profile P: vertex n's larger neighbours are exactly the integers in
// ((n-1) + P(n-1), n + P(n)], with P(0) = 1. Every n >= 2 then has exactly
// one smaller neighbour, so the graph is a tree rooted at 1.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "rlab/enumeration.hpp"
#include "rlab/lattice.hpp"

namespace rlab {

class ComparisonTree {
 public:
  /// Vertices 1..size. Throws std::invalid_argument for a non-monotone
  /// profile or one too short to place every vertex.
  ComparisonTree(IsoProfile profile, std::int64_t size);

  std::int64_t size() const { return size_; }
  const IsoProfile& profile() const { return profile_; }

  /// n + P(n); reach(0) = 1. The first n vertices have boundary {n+1..reach(n)}.
  std::int64_t reach(std::int64_t n) const;
  std::int64_t parent(std::int64_t n) const;
  std::int64_t depth(std::int64_t n) const;

  /// Inclusive label interval of n's children, not clipped to size().
  std::pair<std::int64_t, std::int64_t> children_range(std::int64_t n) const;
  /// Whether the whole children interval of n lies inside 1..size().
  bool children_within(std::int64_t n) const;
  std::vector<std::int64_t> children(std::int64_t n) const;

 private:
  void check_vertex(std::int64_t n) const;

  IsoProfile profile_;
  std::int64_t size_;
  std::vector<std::int64_t> reach_;   // reach_[n] for n = 0..K
  std::vector<std::int64_t> parent_;  // parent_[n], n >= 2
  std::vector<std::int64_t> depth_;
};

ComparisonTree build_comparison_tree(const IsoProfile& profile, std::int64_t size);

/// Comparison tree of (Z^d, l1) with `size` vertices, built from lattice_profile.
ComparisonTree lattice_comparison_tree(int dim, std::int64_t size);

/// Whether the tree boundary of {1..n} is exactly {n+1, ..., n + P(n)}. The
/// boundary is collected from explicit parent/child adjacency.
bool tree_boundary_check(const ComparisonTree& t, std::int64_t n);

struct SphereBall {
  std::int64_t sphere;
  std::int64_t ball;
};

/// |S(r)| and |B(r)| around the root, counted from tree depths. Throws
/// std::out_of_range when B(r) does not fit in the tree.
SphereBall sphere_ball_sizes(const ComparisonTree& t, std::int64_t r);

/// Values of |f| sorted nonincreasingly; vertex identities are dropped.
template <class Scalar>
struct ComparisonFunction {
  std::vector<Scalar> values;

  std::size_t size() const { return values.size(); }
  /// f_c(k) for k >= 1; zero beyond the support.
  Scalar operator()(std::int64_t k) const {
    return k >= 1 && k <= static_cast<std::int64_t>(values.size()) ? values[static_cast<std::size_t>(k - 1)]
                                                                    : Scalar(0);
  }
};

template <class Scalar>
ComparisonFunction<Scalar> comparison_function(const LatticeFunction<Scalar>& f) {
  ComparisonFunction<Scalar> fc{f.values()};
  std::sort(fc.values.begin(), fc.values.end(), std::greater<Scalar>());
  return fc;
}

namespace detail {

/// Calls fn(f_c(parent), f_c(child)) for every tree edge that can be nonzero.
template <class Scalar, class Fn>
void for_each_tree_edge(const ComparisonFunction<Scalar>& fc, const ComparisonTree& t, Fn&& fn) {
  const auto m = static_cast<std::int64_t>(fc.size());
  if (m == 0) return;
  const std::int64_t last = t.reach(m);
  if (last > t.size())
    throw std::length_error("comparison tree has " + std::to_string(t.size()) + " vertices but " +
                            std::to_string(last) + " are needed for a support of size " + std::to_string(m));
  // Edges whose child exceeds reach(m) join two vertices beyond the support.
  for (std::int64_t child = 2; child <= last; ++child) fn(fc(t.parent(child)), fc(child));
}

}  // namespace detail

/// ||grad f_c||_p on the tree.
template <class Scalar>
double grad_lp_tree(const ComparisonFunction<Scalar>& fc, const ComparisonTree& t, const Exponent& p) {
  std::vector<double> diffs;
  detail::for_each_tree_edge(fc, t, [&](const Scalar& a, const Scalar& b) { diffs.push_back(to_double(abs_diff(a, b))); });
  return lp_combine(diffs, p);
}

template <class Scalar>
Scalar grad_tree_power_sum(const ComparisonFunction<Scalar>& fc, const ComparisonTree& t, int p) {
  Scalar total(0);
  detail::for_each_tree_edge(fc, t, [&](const Scalar& a, const Scalar& b) { total += ipow(abs_diff(a, b), p); });
  return total;
}

struct ComparisonSides {
  double lhs;  // ||grad f_c||_p on the comparison tree
  double rhs;  // ||grad f||_p on the lattice
};

template <class Scalar>
ComparisonSides comparison_lemma_check(const LatticeFunction<Scalar>& f, const Exponent& p, const ComparisonTree& t) {
  return {grad_lp_tree(comparison_function(f), t, p), grad_lp(f, p)};
}

/// Builds a lattice comparison tree large enough for f.
template <class Scalar>
ComparisonSides comparison_lemma_check(const LatticeFunction<Scalar>& f, const Exponent& p) {
  const auto m = static_cast<std::int64_t>(f.size());
  const auto profile = lattice_profile(f.dim(), m + 1);
  const ComparisonTree t(profile, m + profile.at(m) + 1);
  return comparison_lemma_check(f, p, t);
}

}  // namespace rlab
