#include "rlab/comparison.hpp"

#include <set>
#include <stdexcept>

namespace rlab {

ComparisonTree::ComparisonTree(IsoProfile profile, std::int64_t size) : profile_(std::move(profile)), size_(size) {
  if (size < 1) throw std::invalid_argument("comparison tree needs at least one vertex");
  if (!profile_.is_monotone()) throw std::invalid_argument("isoperimetric profile is not monotone");
  if (profile_.max_n() >= 1 && profile_.at(1) < 1) throw std::invalid_argument("isoperimetric profile must be positive");

  reach_.push_back(1);
  for (std::int64_t n = 1; n <= profile_.max_n() && reach_.back() < size_; ++n) reach_.push_back(n + profile_.at(n));
  if (reach_.back() < size_)
    throw std::invalid_argument("isoperimetric profile too short for a tree of " + std::to_string(size_) + " vertices");

  parent_.assign(static_cast<std::size_t>(size_) + 1, 0);
  depth_.assign(static_cast<std::size_t>(size_) + 1, 0);
  std::int64_t owner = 1;
  for (std::int64_t child = 2; child <= size_; ++child) {
    while (reach_[static_cast<std::size_t>(owner)] < child) ++owner;
    parent_[static_cast<std::size_t>(child)] = owner;
    depth_[static_cast<std::size_t>(child)] = depth_[static_cast<std::size_t>(owner)] + 1;
  }
}

void ComparisonTree::check_vertex(std::int64_t n) const {
  if (n < 1 || n > size_)
    throw std::out_of_range("vertex " + std::to_string(n) + " outside comparison tree 1.." + std::to_string(size_));
}

std::int64_t ComparisonTree::reach(std::int64_t n) const {
  if (n < 0) throw std::out_of_range("comparison tree reach queried at " + std::to_string(n));
  if (n < static_cast<std::int64_t>(reach_.size())) return reach_[static_cast<std::size_t>(n)];
  return n + profile_.at(n);
}

std::int64_t ComparisonTree::parent(std::int64_t n) const {
  check_vertex(n);
  if (n == 1) throw std::out_of_range("the root has no parent");
  return parent_[static_cast<std::size_t>(n)];
}

std::int64_t ComparisonTree::depth(std::int64_t n) const {
  check_vertex(n);
  return depth_[static_cast<std::size_t>(n)];
}

std::pair<std::int64_t, std::int64_t> ComparisonTree::children_range(std::int64_t n) const {
  check_vertex(n);
  return {reach(n - 1) + 1, reach(n)};
}

bool ComparisonTree::children_within(std::int64_t n) const {
  check_vertex(n);
  return n < static_cast<std::int64_t>(reach_.size()) && reach(n) <= size_;
}

std::vector<std::int64_t> ComparisonTree::children(std::int64_t n) const {
  check_vertex(n);
  std::vector<std::int64_t> out;
  if (n - 1 >= static_cast<std::int64_t>(reach_.size())) return out;
  const std::int64_t first = reach(n - 1) + 1;
  if (first > size_) return out;
  const std::int64_t last = n < static_cast<std::int64_t>(reach_.size()) ? std::min(reach(n), size_) : size_;
  for (std::int64_t c = first; c <= last; ++c) out.push_back(c);
  return out;
}

ComparisonTree build_comparison_tree(const IsoProfile& profile, std::int64_t size) {
  return ComparisonTree(profile, size);
}

ComparisonTree lattice_comparison_tree(int dim, std::int64_t size) {
  return ComparisonTree(lattice_profile(dim, size), size);
}

bool tree_boundary_check(const ComparisonTree& t, std::int64_t n) {
  const std::int64_t p = t.profile().at(n);
  if (n + p > t.size()) throw std::out_of_range("tree too small for boundary check at n = " + std::to_string(n));
  // adjacency from the parent array only
  std::vector<std::vector<std::int64_t>> kids(static_cast<std::size_t>(t.size()) + 1);
  for (std::int64_t c = 2; c <= t.size(); ++c) kids[static_cast<std::size_t>(t.parent(c))].push_back(c);
  std::set<std::int64_t> boundary;
  for (std::int64_t v = 1; v <= n; ++v) {
    if (v >= 2 && t.parent(v) > n) boundary.insert(t.parent(v));
    for (std::int64_t c : kids[static_cast<std::size_t>(v)])
      if (c > n) boundary.insert(c);
  }
  if (static_cast<std::int64_t>(boundary.size()) != p) return false;
  return *boundary.begin() == n + 1 && *boundary.rbegin() == n + p;
}

SphereBall sphere_ball_sizes(const ComparisonTree& t, std::int64_t r) {
  if (r < 0) throw std::invalid_argument("radius must be nonnegative");
  // deepest label of depth r: iterate the last-child map from the root
  std::int64_t hi = 1;
  for (std::int64_t k = 0; k < r; ++k) {
    if (!t.children_within(hi))
      throw std::out_of_range("comparison tree does not contain the ball of radius " + std::to_string(r));
    hi = t.reach(hi);
  }
  SphereBall out{0, 0};
  for (std::int64_t v = 1; v <= hi; ++v) {
    const std::int64_t d = t.depth(v);
    if (d == r) ++out.sphere;
    if (d <= r) ++out.ball;
  }
  return out;
}

}  // namespace rlab
