#include "rlab/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rlab {

std::int64_t smallest_descendant_at_least(const ComparisonTree& t, std::int64_t i, std::int64_t j) {
  if (i >= j) return i;
  std::int64_t lo = i;
  std::int64_t hi = i;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  while (lo <= best) {
    if (!t.children_within(hi))
      throw std::length_error("comparison tree of size " + std::to_string(t.size()) +
                              " too small to resolve descendants of " + std::to_string(i));
    lo = t.reach(lo - 1) + 1;
    hi = t.reach(hi);
    if (lo > best) break;
    if (hi >= j) best = std::min(best, std::max(lo, j));
  }
  return best;
}

TreePath psi_spiral(std::int64_t i, std::int64_t j, const ComparisonTree& t) {
  if (!(i < j)) throw std::invalid_argument("psi_spiral expects i < j");
  const std::int64_t k = smallest_descendant_at_least(t, i, j);
  TreePath path;
  for (std::int64_t v = k; v != i; v = t.parent(v)) {
    if (v < i) throw AuditFailure("vertex " + std::to_string(k) + " is not a descendant of " + std::to_string(i));
    path.vertices.push_back(v);
  }
  path.vertices.push_back(i);
  std::reverse(path.vertices.begin(), path.vertices.end());
  return path;
}

TreeEdge psi_wang(std::int64_t i, std::int64_t j, const ComparisonTree& t) {
  if (!(i < j)) throw std::invalid_argument("psi_wang expects i < j");
  const std::int64_t a = t.parent(j);
  if (a == i) return {i, j};
  if (a < i) return {a, j};
  throw AuditFailure("lattice edge (" + std::to_string(i) + "," + std::to_string(j) + ") has tree parent " +
                     std::to_string(a) + " > " + std::to_string(i));
}

PathLengthAudit path_length_audit(const ComparisonTree& t, std::int64_t label_max) {
  PathLengthAudit audit;
  for (std::int64_t m = 1; m < label_max; ++m) {
    for (const Point& q : neighbors(spiral_label(m))) {
      const std::int64_t n = spiral_index(q);
      if (n <= m || n > label_max) continue;
      const TreePath path = psi_spiral(m, n, t);
      ++audit.edges;
      if (path.length() > audit.max_len) {
        audit.max_len = path.length();
        audit.i = m;
        audit.j = n;
        audit.k = path.vertices.back();
      }
    }
  }
  return audit;
}

MultiplicityAudit multiplicity_audit(const Enumeration& e, const ComparisonTree& t, std::int64_t label_max) {
  const bool is_spiral = e.kind() == EnumerationKind::spiral;
  if (!is_spiral && e.kind() != EnumerationKind::wang_wang)
    throw std::invalid_argument("multiplicity audit needs a spiral or Wang-Wang enumeration");
  if (e.size() < label_max) throw std::length_error("enumeration shorter than label_max");

  // count[c] = number of lattice edges whose image uses tree edge (parent(c), c)
  std::vector<std::int64_t> count(static_cast<std::size_t>(t.size()) + 1, 0);
  MultiplicityAudit audit;
  for (std::int64_t m = 1; m < label_max; ++m) {
    for (const Point& q : neighbors(e.point(m))) {
      const auto n = e.label(q);
      if (!n || *n <= m || *n > label_max) continue;
      ++audit.edges;
      if (is_spiral) {
        const TreePath path = psi_spiral(m, *n, t);
        for (std::size_t s = 1; s < path.vertices.size(); ++s) ++count[static_cast<std::size_t>(path.vertices[s])];
      } else {
        ++count[static_cast<std::size_t>(psi_wang(m, *n, t).child)];
      }
    }
  }
  for (std::int64_t c = 2; c <= t.size(); ++c) {
    if (count[static_cast<std::size_t>(c)] > audit.max_mult) {
      audit.max_mult = count[static_cast<std::size_t>(c)];
      audit.edge = {t.parent(c), c};
    }
  }
  return audit;
}

ChainBound path_chain_bound_check(const RealFunction& f, const Exponent& p, const Enumeration& spiral,
                                  const ComparisonTree& t) {
  if (p.is_infinite()) throw std::domain_error("chain bound is stated for finite p");
  if (spiral.kind() != EnumerationKind::spiral) throw std::invalid_argument("chain bound needs the spiral labelling");
  const double q = p.value();
  const double lattice = grad_lp(rearrange(f, spiral), p);
  const double tree = grad_lp_tree(comparison_function(f), t, p);
  return {std::pow(lattice, q), std::pow(4.0, q + 1.0) * std::pow(tree, q)};
}

}  // namespace rlab
