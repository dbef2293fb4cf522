#pragma once

// Maps from lattice edges into the comparison tree and the audits on their
// path lengths and multiplicities.
//
// Spiral: a lattice edge (i, j), i < j in spiral labels, goes to the tree path
// from i down to the smallest descendant k of i with k >= j.
// Wang-Wang: (i, j) goes to itself when it is a tree edge, otherwise to the
// tree edge (parent(j), j), which must satisfy parent(j) < i.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rlab/comparison.hpp"
#include "rlab/enumeration.hpp"
#include "rlab/rearrangement.hpp"

namespace rlab {

/// Raised when an edge map contradicts the structure it relies on.
class AuditFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Increasing tree labels x_0 < ... < x_n, consecutive ones parent/child.
struct TreePath {
  std::vector<std::int64_t> vertices;
  std::int64_t length() const { return static_cast<std::int64_t>(vertices.size()) - 1; }
};

struct TreeEdge {
  std::int64_t parent;
  std::int64_t child;
  bool operator==(const TreeEdge&) const = default;
};

/// Smallest descendant k of i with k >= j. Descendants of one generation form
/// a contiguous label interval, so generations are scanned as intervals.
/// Throws std::length_error when the tree is too small to decide.
std::int64_t smallest_descendant_at_least(const ComparisonTree& t, std::int64_t i, std::int64_t j);

TreePath psi_spiral(std::int64_t i, std::int64_t j, const ComparisonTree& t);

TreeEdge psi_wang(std::int64_t i, std::int64_t j, const ComparisonTree& t);

struct PathLengthAudit {
  std::int64_t max_len = 0;
  std::int64_t i = 0, j = 0, k = 0;  // first edge attaining max_len
  std::int64_t edges = 0;
};

/// Longest psi_spiral path over spiral lattice edges with larger label <= label_max.
PathLengthAudit path_length_audit(const ComparisonTree& t, std::int64_t label_max);

struct MultiplicityAudit {
  std::int64_t max_mult = 0;
  TreeEdge edge{0, 0};  // first tree edge attaining max_mult
  std::int64_t edges = 0;
};

/// Largest number of lattice edges (larger label <= label_max) whose image
/// contains one tree edge. `e` must be a spiral or Wang-Wang enumeration.
MultiplicityAudit multiplicity_audit(const Enumeration& e, const ComparisonTree& t, std::int64_t label_max);

struct ChainBound {
  double lhs;  // ||grad f*||_p^p on the lattice (spiral rearrangement)
  double rhs;  // 4^(p+1) ||grad f_c||_p^p on the tree
};

ChainBound path_chain_bound_check(const RealFunction& f, const Exponent& p, const Enumeration& spiral,
                                  const ComparisonTree& t);

}  // namespace rlab
