#pragma once

// Labellings of Z^d (bijections N -> Z^d), isoperimetric profiles and the
// audits that relate a labelling's prefixes to vertex-isoperimetric sets.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rlab/lattice.hpp"

namespace rlab {

enum class EnumerationKind { spiral, wang_wang, l1_random, custom };

std::string to_string(EnumerationKind kind);
/// Accepts "spiral", "wang" / "wang_wang", "l1rand" / "l1_random", "custom".
EnumerationKind parse_enumeration_kind(std::string_view name);

/// A labelling v_1, v_2, ..., v_N generated up to N. Labels are 1-based.
/// Immutable once built; reading is safe from any number of threads.
class Enumeration {
 public:
  Enumeration(int dim, EnumerationKind kind, std::vector<Point> points, std::uint64_t seed = 0);

  int dim() const { return dim_; }
  EnumerationKind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }
  std::int64_t size() const { return static_cast<std::int64_t>(points_.size()); }

  /// v_label; throws std::out_of_range beyond the generated range.
  const Point& point(std::int64_t label) const;
  std::optional<std::int64_t> label(const Point& p) const;
  /// Throws std::out_of_range when p has not been labelled yet.
  std::int64_t label_of(const Point& p) const;

  std::span<const Point> points() const { return points_; }

  /// Whether ||v_i||_1 < ||v_j||_1 implies i < j on the generated range.
  bool respects_l1() const;

 private:
  int dim_;
  EnumerationKind kind_;
  std::uint64_t seed_;
  std::vector<Point> points_;
  std::unordered_map<Point, std::int64_t, PointHash> index_;
};

// --- spiral -----------------------------------------------------------------

/// Counterclockwise square spiral: 1 -> (0,0), 2 -> (1,0), 3 -> (1,1),
/// 4 -> (0,1), 5 -> (-1,1), ... Labels 1..m^2 always fill an m x m square.
Point spiral_label(std::int64_t k);
/// Inverse of spiral_label; p must be two-dimensional.
std::int64_t spiral_index(const Point& p);

Enumeration spiral(std::int64_t n_max);

// --- l1-layered -------------------------------------------------------------

/// Points of Z^d with ||x||_1 = r in ascending lexicographic order.
std::vector<Point> l1_sphere(int dim, std::int64_t r);
std::int64_t l1_ball_size(int dim, std::int64_t r);

/// Greedy nested vertex-isoperimetric labelling of Z^2 (Wang-Wang). Within the
/// current l1 sphere it labels the vertex that adds the fewest new boundary
/// vertices; ties go to the vertex discovered earliest (smallest labelled
/// neighbour), then to the fixed direction order NE, NW, N, E, SE, W, SW, S
/// (counterclockwise inside each class). Reproduces the published first 13
/// labels and satisfies the nested-boundary property.
Enumeration wang_wang(std::int64_t n_max);

/// The same greedy rule on Z^d for any d; final ties are broken by descending
/// lexicographic order. For d = 2 this equals wang_wang. Minimality of its
/// prefixes is only known for d <= 2.
Enumeration greedy_nested(int dim, std::int64_t n_max);

/// Sphere-by-sphere enumeration with a seeded uniform shuffle inside each
/// sphere. Always generated through a complete sphere, so size() >= n_max.
Enumeration l1_random_enumeration(int dim, std::uint64_t seed, std::int64_t n_max);

Enumeration make_enumeration(EnumerationKind kind, int dim, std::uint64_t seed, std::int64_t n_max);

// --- profiles ---------------------------------------------------------------

/// n -> minimal vertex perimeter of an n-set, with the convention at(0) = 1.
struct IsoProfile {
  int dim = 2;
  std::vector<std::int64_t> values;  // values[0] = 1
  bool minimality_verified = false;
  std::string scope;  // provenance of the values

  std::int64_t at(std::int64_t n) const;
  std::int64_t max_n() const { return static_cast<std::int64_t>(values.size()) - 1; }
  bool is_monotone() const;
};

/// Entry n (1-based) is |boundary({v_1..v_n})|, for n = 1..n_max.
std::vector<std::int64_t> prefix_profile(const Enumeration& e, std::int64_t n_max);

/// Exact min |boundary(X)| over X of size n inside the closed l1 ball of the
/// given radius, for n = 1..n_max. The window minimum equals the global
/// minimum whenever an optimal set fits inside the window. Throws
/// std::runtime_error when the number of subsets exceeds `budget`.
IsoProfile brute_force_profile(int dim, int n_max, int radius, std::uint64_t budget = 2'000'000'000ull,
                               int threads = 1);

/// Vertex-isoperimetric profile of Z^2, from the cached Wang-Wang prefixes.
std::int64_t iso_z2(std::int64_t n);

/// Profile of Z^d up to n_max. d = 1, 2 are exact; for d >= 3 the values are
/// the greedy_nested prefix perimeters and minimality_verified is false.
IsoProfile lattice_profile(int dim, std::int64_t n_max);

// --- audits -----------------------------------------------------------------

struct EnumerationAudit {
  bool nested_ok = true;
  double c_min = 0.0;
  std::int64_t first_failure = 0;  // smallest n where the nested identity fails, 0 if none
  std::int64_t worst_n = 0;        // n attaining c_min
};

/// nested_ok: boundary({v_1..v_n}) = {v_{n+1}, ..., v_{n+P(n)}} for all n <= n_max.
/// c_min: max over n of (max label in boundary({v_1..v_n}) - n) / P(n),
/// where P is the ambient profile. Throws std::out_of_range when a boundary
/// vertex lies outside the generated labels.
EnumerationAudit enumeration_audit(const Enumeration& e, const IsoProfile& profile, std::int64_t n_max);
EnumerationAudit enumeration_audit(const Enumeration& e, std::int64_t n_max);

struct EdgeGap {
  double max_ratio = 0.0;
  std::int64_t m = 0;
  std::int64_t n = 0;
};

/// Max of (n - m) / sqrt(m) over spiral lattice edges (m, n), m < n, m <= m_max.
EdgeGap spiral_edge_gap_check(std::int64_t m_max);

}  // namespace rlab
