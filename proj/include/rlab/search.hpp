#pragma once

// Randomized search for functions with a large rearrangement ratio
// ||grad f*||_p / ||grad f||_p, and the tables built on top of it.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rlab/enumeration.hpp"
#include "rlab/lattice.hpp"

namespace rlab {

/// Runs fn(0..n-1) on up to `threads` workers; the order of calls is
/// unspecified, so fn must write only to its own slot. Exceptions are
/// rethrown on the caller's thread.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

/// Worker count from an explicit value, else REARRANGE_LAB_THREADS, else 1.
int resolve_threads(int requested);

/// Power ratio ||grad f*||_p^p / ||grad f||_p^p (max-edge ratio at p = inf)
/// for functions on one fixed support, with all edge lists precomputed.
class RatioEvaluator {
 public:
  RatioEvaluator(const Enumeration& e, std::vector<Point> support, const Exponent& p);

  const std::vector<Point>& support() const { return support_; }
  double operator()(const std::vector<double>& values) const;

 private:
  struct Side {
    std::vector<std::pair<int, int>> edges;  // both ends inside
    std::vector<int> outside;                // neighbours outside, per vertex
  };
  static Side side_of(const std::vector<Point>& vertices);
  double energy(const Side& s, const std::vector<double>& x) const;

  std::vector<Point> support_;
  Exponent p_;
  Side source_;
  Side target_;  // vertices v_1..v_m
  mutable std::vector<double> sorted_;
};

struct TrailEntry {
  std::int64_t evaluations;  // budget spent when the improvement was found
  double power_ratio;
};

struct SearchConfig {
  std::int64_t support_size = 5;
  std::int64_t budget = 100000;
  std::uint64_t seed = 1;
  int threads = 1;
  int window = -1;  // half-width of the sampling box; -1 picks 4 (d <= 2), 2 (d = 3), 1 (d >= 4)
  std::vector<Point> support;  // when nonempty every task uses this support
};

struct SearchReport {
  EnumerationKind kind = EnumerationKind::spiral;
  int dim = 2;
  Exponent p{1.0};
  RealFunction best{2};
  double norm_ratio = 0.0;
  double power_ratio = 0.0;  // norm_ratio^p; norm_ratio at p = inf
  std::int64_t budget_spent = 0;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
  std::vector<TrailEntry> trail;
  SearchConfig config;
};

/// Outer loop over random support patterns (mostly lattice animals) and
/// random starting values, inner loop of multiplicative coordinate ascent,
/// then a polishing round on the best supports. One budget unit is one ratio
/// evaluation. Deterministic in (enumeration, p, config) for any thread count.
SearchReport counterexample_search(const Enumeration& e, const Exponent& p, const SearchConfig& config);

/// Builds the enumeration (seeded for l1_random) and searches it.
SearchReport counterexample_search(EnumerationKind kind, int dim, const Exponent& p, const SearchConfig& config);

/// Upper bound on the norm ratio: 4^(1+1/p) spiral, 2^(1/p) Wang-Wang,
/// (c+1) (2d)^(1/p) for an audited labelling with constant c.
double theorem_upper(EnumerationKind kind, const Exponent& p, int dim = 2, double c_min = 1.0);

struct SweepRow {
  EnumerationKind kind;
  Exponent p{1.0};
  double lower_bound;  // best searched norm ratio
  double theorem_upper;
};

std::vector<SweepRow> constant_sweep(const std::vector<EnumerationKind>& kinds, const std::vector<Exponent>& ps,
                                     const SearchConfig& config);

struct DimensionRow {
  std::uint64_t seed;
  bool nested_ok;
  double c_min;
  std::int64_t audited_n;
  double bound;           // (c_min + 1) (2d)^(1/p)
  double searched_ratio;  // best norm ratio found
  bool within_bound() const { return searched_ratio <= bound + 1e-9; }
};

/// One row per seeded l1_random labelling of Z^d, d in {2, 3}.
std::vector<DimensionRow> dimension_check(int dim, const std::vector<std::uint64_t>& seeds, const Exponent& p,
                                          const SearchConfig& config);

}  // namespace rlab
