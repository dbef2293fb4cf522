#pragma once

// Rearrangement along an enumeration: the k-th largest value of |f| is placed
// on v_k.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rlab/enumeration.hpp"
#include "rlab/lattice.hpp"

namespace rlab {

/// f* with f*(v_k) = k-th largest value of f. Throws std::length_error when
/// the enumeration has fewer labels than f has support points.
template <class Scalar>
LatticeFunction<Scalar> rearrange(const LatticeFunction<Scalar>& f, const Enumeration& e) {
  if (f.dim() != e.dim()) throw std::invalid_argument("function and enumeration dimensions differ");
  const auto m = static_cast<std::int64_t>(f.size());
  if (e.size() < m)
    throw std::length_error("enumeration generated to " + std::to_string(e.size()) + " labels, support has " +
                            std::to_string(m) + " points");

  struct Item {
    const Point* where;
    const Scalar* value;
    std::int64_t label;  // label of the source vertex, or max when unlabelled
  };
  std::vector<Item> items;
  items.reserve(f.size());
  for (const auto& [p, v] : f.entries())
    items.push_back({&p, &v, e.label(p).value_or(std::numeric_limits<std::int64_t>::max())});
  // equal values: by source label, then by point; f* only sees the values
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (*a.value != *b.value) return *a.value > *b.value;
    if (a.label != b.label) return a.label < b.label;
    return *a.where < *b.where;
  });

  LatticeFunction<Scalar> out(f.dim());
  for (std::int64_t k = 1; k <= m; ++k) out.set(e.point(k), *items[static_cast<std::size_t>(k - 1)].value);
  return out;
}

struct RatioReport {
  double norm_ratio;   // ||grad f*||_p / ||grad f||_p
  double power_ratio;  // norm_ratio^p; equals norm_ratio at p = inf
  double grad_f;
  double grad_rearranged;
};

/// Throws std::invalid_argument when ||grad f||_p = 0 (only for f = 0).
template <class Scalar>
RatioReport ps_ratio(const LatticeFunction<Scalar>& f, const Enumeration& e, const Exponent& p) {
  const double den = grad_lp(f, p);
  if (!(den > 0.0)) throw std::invalid_argument("ratio undefined: ||grad f|| vanishes");
  const double num = grad_lp(rearrange(f, e), p);
  const double r = num / den;
  return {r, p.is_infinite() ? r : std::pow(r, p.value()), den, num};
}

/// |{v : f(v) >= s}| for s > 0.
template <class Scalar>
std::size_t level_set_size(const LatticeFunction<Scalar>& f, const Scalar& s) {
  return static_cast<std::size_t>(std::count_if(f.entries().begin(), f.entries().end(),
                                                [&](const auto& kv) { return !(kv.second < s); }));
}

}  // namespace rlab
