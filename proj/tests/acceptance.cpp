// Acceptance suite: one PASS/FAIL line per criterion with its runtime.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "rlab/comparison.hpp"
#include "rlab/embedding.hpp"
#include "rlab/enumeration.hpp"
#include "rlab/rayleigh.hpp"
#include "rlab/rearrangement.hpp"
#include "rlab/search.hpp"

using namespace rlab;

namespace {

constexpr double kRelTol = 1e-9;

struct Outcome {
  bool ok;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string num(double x) {
  std::ostringstream s;
  s << std::setprecision(10) << x;
  return s.str();
}

const std::vector<Exponent>& suite_exponents() {
  static const std::vector<Exponent> ps{Exponent(1),  Exponent(1.5),        Exponent(2), Exponent(3),
                                        Exponent(10), Exponent::infinity()};
  return ps;
}

/// The shared random suite: supports inside a 7 x 7 box, values uniform in (0, 1].
const std::vector<RealFunction>& random_suite() {
  static const std::vector<RealFunction> suite = [] {
    std::vector<RealFunction> out;
    Rng rng(20240101);
    for (int i = 0; i < 10000; ++i) out.push_back(rlab::testing::random_real_function(rng, 2, 7, -3));
    return out;
  }();
  return suite;
}

Outcome profile_fidelity() {
  const auto w = prefix_profile(wang_wang(100), 6);
  const bool fig = w == std::vector<std::int64_t>{4, 6, 7, 8, 8, 9};
  bool balls = true;
  for (std::int64_t k = 0; k <= 20; ++k) balls = balls && iso_z2(2 * k * (k + 1) + 1) == 4 * k + 4;
  std::string got;
  for (auto v : w) got += std::to_string(v) + " ";
  return {fig && balls, "wang prefixes " + got + "; ball values " + (balls ? "4k+4 for k<=20" : "mismatch")};
}

Outcome brute_force_agreement() {
  const IsoProfile b = brute_force_profile(2, 10, 3);
  const auto w = prefix_profile(wang_wang(200), 10);
  for (int n = 1; n <= 10; ++n)
    if (b.at(n) != w[static_cast<std::size_t>(n - 1)])
      return {false, "n=" + std::to_string(n) + " brute " + std::to_string(b.at(n)) + " wang " +
                         std::to_string(w[static_cast<std::size_t>(n - 1)])};
  return {true, "n<=10 agree"};
}

Outcome tree_fidelity() {
  const ComparisonTree t = lattice_comparison_tree(2, 6000);
  bool fig = t.children(1) == std::vector<std::int64_t>{2, 3, 4, 5} &&
             t.children(2) == std::vector<std::int64_t>{6, 7, 8} && t.children(3) == std::vector<std::int64_t>{9, 10};
  for (std::int64_t v = 2; v <= 10; ++v) fig = fig && t.parent(v) == (v <= 5 ? 1 : v <= 8 ? 2 : 3);
  for (std::int64_t n = 1; n <= 1000; ++n)
    if (!tree_boundary_check(t, n)) return {false, "boundary identity fails at n=" + std::to_string(n)};
  for (std::int64_t r = 0; r <= 50; ++r) {
    const SphereBall sb = sphere_ball_sizes(t, r);
    if (sb.sphere != (r == 0 ? 1 : 4 * r) || sb.ball != 1 + 2 * r * (r + 1))
      return {false, "sphere/ball mismatch at r=" + std::to_string(r)};
  }
  return {fig, std::string(fig ? "first 10 vertices match" : "first 10 vertices differ") +
                   "; boundary n<=1000; spheres r<=50"};
}

Outcome comparison_lemma() {
  const ComparisonTree t = lattice_comparison_tree(2, 300);
  double worst = 0.0;
  for (const RealFunction& f : random_suite())
    for (const Exponent& p : suite_exponents()) {
      const ComparisonSides s = comparison_lemma_check(f, p, t);
      worst = std::max(worst, s.lhs / s.rhs);
      if (s.lhs > s.rhs + kRelTol * s.rhs) return {false, "violated at p=" + p.str()};
    }
  return {true, "60000 cases, max lhs/rhs=" + num(worst)};
}

Outcome coarea_identity() {
  Rng rng(77);
  for (int i = 0; i < 100; ++i) {
    const ExactFunction f = rlab::testing::random_exact_function(rng, 2, 5, -2);
    for (int p : {1, 2, 3}) {
      const CoareaSides<Rational> s = coarea_check(f, Exponent(p));
      if (s.lhs != s.rhs) return {false, "function " + std::to_string(i) + " p=" + std::to_string(p)};
    }
  }
  return {true, "100 rational functions, p in {1,2,3}, exact equality"};
}

Outcome psi_audits() {
  const std::int64_t n = 10000;
  const ComparisonTree t = lattice_comparison_tree(2, 200000);
  const PathLengthAudit len = path_length_audit(t, n);
  const MultiplicityAudit ms = multiplicity_audit(spiral(n), t, n);
  bool edge_to_edge = true;
  MultiplicityAudit mw;
  try {
    mw = multiplicity_audit(wang_wang(n), t, n);
  } catch (const AuditFailure&) {
    edge_to_edge = false;
  }
  const EdgeGap gap = spiral_edge_gap_check(100000);
  const bool ok = len.max_len <= 4 && ms.max_mult <= 16 && edge_to_edge && mw.max_mult <= 2 && gap.max_ratio <= 7.0 &&
                  gap.max_ratio == 7.0 && gap.m == 1 && gap.n == 8;
  return {ok, "spiral max_len=" + std::to_string(len.max_len) + " max_mult=" + std::to_string(ms.max_mult) +
                  "; wang max_mult=" + std::to_string(mw.max_mult) + (edge_to_edge ? "" : " (not edge-to-edge)") +
                  "; edge gap " + num(gap.max_ratio) + " at (" + std::to_string(gap.m) + "," + std::to_string(gap.n) +
                  ")"};
}

Outcome theorem_bounds() {
  const Enumeration s = spiral(100);
  const Enumeration w = wang_wang(100);
  double worst_s = 0.0, worst_w = 0.0, s1 = 0.0, winf = 0.0;
  for (const RealFunction& f : random_suite()) {
    for (const Exponent& p : suite_exponents()) {
      const double rs = ps_ratio(f, s, p).norm_ratio;
      const double rw = ps_ratio(f, w, p).norm_ratio;
      const double us = theorem_upper(EnumerationKind::spiral, p);
      const double uw = theorem_upper(EnumerationKind::wang_wang, p);
      worst_s = std::max(worst_s, rs / us);
      worst_w = std::max(worst_w, rw / uw);
      if (!p.is_infinite() && p.value() == 1.0) s1 = std::max(s1, rs);
      if (p.is_infinite()) winf = std::max(winf, rw);
    }
  }
  const bool ok = worst_s <= 1.0 + kRelTol && worst_w <= 1.0 + kRelTol && s1 <= 1.0 + kRelTol && winf <= 1.0 + kRelTol;
  return {ok, "max ratio/bound spiral=" + num(worst_s) + " wang=" + num(worst_w) + "; spiral p=1 max=" + num(s1) +
                  "; wang p=inf max=" + num(winf)};
}

Outcome counterexample() {
  const Enumeration e = spiral(100);
  SearchConfig c;
  c.support_size = 5;
  c.budget = 1000000;
  c.seed = 1;
  const SearchReport r = counterexample_search(e, Exponent(2), c);
  std::vector<Point> support;
  for (const auto& [p, v] : r.best.entries()) support.push_back(p);
  const double oracle = rayleigh_oracle_p2(e, support).value;
  const bool ok = r.power_ratio >= 1.01 && std::abs(oracle - r.power_ratio) <= 1e-6;
  return {ok, "squared ratio=" + num(r.power_ratio) + " oracle=" + num(oracle) + " support=" +
                  std::to_string(support.size()) + " evaluations=" + std::to_string(r.budget_spent)};
}

Outcome abstract_theorem() {
  const EnumerationAudit wa = enumeration_audit(wang_wang(3000), 2000);
  bool ok = wa.nested_ok && wa.c_min == 1.0;
  std::string detail = "wang nested=" + std::string(wa.nested_ok ? "true" : "false") + " c_min=" + num(wa.c_min);
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 20; ++s) seeds.push_back(s);
  SearchConfig c;
  c.support_size = 5;
  c.budget = 200000;
  c.seed = 1;
  for (int d : {2, 3}) {
    double worst = 0.0, cmax = 0.0;
    for (const Exponent& p : {Exponent(1), Exponent(2), Exponent::infinity()}) {
      for (const DimensionRow& row : dimension_check(d, seeds, p, c)) {
        ok = ok && row.searched_ratio <= row.bound + 1e-9;
        worst = std::max(worst, row.searched_ratio / row.bound);
        cmax = std::max(cmax, row.c_min);
      }
    }
    detail += "; d=" + std::to_string(d) + " max c_min=" + num(cmax) + " max ratio/bound=" + num(worst);
  }
  return {ok, detail};
}

Outcome rearrangement_invariants() {
  Rng rng(31);
  const std::vector<Enumeration> es{spiral(200), wang_wang(200), l1_random_enumeration(2, 5, 200)};
  for (int i = 0; i < 1000; ++i) {
    const ExactFunction f = rlab::testing::random_exact_function(rng, 2, 7, -3);
    const Rational top = max_value(f);
    std::vector<Rational> thresholds;
    for (int k = 0; k < 20; ++k)
      thresholds.push_back(top * Rational(static_cast<std::int64_t>(1 + uniform_below(rng, 1000)), 1000));
    for (const Enumeration& e : es) {
      const ExactFunction g = rearrange(f, e);
      for (int p : {1, 2, 3})
        if (power_sum(f, p) != power_sum(g, p)) return {false, "norm changed, function " + std::to_string(i)};
      for (const Rational& s : thresholds)
        if (level_set_size(f, s) != level_set_size(g, s)) return {false, "level set changed, function " + std::to_string(i)};
    }
  }
  return {true, "1000 rational functions x 3 enumerations, p in {1,2,3}, 20 thresholds each"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "profile fidelity", 1, profile_fidelity},
      {"AC2", "brute-force agreement", 120, brute_force_agreement},
      {"AC3", "comparison tree fidelity", 5, tree_fidelity},
      {"AC4", "comparison lemma audit", 60, comparison_lemma},
      {"AC5", "coarea identity", 10, coarea_identity},
      {"AC6", "edge map audits", 60, psi_audits},
      {"AC7", "theorem bounds on random suites", 120, theorem_bounds},
      {"AC8", "counterexample reproduction", 300, counterexample},
      {"AC9", "abstract-theorem consistency", 600, abstract_theorem},
      {"AC10", "rearrangement invariants", 30, rearrangement_invariants},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.ok && in_time;
    failed += pass ? 0 : 1;
    std::cout << (pass ? "PASS " : "FAIL ") << c.id << " " << c.title << " [" << std::fixed << std::setprecision(2)
              << secs << "s < " << c.limit_seconds << "s" << (in_time ? "" : " EXCEEDED") << "] " << o.detail << "\n";
    std::cout.unsetf(std::ios::fixed);
  }
  std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << "\n";
  return failed;
}
