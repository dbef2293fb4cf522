#include "rlab/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "rlab/function_io.hpp"
#include "rlab/random.hpp"
#include "rlab/rearrangement.hpp"

namespace rlab {

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, n); ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("REARRANGE_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<int>(v);
  }
  return 1;
}

// --- evaluator --------------------------------------------------------------

RatioEvaluator::Side RatioEvaluator::side_of(const std::vector<Point>& vertices) {
  std::unordered_map<Point, int, PointHash> index;
  for (std::size_t i = 0; i < vertices.size(); ++i) index.emplace(vertices[i], static_cast<int>(i));
  Side s;
  s.outside.assign(vertices.size(), 0);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (const Point& q : neighbors(vertices[i])) {
      const auto it = index.find(q);
      if (it == index.end())
        ++s.outside[i];
      else if (static_cast<int>(i) < it->second)
        s.edges.emplace_back(static_cast<int>(i), it->second);
    }
  }
  return s;
}

RatioEvaluator::RatioEvaluator(const Enumeration& e, std::vector<Point> support, const Exponent& p)
    : support_(std::move(support)), p_(p) {
  if (support_.empty()) throw std::invalid_argument("empty support");
  const auto m = static_cast<std::int64_t>(support_.size());
  if (e.size() < m) throw std::length_error("enumeration shorter than the support");
  std::vector<Point> targets;
  for (std::int64_t k = 1; k <= m; ++k) targets.push_back(e.point(k));
  source_ = side_of(support_);
  target_ = side_of(targets);
  sorted_.resize(support_.size());
}

double RatioEvaluator::energy(const Side& s, const std::vector<double>& x) const {
  if (p_.is_infinite()) {
    double top = 0.0;
    for (const auto& [a, b] : s.edges) top = std::max(top, std::abs(x[a] - x[b]));
    for (std::size_t i = 0; i < x.size(); ++i)
      if (s.outside[i] > 0) top = std::max(top, x[i]);
    return top;
  }
  const double q = p_.value();
  auto power = [q](double t) { return q == 1.0 ? t : q == 2.0 ? t * t : std::pow(t, q); };
  double total = 0.0;
  for (const auto& [a, b] : s.edges) total += power(std::abs(x[a] - x[b]));
  for (std::size_t i = 0; i < x.size(); ++i) total += s.outside[i] * power(x[i]);
  return total;
}

double RatioEvaluator::operator()(const std::vector<double>& values) const {
  std::copy(values.begin(), values.end(), sorted_.begin());
  std::sort(sorted_.begin(), sorted_.end(), std::greater<double>());
  return energy(target_, sorted_) / energy(source_, values);
}

// --- search -----------------------------------------------------------------

namespace {

struct TaskResult {
  std::vector<Point> support;
  std::vector<double> values;
  double score = -1.0;
  std::int64_t evaluations = 0;
  std::vector<TrailEntry> trail;  // local evaluation counts
};

int default_window(int dim) { return dim <= 2 ? 4 : dim == 3 ? 2 : 1; }

std::vector<Point> window_points(int dim, int h) {
  std::vector<Point> out;
  Point p = Point::origin(dim);
  for (int i = 0; i < dim; ++i) p[i] = -h;
  while (true) {
    out.push_back(p);
    int i = dim - 1;
    while (i >= 0 && p[i] == h) p[i--] = -h;
    if (i < 0) break;
    ++p[i];
  }
  return out;
}

std::vector<Point> random_support(const std::vector<Point>& window, std::int64_t max_size, Rng& rng) {
  const auto cap = static_cast<std::int64_t>(window.size());
  std::int64_t size = std::min(max_size, cap);
  if (size > 2 && uniform_below(rng, 4) == 0) size = 2 + static_cast<std::int64_t>(uniform_below(rng, size - 1));
  std::vector<Point> chosen;
  PointSet in;
  if (uniform_below(rng, 10) == 0) {
    while (static_cast<std::int64_t>(chosen.size()) < size) {
      const Point& p = window[uniform_below(rng, window.size())];
      if (in.insert(p).second) chosen.push_back(p);
    }
    return chosen;
  }
  const PointSet box(window.begin(), window.end());
  const Point start = window[uniform_below(rng, window.size())];
  chosen.push_back(start);
  in.insert(start);
  std::vector<Point> frontier;
  PointSet seen = in;
  auto extend = [&](const Point& p) {
    for (const Point& q : neighbors(p))
      if (box.count(q) && seen.insert(q).second) frontier.push_back(q);
  };
  extend(start);
  while (static_cast<std::int64_t>(chosen.size()) < size && !frontier.empty()) {
    const std::size_t k = uniform_below(rng, frontier.size());
    const Point p = frontier[k];
    frontier[k] = frontier.back();
    frontier.pop_back();
    chosen.push_back(p);
    in.insert(p);
    extend(p);
  }
  return chosen;
}

void normalize(std::vector<double>& x) {
  const double top = *std::max_element(x.begin(), x.end());
  for (double& v : x) v /= top;
}

/// Multiplicative coordinate ascent from x.
void ascend(const RatioEvaluator& eval, TaskResult& r, std::int64_t budget, double delta, Rng& rng) {
  std::vector<double>& x = r.values;
  const std::size_t m = x.size();
  auto charge = [&](const std::vector<double>& y) {
    ++r.evaluations;
    return eval(y);
  };
  normalize(x);
  r.score = charge(x);
  r.trail.push_back({r.evaluations, r.score});
  std::vector<double> y(m);
  auto attempt = [&](const std::vector<double>& cand) {
    if (r.evaluations >= budget) return false;
    const double v = charge(cand);
    if (v > r.score) {
      x = cand;
      normalize(x);
      r.score = v;
      r.trail.push_back({r.evaluations, v});
      return true;
    }
    return false;
  };
  while (r.evaluations < budget && delta > 1e-10) {
    bool improved = false;
    const double up = 1.0 + delta;
    for (std::size_t i = 0; i < m; ++i) {
      for (double s : {up, 1.0 / up}) {
        y = x;
        y[i] *= s;
        if (attempt(y)) {
          improved = true;
          break;
        }
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        for (double s : {up, 1.0 / up}) {
          y = x;
          y[i] *= s;
          y[j] *= s;
          if (attempt(y)) {
            improved = true;
            break;
          }
        }
      }
    }
    y = x;
    for (std::size_t i = 0; i < m; ++i) y[i] *= std::exp(delta * (2.0 * uniform01(rng) - 1.0));
    improved = attempt(y) || improved;
    if (!improved) {
      for (std::size_t i = 0; i < m && !improved; ++i) {
        for (std::size_t j = 0; j < m && !improved; ++j) {
          if (i == j || x[i] == x[j]) continue;
          y = x;
          y[i] = x[j];
          improved = attempt(y);
        }
      }
    }
    if (!improved) delta *= 0.5;
    if (r.evaluations >= budget) break;
  }
}

std::string serialized(const std::vector<Point>& support, const std::vector<double>& values) {
  RealFunction f(support.front().dim());
  for (std::size_t i = 0; i < support.size(); ++i) f.set(support[i], values[i]);
  return function_to_json(f).dump();
}

/// Whether a beats b: larger score, then smaller support, then the smaller
/// serialized function.
bool better(const TaskResult& a, const TaskResult& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.support.size() != b.support.size()) return a.support.size() < b.support.size();
  return serialized(a.support, a.values) < serialized(b.support, b.values);
}

/// Translation class of a support.
std::vector<Point> shape_key(std::vector<Point> support) {
  std::sort(support.begin(), support.end());
  const Point base = support.front();
  for (Point& p : support)
    for (int i = 0; i < p.dim(); ++i) p[i] -= base[i];
  return support;
}

constexpr std::int64_t kTaskBudget = 4000;
constexpr std::size_t kPolishShapes = 4;

}  // namespace

SearchReport counterexample_search(const Enumeration& e, const Exponent& p, const SearchConfig& config) {
  if (config.support_size < 2) throw std::invalid_argument("support_size must be at least 2");
  if (config.budget < 1) throw std::invalid_argument("budget must be at least 1");
  if (e.size() < config.support_size) throw std::length_error("enumeration shorter than the support size");
  for (const Point& q : config.support)
    if (q.dim() != e.dim()) throw std::invalid_argument("fixed support and enumeration dimensions differ");
  const auto t0 = std::chrono::steady_clock::now();
  const int h = config.window >= 0 ? config.window : default_window(e.dim());
  const std::vector<Point> window = window_points(e.dim(), h);
  const int threads = std::max(1, config.threads);

  const std::int64_t per_task = std::min(config.budget, kTaskBudget);
  const std::int64_t explore = std::max<std::int64_t>(1, (config.budget * 3 / 4) / per_task);
  const std::int64_t polish = (config.budget - explore * per_task) / per_task;

  std::vector<TaskResult> results(static_cast<std::size_t>(explore));
  parallel_for(results.size(), threads, [&](std::size_t i) {
    Rng rng(derive_seed(config.seed, i));
    TaskResult& r = results[i];
    r.support = config.support.empty() ? random_support(window, config.support_size, rng) : config.support;
    r.values.resize(r.support.size());
    for (double& v : r.values) v = uniform_open_closed(rng);
    const RatioEvaluator eval(e, r.support, p);
    ascend(eval, r, per_task, 0.5, rng);
  });

  if (polish > 0) {
    std::vector<std::size_t> order(results.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return better(results[a], results[b]); });
    std::vector<std::size_t> top;
    std::map<std::vector<Point>, bool> seen;
    for (std::size_t i : order) {
      if (top.size() == kPolishShapes) break;
      if (seen.emplace(shape_key(results[i].support), true).second) top.push_back(i);
    }
    std::vector<TaskResult> polished(static_cast<std::size_t>(polish));
    parallel_for(polished.size(), threads, [&](std::size_t k) {
      const std::size_t index = static_cast<std::size_t>(explore) + k;
      Rng rng(derive_seed(config.seed, index));
      const TaskResult& base = results[top[k % top.size()]];
      TaskResult& r = polished[k];
      r.support = base.support;
      double delta = 0.5;
      if (k < top.size()) {
        r.values = base.values;
        delta = 0.01;
      } else {
        r.values.resize(r.support.size());
        for (double& v : r.values) v = uniform_open_closed(rng);
      }
      const RatioEvaluator eval(e, r.support, p);
      ascend(eval, r, per_task, delta, rng);
    });
    for (auto& r : polished) results.push_back(std::move(r));
  }

  SearchReport report;
  report.kind = e.kind();
  report.dim = e.dim();
  report.p = p;
  report.seed = config.seed;
  report.config = config;
  report.config.window = h;
  std::size_t best = 0;
  double running = -1.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (const TrailEntry& t : results[i].trail) {
      if (t.power_ratio > running) {
        running = t.power_ratio;
        report.trail.push_back({report.budget_spent + t.evaluations, t.power_ratio});
      }
    }
    report.budget_spent += results[i].evaluations;
    if (i > 0 && better(results[i], results[best])) best = i;
  }

  RealFunction f(e.dim());
  for (std::size_t i = 0; i < results[best].support.size(); ++i) f.set(results[best].support[i], results[best].values[i]);
  const RatioReport check = ps_ratio(f, e, p);
  report.best = std::move(f);
  report.norm_ratio = check.norm_ratio;
  report.power_ratio = check.power_ratio;
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

SearchReport counterexample_search(EnumerationKind kind, int dim, const Exponent& p, const SearchConfig& config) {
  const Enumeration e = make_enumeration(kind, dim, config.seed, std::max<std::int64_t>(config.support_size, 64));
  return counterexample_search(e, p, config);
}

double theorem_upper(EnumerationKind kind, const Exponent& p, int dim, double c_min) {
  const double inv = p.is_infinite() ? 0.0 : 1.0 / p.value();
  switch (kind) {
    case EnumerationKind::spiral:
      return std::pow(4.0, 1.0 + inv);
    case EnumerationKind::wang_wang:
      return std::pow(2.0, inv);
    default:
      return (c_min + 1.0) * std::pow(2.0 * dim, inv);
  }
}

namespace {

struct AuditedLabelling {
  Enumeration e;
  EnumerationAudit audit;
  std::int64_t n;
};

AuditedLabelling audited_l1_random(int dim, std::uint64_t seed) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("dimension check supports d = 2 and d = 3");
  const std::int64_t r = dim == 2 ? 9 : 5;
  const std::int64_t n = l1_ball_size(dim, r);
  Enumeration e = l1_random_enumeration(dim, seed, l1_ball_size(dim, r + 1));
  const EnumerationAudit audit = enumeration_audit(e, lattice_profile(dim, n), n);
  return {std::move(e), audit, n};
}

}  // namespace

std::vector<SweepRow> constant_sweep(const std::vector<EnumerationKind>& kinds, const std::vector<Exponent>& ps,
                                     const SearchConfig& config) {
  std::vector<SweepRow> rows;
  for (EnumerationKind kind : kinds) {
    if (kind == EnumerationKind::custom) throw std::invalid_argument("sweep needs a generated enumeration kind");
    const bool l1 = kind == EnumerationKind::l1_random;
    const AuditedLabelling audited =
        l1 ? audited_l1_random(2, config.seed)
           : AuditedLabelling{make_enumeration(kind, 2, config.seed, std::max<std::int64_t>(config.support_size, 64)),
                              {}, 0};
    for (const Exponent& p : ps) {
      const SearchReport r = counterexample_search(audited.e, p, config);
      rows.push_back({kind, p, r.norm_ratio, theorem_upper(kind, p, 2, audited.audit.c_min)});
    }
  }
  return rows;
}

std::vector<DimensionRow> dimension_check(int dim, const std::vector<std::uint64_t>& seeds, const Exponent& p,
                                          const SearchConfig& config) {
  std::vector<DimensionRow> rows;
  for (std::uint64_t seed : seeds) {
    const AuditedLabelling a = audited_l1_random(dim, seed);
    const SearchReport r = counterexample_search(a.e, p, config);
    rows.push_back({seed, a.audit.nested_ok, a.audit.c_min, a.n,
                    theorem_upper(EnumerationKind::l1_random, p, dim, a.audit.c_min), r.norm_ratio});
  }
  return rows;
}

}  // namespace rlab
