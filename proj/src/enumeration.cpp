#include "rlab/enumeration.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <tuple>

#include "rlab/random.hpp"

namespace rlab {

std::string to_string(EnumerationKind kind) {
  switch (kind) {
    case EnumerationKind::spiral: return "spiral";
    case EnumerationKind::wang_wang: return "wang";
    case EnumerationKind::l1_random: return "l1rand";
    case EnumerationKind::custom: return "custom";
  }
  return "custom";
}

EnumerationKind parse_enumeration_kind(std::string_view name) {
  if (name == "spiral") return EnumerationKind::spiral;
  if (name == "wang" || name == "wang_wang" || name == "wang-wang") return EnumerationKind::wang_wang;
  if (name == "l1rand" || name == "l1_random") return EnumerationKind::l1_random;
  if (name == "custom") return EnumerationKind::custom;
  throw std::invalid_argument("unknown enumeration kind '" + std::string(name) + "'");
}

Enumeration::Enumeration(int dim, EnumerationKind kind, std::vector<Point> points, std::uint64_t seed)
    : dim_(dim), kind_(kind), seed_(seed), points_(std::move(points)) {
  index_.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].dim() != dim_) throw std::invalid_argument("enumeration point of wrong dimension");
    if (!index_.emplace(points_[i], static_cast<std::int64_t>(i) + 1).second)
      throw std::invalid_argument("enumeration repeats point " + points_[i].str());
  }
}

const Point& Enumeration::point(std::int64_t label) const {
  if (label < 1 || label > size())
    throw std::out_of_range("label " + std::to_string(label) + " outside generated range [1, " +
                            std::to_string(size()) + "]");
  return points_[static_cast<std::size_t>(label - 1)];
}

std::optional<std::int64_t> Enumeration::label(const Point& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::int64_t Enumeration::label_of(const Point& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) throw std::out_of_range("point " + p.str() + " is not labelled in the generated range");
  return it->second;
}

bool Enumeration::respects_l1() const {
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (points_[i].l1() < points_[i - 1].l1()) return false;
  return true;
}

// --- spiral -----------------------------------------------------------------

namespace {

// smallest m >= 0 with m*m >= k
std::int64_t ceil_sqrt(std::int64_t k) {
  auto m = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(k)));
  while (m * m < k) ++m;
  while (m > 0 && (m - 1) * (m - 1) >= k) --m;
  return m;
}

}  // namespace

Point spiral_label(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("spiral labels start at 1");
  const std::int64_t m = ceil_sqrt(k);  // k lies on the layer completing the m x m square
  const std::int64_t t = k - (m - 1) * (m - 1);  // 1 .. 2m-1
  if (m % 2 == 0) {
    // even layer: up the right side x = j, then left along the top y = j
    const std::int64_t j = m / 2;
    if (t <= m) return Point{j, -(j - 1) + (t - 1)};
    return Point{j - (t - m), j};
  }
  // odd layer: down the left side x = -j, then right along the bottom y = -j
  const std::int64_t j = (m - 1) / 2;
  if (t <= m) return Point{-j, j - (t - 1)};
  return Point{-j + (t - m), -j};
}

std::int64_t spiral_index(const Point& p) {
  if (p.dim() != 2) throw std::invalid_argument("spiral_index needs a point of Z^2");
  const std::int64_t x = p[0];
  const std::int64_t y = p[1];
  const std::int64_t j_even = std::max({x, y, 1 - x, 1 - y});
  const std::int64_t j_odd = std::max(x < 0 ? -x : x, y < 0 ? -y : y);
  const std::int64_t m = std::min(2 * j_even, 2 * j_odd + 1);
  const std::int64_t base = (m - 1) * (m - 1);
  if (m % 2 == 0) {
    const std::int64_t j = m / 2;
    if (x == j) return base + y + j;
    return base + m + (j - x);
  }
  const std::int64_t j = (m - 1) / 2;
  if (x == -j) return base + 1 + (j - y);
  return base + m + (x + j);
}

Enumeration spiral(std::int64_t n_max) {
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(std::max<std::int64_t>(n_max, 0)));
  for (std::int64_t k = 1; k <= n_max; ++k) pts.push_back(spiral_label(k));
  return Enumeration(2, EnumerationKind::spiral, std::move(pts));
}

// --- l1-layered -------------------------------------------------------------

namespace {

void sphere_rec(int dim, int axis, std::int64_t remaining, Point& cur, std::vector<Point>& out) {
  if (axis == dim - 1) {
    if (remaining == 0) {
      cur[axis] = 0;
      out.push_back(cur);
    } else {
      cur[axis] = -remaining;
      out.push_back(cur);
      cur[axis] = remaining;
      out.push_back(cur);
    }
    return;
  }
  for (std::int64_t x = -remaining; x <= remaining; ++x) {
    cur[axis] = x;
    sphere_rec(dim, axis + 1, remaining - (x < 0 ? -x : x), cur, out);
  }
}

}  // namespace

std::vector<Point> l1_sphere(int dim, std::int64_t r) {
  if (r < 0) throw std::invalid_argument("sphere radius must be nonnegative");
  std::vector<Point> out;
  Point cur = Point::origin(dim);
  sphere_rec(dim, 0, r, cur, out);
  return out;
}

std::int64_t l1_ball_size(int dim, std::int64_t r) {
  // |B_d(r)| = sum_k 2^k C(d,k) C(r,k)
  std::int64_t total = 0;
  std::int64_t cdk = 1;  // C(d,k)
  std::int64_t crk = 1;  // C(r,k)
  std::int64_t pow2 = 1;
  for (int k = 0; k <= dim; ++k) {
    total += pow2 * cdk * crk;
    cdk = cdk * (dim - k) / (k + 1);
    crk = crk * (r - k) / (k + 1);
    pow2 *= 2;
    if (crk == 0) break;
  }
  return total;
}

namespace {

// Direction-class rank for ties in Z^2: NE, NW, N, E, SE, W, SW, S, each
// counterclockwise.
std::pair<int, std::int64_t> z2_rank(const Point& q) {
  const std::int64_t x = q[0];
  const std::int64_t y = q[1];
  if (x > 0 && y > 0) return {0, y};
  if (x < 0 && y > 0) return {1, -y};
  if (x == 0 && y > 0) return {2, 0};
  if (x > 0 && y == 0) return {3, 0};
  if (x > 0 && y < 0) return {4, y};
  if (x < 0 && y == 0) return {5, 0};
  if (x < 0 && y < 0) return {6, -y};
  return {7, 0};
}

bool rank_before(const Point& a, const Point& b) {
  if (a.dim() == 2) return z2_rank(a) < z2_rank(b);
  return b < a;
}

struct FrontierEntry {
  std::int64_t discovered_by;
  int fresh;  // neighbours neither labelled nor on the frontier
};

std::vector<Point> greedy_nested_points(int dim, std::int64_t n_max) {
  std::vector<Point> order;
  if (n_max < 1) return order;
  order.reserve(static_cast<std::size_t>(n_max));
  PointSet labelled;
  std::unordered_map<Point, FrontierEntry, PointHash> frontier;
  std::map<std::int64_t, PointSet> by_norm;

  auto add_to_frontier = [&](const Point& z, std::int64_t discoverer) {
    int fresh = 0;
    for (const Point& w : neighbors(z)) {
      if (labelled.count(w)) continue;
      auto it = frontier.find(w);
      if (it == frontier.end()) {
        ++fresh;
      } else {
        --it->second.fresh;
      }
    }
    frontier.emplace(z, FrontierEntry{discoverer, fresh});
    by_norm[z.l1()].insert(z);
  };

  auto label_point = [&](const Point& v) {
    order.push_back(v);
    labelled.insert(v);
    const auto label = static_cast<std::int64_t>(order.size());
    if (frontier.erase(v)) {
      auto it = by_norm.find(v.l1());
      it->second.erase(v);
      if (it->second.empty()) by_norm.erase(it);
    }
    for (const Point& z : neighbors(v)) {
      if (!labelled.count(z) && !frontier.count(z)) add_to_frontier(z, label);
    }
  };

  label_point(Point::origin(dim));
  while (static_cast<std::int64_t>(order.size()) < n_max) {
    const PointSet& sphere = by_norm.begin()->second;
    const Point* best = nullptr;
    const FrontierEntry* best_entry = nullptr;
    for (const Point& q : sphere) {
      const FrontierEntry& fe = frontier.at(q);
      if (!best) {
        best = &q;
        best_entry = &fe;
        continue;
      }
      const auto key_q = std::tie(fe.fresh, fe.discovered_by);
      const auto key_b = std::tie(best_entry->fresh, best_entry->discovered_by);
      if (key_q < key_b || (key_q == key_b && rank_before(q, *best))) {
        best = &q;
        best_entry = &fe;
      }
    }
    const Point chosen = *best;
    label_point(chosen);
  }
  return order;
}

}  // namespace

Enumeration wang_wang(std::int64_t n_max) {
  return Enumeration(2, EnumerationKind::wang_wang, greedy_nested_points(2, n_max));
}

Enumeration greedy_nested(int dim, std::int64_t n_max) {
  if (dim == 2) return wang_wang(n_max);
  return Enumeration(dim, EnumerationKind::custom, greedy_nested_points(dim, n_max));
}

Enumeration l1_random_enumeration(int dim, std::uint64_t seed, std::int64_t n_max) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  Rng rng(seed);
  std::vector<Point> pts;
  for (std::int64_t r = 0; static_cast<std::int64_t>(pts.size()) < std::max<std::int64_t>(n_max, 1); ++r) {
    auto sphere = l1_sphere(dim, r);
    shuffle(sphere, rng);
    pts.insert(pts.end(), sphere.begin(), sphere.end());
  }
  return Enumeration(dim, EnumerationKind::l1_random, std::move(pts), seed);
}

Enumeration make_enumeration(EnumerationKind kind, int dim, std::uint64_t seed, std::int64_t n_max) {
  switch (kind) {
    case EnumerationKind::spiral:
      if (dim != 2) throw std::invalid_argument("the spiral labelling is defined on Z^2 only");
      return spiral(n_max);
    case EnumerationKind::wang_wang:
      if (dim != 2) throw std::invalid_argument("the Wang-Wang labelling is defined on Z^2 only");
      return wang_wang(n_max);
    case EnumerationKind::l1_random:
      return l1_random_enumeration(dim, seed, n_max);
    case EnumerationKind::custom:
      return greedy_nested(dim, n_max);
  }
  throw std::invalid_argument("unknown enumeration kind");
}

// --- profiles ---------------------------------------------------------------

std::int64_t IsoProfile::at(std::int64_t n) const {
  if (n == 0) return 1;
  if (n < 0 || n > max_n())
    throw std::out_of_range("isoperimetric profile queried at n = " + std::to_string(n) + " beyond " +
                            std::to_string(max_n()));
  return values[static_cast<std::size_t>(n)];
}

bool IsoProfile::is_monotone() const {
  for (std::size_t n = 2; n < values.size(); ++n)
    if (values[n] < values[n - 1]) return false;
  return true;
}

std::vector<std::int64_t> prefix_profile(const Enumeration& e, std::int64_t n_max) {
  if (n_max > e.size()) throw std::out_of_range("enumeration shorter than requested profile length");
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(n_max, 0)));
  PointSet prefix;
  PointSet boundary;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const Point& v = e.point(n);
    prefix.insert(v);
    boundary.erase(v);
    for (const Point& z : neighbors(v))
      if (!prefix.count(z)) boundary.insert(z);
    out.push_back(static_cast<std::int64_t>(boundary.size()));
  }
  return out;
}

namespace {

// saturating sum of C(w, n) for n = 1..n_max
std::uint64_t subset_count(int w, int n_max) {
  long double total = 0;
  long double c = 1;
  for (int n = 1; n <= n_max; ++n) {
    c = c * (w - n + 1) / n;
    total += c;
  }
  if (total > 1.8e19L) return ~std::uint64_t{0};
  return static_cast<std::uint64_t>(total);
}

struct BruteForceWindow {
  int window_size;                    // window points are bits 0..window_size-1
  std::vector<std::uint64_t> nbmask;  // per window point, its neighbours as bits
};

void brute_rec(const BruteForceWindow& w, int start, int size, int n_max, std::uint64_t set, std::uint64_t reach,
               std::vector<std::int64_t>& best) {
  for (int i = start; i < w.window_size; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    const std::uint64_t s2 = set | bit;
    const std::uint64_t r2 = reach | w.nbmask[static_cast<std::size_t>(i)];
    const auto perim = static_cast<std::int64_t>(std::popcount(r2 & ~s2));
    auto& slot = best[static_cast<std::size_t>(size + 1)];
    if (perim < slot) slot = perim;
    if (size + 1 < n_max) brute_rec(w, i + 1, size + 1, n_max, s2, r2, best);
  }
}

}  // namespace

IsoProfile brute_force_profile(int dim, int n_max, int radius, std::uint64_t budget, int threads) {
  if (n_max < 1) throw std::invalid_argument("brute_force_profile: n_max must be positive");
  std::vector<Point> region;
  for (int r = 0; r <= radius + 1; ++r) {
    auto s = l1_sphere(dim, r);
    region.insert(region.end(), s.begin(), s.end());
  }
  const int window_size = static_cast<int>(l1_ball_size(dim, radius));
  if (region.size() > 64)
    throw std::runtime_error("brute_force_profile: window plus its boundary exceeds 64 vertices");
  if (n_max > window_size) throw std::invalid_argument("brute_force_profile: n_max exceeds window size");
  const std::uint64_t count = subset_count(window_size, n_max);
  if (count > budget)
    throw std::runtime_error("brute_force_profile: " + std::to_string(count) + " subsets exceed the budget of " +
                             std::to_string(budget));

  std::unordered_map<Point, int, PointHash> idx;
  for (std::size_t i = 0; i < region.size(); ++i) idx.emplace(region[i], static_cast<int>(i));
  BruteForceWindow w{window_size, std::vector<std::uint64_t>(static_cast<std::size_t>(window_size), 0)};
  for (int i = 0; i < window_size; ++i)
    for (const Point& z : neighbors(region[static_cast<std::size_t>(i)]))
      w.nbmask[static_cast<std::size_t>(i)] |= std::uint64_t{1} << idx.at(z);

  // Subsets are split by their smallest element; per-worker minima merge by min.
  const int workers = std::max(1, threads);
  std::vector<std::vector<std::int64_t>> partial(
      static_cast<std::size_t>(workers),
      std::vector<std::int64_t>(static_cast<std::size_t>(n_max) + 1, std::numeric_limits<std::int64_t>::max()));
  auto work = [&](int worker) {
    auto& best = partial[static_cast<std::size_t>(worker)];
    for (int first = worker; first < window_size; first += workers) {
      const std::uint64_t bit = std::uint64_t{1} << first;
      const std::uint64_t reach = w.nbmask[static_cast<std::size_t>(first)];
      best[1] = std::min<std::int64_t>(best[1], std::popcount(reach & ~bit));
      if (n_max > 1) brute_rec(w, first + 1, 1, n_max, bit, reach, best);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  IsoProfile out;
  out.dim = dim;
  out.values.assign(static_cast<std::size_t>(n_max) + 1, std::numeric_limits<std::int64_t>::max());
  out.values[0] = 1;
  for (const auto& b : partial)
    for (int n = 1; n <= n_max; ++n)
      out.values[static_cast<std::size_t>(n)] = std::min(out.values[static_cast<std::size_t>(n)], b[static_cast<std::size_t>(n)]);
  out.minimality_verified = true;
  out.scope = "exhaustive over subsets of the closed l1 ball of radius " + std::to_string(radius) + " in Z^" +
              std::to_string(dim) + "; equals the global minimum when an optimal set fits in the window";
  return out;
}

namespace {

struct ProfileCache {
  std::mutex mutex;
  std::map<int, std::vector<std::int64_t>> by_dim;  // index n, entry 0 = 1
};

ProfileCache& profile_cache() {
  static ProfileCache cache;
  return cache;
}

const std::vector<std::int64_t>& cached_profile(int dim, std::int64_t n_max, std::unique_lock<std::mutex>&) {
  auto& entry = profile_cache().by_dim[dim];
  if (static_cast<std::int64_t>(entry.size()) <= n_max) {
    const std::int64_t target = std::max<std::int64_t>({n_max, 2 * static_cast<std::int64_t>(entry.size()), 1024});
    std::vector<std::int64_t> fresh{1};
    if (dim == 1) {
      fresh.resize(static_cast<std::size_t>(target) + 1, 2);
      fresh[0] = 1;
    } else {
      const auto pp = prefix_profile(greedy_nested(dim, target), target);
      fresh.insert(fresh.end(), pp.begin(), pp.end());
    }
    entry = std::move(fresh);
  }
  return entry;
}

}  // namespace

std::int64_t iso_z2(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("iso_z2: n must be nonnegative");
  if (n == 0) return 1;
  std::unique_lock lock(profile_cache().mutex);
  return cached_profile(2, n, lock)[static_cast<std::size_t>(n)];
}

IsoProfile lattice_profile(int dim, std::int64_t n_max) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("lattice_profile: bad dimension");
  IsoProfile out;
  out.dim = dim;
  {
    std::unique_lock lock(profile_cache().mutex);
    const auto& values = cached_profile(dim, n_max, lock);
    out.values.assign(values.begin(), values.begin() + n_max + 1);
  }
  out.minimality_verified = dim <= 2;
  out.scope = dim <= 2 ? "nested Wang-Wang prefixes" : "greedy nested prefixes, minimality unverified";
  return out;
}

// --- audits -----------------------------------------------------------------

EnumerationAudit enumeration_audit(const Enumeration& e, const IsoProfile& profile, std::int64_t n_max) {
  EnumerationAudit audit;
  PointSet prefix;
  std::unordered_map<Point, std::int64_t, PointHash> boundary;
  std::set<std::int64_t> labels;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const Point& v = e.point(n);
    prefix.insert(v);
    if (auto it = boundary.find(v); it != boundary.end()) {
      labels.erase(it->second);
      boundary.erase(it);
    }
    for (const Point& z : neighbors(v)) {
      if (prefix.count(z) || boundary.count(z)) continue;
      const std::int64_t l = e.label_of(z);
      boundary.emplace(z, l);
      labels.insert(l);
    }
    const std::int64_t p = profile.at(n);
    const std::int64_t reach = *labels.rbegin() - n;
    const bool nested = static_cast<std::int64_t>(labels.size()) == p && reach == p;
    if (!nested && audit.nested_ok) {
      audit.nested_ok = false;
      audit.first_failure = n;
    }
    const double c = static_cast<double>(reach) / static_cast<double>(p);
    if (c > audit.c_min) {
      audit.c_min = c;
      audit.worst_n = n;
    }
  }
  return audit;
}

EnumerationAudit enumeration_audit(const Enumeration& e, std::int64_t n_max) {
  return enumeration_audit(e, lattice_profile(e.dim(), n_max), n_max);
}

EdgeGap spiral_edge_gap_check(std::int64_t m_max) {
  EdgeGap best;
  for (std::int64_t m = 1; m <= m_max; ++m) {
    const Point p = spiral_label(m);
    const double root = std::sqrt(static_cast<double>(m));
    for (const Point& q : neighbors(p)) {
      const std::int64_t n = spiral_index(q);
      if (n <= m) continue;
      const double ratio = static_cast<double>(n - m) / root;
      if (ratio > best.max_ratio) best = {ratio, m, n};
    }
  }
  return best;
}

}  // namespace rlab
