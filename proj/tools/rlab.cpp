// Command-line front end: enumerate, profile, ctree, rearrange, ratio, audit,
// search, sweep, dimcheck.
//
// Exit codes: 0 success, 1 an audited contract failed, 2 usage error or
// malformed input.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rlab/comparison.hpp"
#include "rlab/embedding.hpp"
#include "rlab/enumeration.hpp"
#include "rlab/function_io.hpp"
#include "rlab/rayleigh.hpp"
#include "rlab/rearrangement.hpp"
#include "rlab/search.hpp"

using namespace rlab;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kContract = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal; integral values keep a trailing ".0".
std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

struct Options {
  std::string subcommand;
  std::string kind = "spiral";
  std::string graph = "z2";
  std::string format = "csv";
  std::string check;
  std::string p = "2";
  std::string ps = "1,1.5,2,3,inf";
  std::string enums = "spiral,wang";
  std::string seeds;
  std::string in;
  std::string out;
  int dim = 2;
  std::int64_t n = 10;
  std::int64_t support = 5;
  std::int64_t budget = 100000;
  std::uint64_t seed = 1;
  int window = -1;
  int threads = 0;
  int seed_count = 20;

  json config() const {
    json c = {{"subcommand", subcommand}, {"version", RLAB_VERSION}};
    if (subcommand == "enumerate" || subcommand == "profile") {
      c["kind"] = kind;
      c["d"] = dim;
      c["seed"] = seed;
      c["n"] = n;
    } else if (subcommand == "ctree") {
      c["graph"] = graph;
      c["n"] = n;
      c["format"] = format;
    } else if (subcommand == "rearrange" || subcommand == "ratio") {
      c["enum"] = kind;
      c["seed"] = seed;
      c["in"] = in;
      if (subcommand == "ratio") c["p"] = p;
    } else if (subcommand == "audit") {
      c["check"] = check;
      c["n"] = n;
      c["enum"] = kind;
    } else if (subcommand == "search") {
      c["enum"] = kind;
      c["d"] = dim;
      c["p"] = p;
      c["support"] = support;
      c["budget"] = budget;
      c["seed"] = seed;
      c["window"] = window;
    } else if (subcommand == "sweep") {
      c["enums"] = enums;
      c["ps"] = ps;
      c["support"] = support;
      c["budget"] = budget;
      c["seed"] = seed;
    } else if (subcommand == "dimcheck") {
      c["d"] = dim;
      c["p"] = p;
      c["seeds"] = seeds.empty() ? "1.." + std::to_string(seed_count) : seeds;
      c["support"] = support;
      c["budget"] = budget;
      c["seed"] = seed;
    }
    return c;
  }

  /// First line of every CSV artifact.
  std::string csv_comment() const { return "# rlab " + config().dump() + "\n"; }
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

Exponent parse_p(const std::string& text) {
  try {
    return Exponent::parse(text);
  } catch (const std::exception& e) {
    throw UsageError("--p: " + std::string(e.what()));
  }
}

EnumerationKind parse_kind(const std::string& text) {
  try {
    return parse_enumeration_kind(text);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + o.out);
  f << text;
}

std::int64_t max_label_needed(const AnyFunction& f) {
  return std::visit([](const auto& g) { return static_cast<std::int64_t>(g.size()); }, f);
}

Enumeration enumeration_for(const Options& o, EnumerationKind kind, int dim, std::int64_t n) {
  if ((kind == EnumerationKind::spiral || kind == EnumerationKind::wang_wang) && dim != 2)
    throw UsageError(to_string(kind) + " is defined on Z^2 only");
  if (kind == EnumerationKind::custom) throw UsageError("custom enumerations cannot be generated");
  return make_enumeration(kind, dim, o.seed, std::max<std::int64_t>(n, 1));
}

/// Comparison tree of Z^2 grown until `fn` no longer runs out of vertices.
template <class Fn>
auto with_tree(std::int64_t n, Fn&& fn) {
  for (std::int64_t size = 8 * n + 64;; size *= 2) {
    try {
      return fn(lattice_comparison_tree(2, size));
    } catch (const std::length_error&) {
    }
  }
}

// --- subcommands ------------------------------------------------------------

int run_enumerate(const Options& o) {
  const Enumeration e = enumeration_for(o, parse_kind(o.kind), o.dim, o.n);
  std::ostringstream s;
  s << o.csv_comment() << "label";
  for (int i = 1; i <= o.dim; ++i) s << ",x" << i;
  s << "\n";
  for (std::int64_t k = 1; k <= o.n; ++k) {
    s << k;
    const Point& p = e.point(k);
    for (int i = 0; i < o.dim; ++i) s << "," << p[i];
    s << "\n";
  }
  emit(o, s.str());
  return kOk;
}

int run_profile(const Options& o) {
  const EnumerationKind kind = parse_kind(o.kind);
  // boundary labels of the last prefix must exist
  const Enumeration e = enumeration_for(o, kind, o.dim, 4 * o.n + 64);
  const std::vector<std::int64_t> values = prefix_profile(e, o.n);
  std::ostringstream s;
  s << o.csv_comment() << "n,boundary\n";
  for (std::size_t i = 0; i < values.size(); ++i) s << i + 1 << "," << values[i] << "\n";
  emit(o, s.str());
  return kOk;
}

int run_ctree(const Options& o) {
  if (o.graph.size() != 2 || o.graph[0] != 'z' || o.graph[1] < '1' || o.graph[1] > '3')
    throw UsageError("--graph must be z1, z2 or z3");
  const int dim = o.graph[1] - '0';
  const ComparisonTree t = lattice_comparison_tree(dim, o.n);
  std::ostringstream s;
  if (o.format == "csv") {
    s << o.csv_comment() << "child,parent\n";
    for (std::int64_t c = 2; c <= o.n; ++c) s << c << "," << t.parent(c) << "\n";
  } else if (o.format == "dot") {
    s << "// rlab " << o.config().dump() << "\ngraph comparison_tree {\n";
    for (std::int64_t c = 2; c <= o.n; ++c) s << "  " << t.parent(c) << " -- " << c << ";\n";
    s << "}\n";
  } else {
    throw UsageError("--format must be csv or dot");
  }
  emit(o, s.str());
  return kOk;
}

int run_rearrange(const Options& o) {
  const AnyFunction f = read_function_file(o.in);
  const int dim = std::visit([](const auto& g) { return g.dim(); }, f);
  const Enumeration e = enumeration_for(o, parse_kind(o.kind), dim, max_label_needed(f));
  json j = std::visit([&](const auto& g) { return function_to_json(rearrange(g, e)); }, f);
  j["config"] = o.config();
  emit(o, dump_json(j));
  return kOk;
}

int run_ratio(const Options& o) {
  const Exponent p = parse_p(o.p);
  const AnyFunction f = read_function_file(o.in);
  const int dim = std::visit([](const auto& g) { return g.dim(); }, f);
  const Enumeration e = enumeration_for(o, parse_kind(o.kind), dim, max_label_needed(f));
  const RatioReport r = std::visit([&](const auto& g) { return ps_ratio(g, e, p); }, f);
  std::cout << fmt(r.norm_ratio) << "\n";
  return kOk;
}

int run_audit(const Options& o) {
  std::ostringstream csv;
  csv << o.csv_comment();
  bool pass = false;
  std::string line;
  if (o.check == "psi-length") {
    const PathLengthAudit a = with_tree(o.n, [&](const ComparisonTree& t) { return path_length_audit(t, o.n); });
    pass = a.max_len <= 4;
    line = "max_len=" + std::to_string(a.max_len) + "  " + (pass ? "PASS" : "FAIL") + " (<=4)";
    csv << "max_len,i,j,k,edges\n" << a.max_len << "," << a.i << "," << a.j << "," << a.k << "," << a.edges << "\n";
  } else if (o.check == "psi-mult") {
    const EnumerationKind kind = parse_kind(o.kind);
    if (kind != EnumerationKind::spiral && kind != EnumerationKind::wang_wang)
      throw UsageError("psi-mult audits the spiral or wang enumeration");
    const std::int64_t bound = kind == EnumerationKind::spiral ? 16 : 2;
    const Enumeration e = make_enumeration(kind, 2, 0, o.n);
    const MultiplicityAudit a =
        with_tree(o.n, [&](const ComparisonTree& t) { return multiplicity_audit(e, t, o.n); });
    pass = a.max_mult <= bound;
    line = "max_mult=" + std::to_string(a.max_mult) + "  " + (pass ? "PASS" : "FAIL") + " (<=" +
           std::to_string(bound) + ")";
    csv << "enum,max_mult,parent,child,edges\n"
        << to_string(kind) << "," << a.max_mult << "," << a.edge.parent << "," << a.edge.child << "," << a.edges
        << "\n";
  } else if (o.check == "edge-gap") {
    const EdgeGap g = spiral_edge_gap_check(o.n);
    pass = g.max_ratio <= 7.0;
    line = "max_ratio=" + fmt(g.max_ratio) + "  " + (pass ? "PASS" : "FAIL") + " (<=7)";
    csv << "max_ratio,m,n\n" << fmt(g.max_ratio) << "," << g.m << "," << g.n << "\n";
  } else if (o.check == "boundary") {
    const ComparisonTree t = lattice_comparison_tree(2, o.n + iso_z2(o.n) + 1);
    std::int64_t first_failure = 0;
    for (std::int64_t n = 1; n <= o.n && first_failure == 0; ++n)
      if (!tree_boundary_check(t, n)) first_failure = n;
    pass = first_failure == 0;
    line = "checked=" + std::to_string(o.n) + "  " + (pass ? "PASS" : "FAIL") + " (boundary = {n+1..n+P(n)})";
    csv << "checked,first_failure\n" << o.n << "," << first_failure << "\n";
  } else if (o.check == "spheres") {
    const std::int64_t r_max = o.n;
    const std::int64_t ball = 1 + 2 * (r_max + 1) * (r_max + 2);
    const ComparisonTree t = lattice_comparison_tree(2, ball + 4 * (r_max + 2));
    std::int64_t first_failure = -1;
    csv << "r,sphere,ball,expected_sphere,expected_ball\n";
    for (std::int64_t r = 0; r <= r_max; ++r) {
      const SphereBall sb = sphere_ball_sizes(t, r);
      const std::int64_t es = r == 0 ? 1 : 4 * r;
      const std::int64_t eb = 1 + 2 * r * (r + 1);
      if ((sb.sphere != es || sb.ball != eb) && first_failure < 0) first_failure = r;
      csv << r << "," << sb.sphere << "," << sb.ball << "," << es << "," << eb << "\n";
    }
    pass = first_failure < 0;
    line = "r_max=" + std::to_string(r_max) + "  " + (pass ? "PASS" : "FAIL") + " (|S(r)|=4r, |B(r)|=1+2r(r+1))";
  } else {
    throw UsageError("--check must be psi-length, psi-mult, edge-gap, boundary or spheres");
  }
  std::cout << line << "\n";
  emit(o, csv.str());
  return pass ? kOk : kContract;
}

SearchConfig search_config(const Options& o) {
  SearchConfig c;
  c.support_size = o.support;
  c.budget = o.budget;
  c.seed = o.seed;
  c.threads = resolve_threads(o.threads);
  c.window = o.window;
  if (c.support_size < 2) throw UsageError("--support must be at least 2");
  if (c.budget < 1) throw UsageError("--budget must be at least 1");
  return c;
}

int run_search(const Options& o) {
  const Exponent p = parse_p(o.p);
  const EnumerationKind kind = parse_kind(o.kind);
  const SearchConfig config = search_config(o);
  const Enumeration e = enumeration_for(o, kind, o.dim, std::max<std::int64_t>(o.support, 64));
  const SearchReport r = counterexample_search(e, p, config);

  json j;
  j["version"] = RLAB_VERSION;
  j["config"] = o.config();
  j["enum"] = to_string(r.kind);
  j["d"] = r.dim;
  j["p"] = r.p.str();
  j["seed"] = r.seed;
  j["norm_ratio"] = r.norm_ratio;
  j["power_ratio"] = r.power_ratio;
  j["budget_spent"] = r.budget_spent;
  j["wall_seconds"] = r.wall_seconds;
  j["best"] = function_to_json(r.best);
  j["trail"] = json::array();
  for (const TrailEntry& t : r.trail) j["trail"].push_back({t.evaluations, t.power_ratio});
  if (!p.is_infinite() && p.value() == 2.0 && r.best.size() <= 8) {
    std::vector<Point> support;
    for (const auto& [pt, v] : r.best.entries()) support.push_back(pt);
    j["oracle_power_ratio"] = rayleigh_oracle_p2(e, support).value;
  }
  emit(o, dump_json(j));
  if (!o.out.empty())
    std::cout << "power_ratio=" << fmt(r.power_ratio) << " norm_ratio=" << fmt(r.norm_ratio) << "\n";
  return kOk;
}

int run_sweep(const Options& o) {
  std::vector<EnumerationKind> kinds;
  for (const std::string& k : split(o.enums, ',')) kinds.push_back(parse_kind(k));
  std::vector<Exponent> ps;
  for (const std::string& p : split(o.ps, ',')) ps.push_back(parse_p(p));
  if (kinds.empty() || ps.empty()) throw UsageError("--enums and --ps must be nonempty");
  const std::vector<SweepRow> rows = constant_sweep(kinds, ps, search_config(o));
  std::ostringstream s;
  s << o.csv_comment() << "enum,p,lower_bound,theorem_upper\n";
  for (const SweepRow& r : rows)
    s << to_string(r.kind) << "," << r.p.str() << "," << fmt(r.lower_bound) << "," << fmt(r.theorem_upper) << "\n";
  emit(o, s.str());
  return kOk;
}

int run_dimcheck(const Options& o) {
  if (o.dim != 2 && o.dim != 3) throw UsageError("--d must be 2 or 3");
  const Exponent p = parse_p(o.p);
  std::vector<std::uint64_t> seeds;
  if (o.seeds.empty()) {
    for (int s = 1; s <= o.seed_count; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
  } else {
    for (const std::string& s : split(o.seeds, ',')) {
      std::uint64_t v = 0;
      const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw UsageError("--seeds: bad seed '" + s + "'");
      seeds.push_back(v);
    }
  }
  const std::vector<DimensionRow> rows = dimension_check(o.dim, seeds, p, search_config(o));
  std::ostringstream s;
  s << o.csv_comment() << "seed,nested_ok,c_min,audited_n,bound,searched_ratio,within_bound\n";
  bool ok = true;
  for (const DimensionRow& r : rows) {
    ok = ok && r.within_bound();
    s << r.seed << "," << (r.nested_ok ? "true" : "false") << "," << fmt(r.c_min) << "," << r.audited_n << ","
      << fmt(r.bound) << "," << fmt(r.searched_ratio) << "," << (r.within_bound() ? "true" : "false") << "\n";
  }
  emit(o, s.str());
  return ok ? kOk : kContract;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Discrete rearrangements on lattice graphs"};
  app.set_version_flag("--version", std::string(RLAB_VERSION));
  app.require_subcommand(1);
  app.add_option("--threads", o.threads, "Worker threads (default: $REARRANGE_LAB_THREADS or 1)")
      ->check(CLI::NonNegativeNumber);

  auto* enumerate = app.add_subcommand("enumerate", "List v_1..v_n as CSV label,x1,...,xd");
  enumerate->add_option("--kind", o.kind, "spiral | wang | l1rand")->capture_default_str();
  enumerate->add_option("--d", o.dim, "Dimension")->capture_default_str()->check(CLI::Range(1, kMaxDim));
  enumerate->add_option("--seed", o.seed, "Seed for l1rand")->capture_default_str();
  enumerate->add_option("--n", o.n, "Number of labels")->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--out", o.out, "Output file (default stdout)");

  auto* profile = app.add_subcommand("profile", "Prefix boundary sizes as CSV n,boundary");
  profile->add_option("--kind", o.kind, "spiral | wang | l1rand")->capture_default_str();
  profile->add_option("--d", o.dim, "Dimension")->capture_default_str()->check(CLI::Range(1, kMaxDim));
  profile->add_option("--seed", o.seed, "Seed for l1rand")->capture_default_str();
  profile->add_option("--n", o.n, "Largest prefix")->required()->check(CLI::PositiveNumber);
  profile->add_option("--out", o.out, "Output file (default stdout)");

  auto* ctree = app.add_subcommand("ctree", "Comparison tree edges");
  ctree->add_option("--graph", o.graph, "z1 | z2 | z3")->capture_default_str();
  ctree->add_option("--n", o.n, "Number of vertices")->required()->check(CLI::PositiveNumber);
  ctree->add_option("--format", o.format, "csv | dot")->capture_default_str();
  ctree->add_option("--out", o.out, "Output file (default stdout)");

  auto* rearr = app.add_subcommand("rearrange", "Rearrange a function file along an enumeration");
  rearr->add_option("--enum", o.kind, "spiral | wang | l1rand")->capture_default_str();
  rearr->add_option("--seed", o.seed, "Seed for l1rand")->capture_default_str();
  rearr->add_option("--in", o.in, "Function JSON")->required();
  rearr->add_option("--out", o.out, "Output file (default stdout)");

  auto* ratio = app.add_subcommand("ratio", "Print ||grad f*||_p / ||grad f||_p");
  ratio->add_option("--enum", o.kind, "spiral | wang | l1rand")->capture_default_str();
  ratio->add_option("--seed", o.seed, "Seed for l1rand")->capture_default_str();
  ratio->add_option("--p", o.p, "Exponent >= 1 or inf")->capture_default_str();
  ratio->add_option("--in", o.in, "Function JSON")->required();

  auto* audit = app.add_subcommand("audit", "Edge-map and comparison-tree audits");
  audit->add_option("--check", o.check, "psi-length | psi-mult | edge-gap | boundary | spheres")->required();
  audit->add_option("--n", o.n, "Label range, or radius for spheres")->required()->check(CLI::PositiveNumber);
  audit->add_option("--enum", o.kind, "Enumeration for psi-mult (spiral | wang)")->capture_default_str();
  audit->add_option("--out", o.out, "CSV output file (default stdout)");

  auto* search = app.add_subcommand("search", "Search for large rearrangement ratios");
  search->add_option("--enum", o.kind, "spiral | wang | l1rand")->capture_default_str();
  search->add_option("--d", o.dim, "Dimension")->capture_default_str()->check(CLI::Range(1, kMaxDim));
  search->add_option("--p", o.p, "Exponent >= 1 or inf")->capture_default_str();
  search->add_option("--support", o.support, "Maximal support size")->capture_default_str();
  search->add_option("--budget", o.budget, "Ratio evaluations")->capture_default_str();
  search->add_option("--seed", o.seed, "Seed")->capture_default_str();
  search->add_option("--window", o.window, "Half-width of the sampling box");
  search->add_option("--out", o.out, "Report JSON (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "Best searched ratio against theorem bounds");
  sweep->add_option("--enums", o.enums, "Comma-separated kinds")->capture_default_str();
  sweep->add_option("--ps", o.ps, "Comma-separated exponents")->capture_default_str();
  sweep->add_option("--support", o.support, "Maximal support size")->capture_default_str();
  sweep->add_option("--budget", o.budget, "Ratio evaluations per cell")->capture_default_str();
  sweep->add_option("--seed", o.seed, "Seed")->capture_default_str();
  sweep->add_option("--out", o.out, "CSV output (default stdout)");

  auto* dimcheck = app.add_subcommand("dimcheck", "Audit seeded l1-respecting labellings of Z^d");
  dimcheck->add_option("--d", o.dim, "2 or 3")->capture_default_str();
  dimcheck->add_option("--p", o.p, "Exponent >= 1 or inf")->capture_default_str();
  dimcheck->add_option("--seeds", o.seeds, "Comma-separated seeds (default 1..--count)");
  dimcheck->add_option("--count", o.seed_count, "Number of seeds when --seeds is absent")->capture_default_str();
  dimcheck->add_option("--support", o.support, "Maximal support size")->capture_default_str();
  dimcheck->add_option("--budget", o.budget, "Ratio evaluations per labelling")->capture_default_str();
  dimcheck->add_option("--seed", o.seed, "Search seed")->capture_default_str();
  dimcheck->add_option("--out", o.out, "CSV output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    o.subcommand = app.get_subcommands().front()->get_name();
    if (o.subcommand == "enumerate") return run_enumerate(o);
    if (o.subcommand == "profile") return run_profile(o);
    if (o.subcommand == "ctree") return run_ctree(o);
    if (o.subcommand == "rearrange") return run_rearrange(o);
    if (o.subcommand == "ratio") return run_ratio(o);
    if (o.subcommand == "audit") return run_audit(o);
    if (o.subcommand == "search") return run_search(o);
    if (o.subcommand == "sweep") return run_sweep(o);
    if (o.subcommand == "dimcheck") return run_dimcheck(o);
  } catch (const FunctionFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const AuditFailure& e) {
    std::cerr << "contract violated: " << e.what() << "\n";
    return kContract;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kContract;
  }
  return kUsage;
}
