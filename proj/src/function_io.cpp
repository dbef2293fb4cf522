#include "rlab/function_io.hpp"

#include <fstream>
#include <sstream>

namespace rlab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw FunctionFormatError(where + ": " + what);
}

template <class Scalar>
AnyFunction build(int dim, const json& entries) {
  std::vector<std::pair<Point, Scalar>> list;
  PointSet seen;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string where = "entries[" + std::to_string(i) + "]";
    const json& e = entries[i];
    if (!e.is_object()) fail(where, "expected an object");
    if (!e.contains("v")) fail(where, "missing field 'v'");
    if (!e.contains("value")) fail(where, "missing field 'value'");
    const json& v = e["v"];
    if (!v.is_array() || static_cast<int>(v.size()) != dim)
      fail(where + ".v", "expected an array of " + std::to_string(dim) + " integers");
    Point p = Point::origin(dim);
    for (int k = 0; k < dim; ++k) {
      if (!v[static_cast<std::size_t>(k)].is_number_integer()) fail(where + ".v", "coordinates must be integers");
      p[k] = v[static_cast<std::size_t>(k)].get<std::int64_t>();
    }
    if (!seen.insert(p).second) fail(where + ".v", "duplicate vertex " + p.str());

    Scalar value{};
    const json& val = e["value"];
    if constexpr (std::is_same_v<Scalar, Rational>) {
      if (val.is_string()) {
        try {
          value = parse_rational(val.get<std::string>());
        } catch (const std::invalid_argument& ex) {
          fail(where + ".value", ex.what());
        }
      } else if (val.is_number_integer()) {
        value = Rational(val.get<std::int64_t>());
      } else {
        fail(where + ".value", "rational mode expects a fraction string such as \"3/2\"");
      }
    } else {
      if (!val.is_number()) fail(where + ".value", "float mode expects a number");
      value = val.get<double>();
      if (!std::isfinite(value)) fail(where + ".value", "value must be finite");
    }
    if (!(value > Scalar(0))) fail(where + ".value", "values must be positive");
    list.emplace_back(p, value);
  }
  return LatticeFunction<Scalar>::from_entries(dim, list);
}

}  // namespace

AnyFunction parse_function(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FunctionFormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("document", "expected a JSON object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) fail("dim", "missing or not an integer");
  const int dim = doc["dim"].get<int>();
  if (dim < 1 || dim > kMaxDim) fail("dim", "must be between 1 and " + std::to_string(kMaxDim));
  std::string mode = "float";
  if (doc.contains("mode")) {
    if (!doc["mode"].is_string()) fail("mode", "must be \"float\" or \"rational\"");
    mode = doc["mode"].get<std::string>();
  }
  if (mode != "float" && mode != "rational") fail("mode", "must be \"float\" or \"rational\"");
  if (!doc.contains("entries") || !doc["entries"].is_array()) fail("entries", "missing or not an array");
  if (mode == "rational") return build<Rational>(dim, doc["entries"]);
  return build<double>(dim, doc["entries"]);
}

AnyFunction read_function_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FunctionFormatError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_function(ss.str());
  } catch (const FunctionFormatError& e) {
    throw FunctionFormatError(path + ": " + e.what());
  }
}

namespace {

json point_json(const Point& p) {
  json v = json::array();
  for (int i = 0; i < p.dim(); ++i) v.push_back(p[i]);
  return v;
}

}  // namespace

json function_to_json(const RealFunction& f) {
  json out;
  out["dim"] = f.dim();
  out["mode"] = "float";
  out["entries"] = json::array();
  for (const auto& [p, v] : f.entries()) out["entries"].push_back({{"v", point_json(p)}, {"value", v}});
  return out;
}

json function_to_json(const ExactFunction& f) {
  json out;
  out["dim"] = f.dim();
  out["mode"] = "rational";
  out["entries"] = json::array();
  for (const auto& [p, v] : f.entries())
    out["entries"].push_back({{"v", point_json(p)}, {"value", format_rational(v)}});
  return out;
}

json function_to_json(const AnyFunction& f) {
  return std::visit([](const auto& g) { return function_to_json(g); }, f);
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace rlab
