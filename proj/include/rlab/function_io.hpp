#pragma once

// JSON file format for lattice functions:
//   {"dim": 2, "mode": "float" | "rational",
//    "entries": [{"v": [x, y], "value": 1.5 | "3/2"}, ...]}

#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "rlab/lattice.hpp"

namespace rlab {

using AnyFunction = std::variant<RealFunction, ExactFunction>;

/// Malformed function file. what() names the offending line or field.
class FunctionFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

AnyFunction parse_function(const std::string& text);
AnyFunction read_function_file(const std::string& path);

nlohmann::json function_to_json(const RealFunction& f);
nlohmann::json function_to_json(const ExactFunction& f);
nlohmann::json function_to_json(const AnyFunction& f);

/// Deterministic dump: sorted entries, two-space indent, trailing newline.
std::string dump_json(const nlohmann::json& j);

}  // namespace rlab
