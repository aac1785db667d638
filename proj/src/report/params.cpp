#include "params.hpp"

#include <cmath>

#include "qproxy/error.hpp"

namespace qproxy::report {

namespace {

const Json& require(const Json& j, const std::string& key) {
  if (!j.is_object()) throw FormatError("expected an object holding '" + key + "'");
  if (!j.contains(key)) throw FormatError("missing '" + key + "'");
  return j[key];
}

}  // namespace

double get_number(const Json& j, const std::string& key, std::optional<double> fallback) {
  if (fallback && (!j.is_object() || !j.contains(key))) return *fallback;
  const Json& v = require(j, key);
  if (!v.is_number()) throw FormatError("'" + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw FormatError("'" + key + "' must be finite");
  return x;
}

std::size_t get_count(const Json& j, const std::string& key, std::optional<std::size_t> fallback) {
  if (fallback && (!j.is_object() || !j.contains(key))) return *fallback;
  const Json& v = require(j, key);
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  if (v.is_number()) {
    const double x = v.get<double>();
    if (x >= 0.0 && std::floor(x) == x && x < 1e18) return static_cast<std::size_t>(x);
  }
  throw FormatError("'" + key + "' must be a non-negative integer");
}

std::string get_string(const Json& j, const std::string& key, std::optional<std::string> fallback) {
  if (fallback && (!j.is_object() || !j.contains(key))) return *fallback;
  const Json& v = require(j, key);
  if (!v.is_string()) throw FormatError("'" + key + "' must be a string");
  return v.get<std::string>();
}

bool get_bool(const Json& j, const std::string& key, std::optional<bool> fallback) {
  if (fallback && (!j.is_object() || !j.contains(key))) return *fallback;
  const Json& v = require(j, key);
  if (!v.is_boolean()) throw FormatError("'" + key + "' must be true or false");
  return v.get<bool>();
}

std::vector<double> get_numbers(const Json& j, const std::string& key) {
  const Json& v = require(j, key);
  if (!v.is_array()) throw FormatError("'" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw FormatError("'" + key + "' must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

Dims get_dims(const Json& j, const std::string& key) {
  const Json& v = require(j, key);
  if (!v.is_array() || v.empty()) throw FormatError("'" + key + "' must be a nonempty array of dimensions");
  Dims dims;
  for (const auto& x : v) {
    if (!x.is_number_integer() || x.get<long long>() < 1) throw FormatError("'" + key + "' entries must be >= 1");
    dims.push_back(x.get<std::size_t>());
  }
  return dims;
}

const Json& get_object(const Json& j, const std::string& key) {
  const Json& v = require(j, key);
  if (!v.is_object()) throw FormatError("'" + key + "' must be an object");
  return v;
}

SpinChainSpec parse_chain_spec(const Json& j) {
  SpinChainSpec spec;
  spec.family = model_family_from_string(get_string(j, "family"));
  spec.sites = get_count(j, "sites");
  spec.couplings = get_numbers(j, "couplings");
  spec.field = get_number(j, "field", 0.0);
  spec.periodic = get_bool(j, "periodic", true);
  return spec;
}

Json chain_spec_to_json(const SpinChainSpec& spec) {
  return Json{{"family", std::string(to_string(spec.family))},
              {"sites", spec.sites},
              {"couplings", spec.couplings},
              {"field", spec.field},
              {"periodic", spec.periodic}};
}

}  // namespace qproxy::report
