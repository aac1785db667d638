#pragma once

// Typed accessors for config JSON. Every failure throws a qproxy error whose
// message names the offending key, so validation can collect it.

#include <optional>
#include <string>
#include <vector>

#include "qproxy/report/config.hpp"
#include "qproxy/spin_models.hpp"

namespace qproxy::report {

double get_number(const Json& j, const std::string& key, std::optional<double> fallback = std::nullopt);
std::size_t get_count(const Json& j, const std::string& key, std::optional<std::size_t> fallback = std::nullopt);
std::string get_string(const Json& j, const std::string& key, std::optional<std::string> fallback = std::nullopt);
bool get_bool(const Json& j, const std::string& key, std::optional<bool> fallback = std::nullopt);
std::vector<double> get_numbers(const Json& j, const std::string& key);
Dims get_dims(const Json& j, const std::string& key);
const Json& get_object(const Json& j, const std::string& key);

/// {"family": "heisenberg"|"xy_field"|"j1j2", "sites": N, "couplings": [...], "field": h, "periodic": bool}
SpinChainSpec parse_chain_spec(const Json& j);
Json chain_spec_to_json(const SpinChainSpec& spec);

}  // namespace qproxy::report
