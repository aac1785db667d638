#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qproxy/linalg/quantum_types.hpp"

namespace qproxy::report {

using Json = nlohmann::ordered_json;

struct Sweep {
  std::string param;
  double from;
  double to;
  double step;

  std::vector<double> values() const;
};

struct StateDescriptor {
  std::string id;
  std::string family;
  Json params;  // family parameters, sweep removed
  std::optional<Sweep> sweep;
};

struct CriterionSpec {
  std::string id;
  Json params;
};

struct SolverOptions {
  double ext_tol = 1e-9;
  std::size_t ext_iters = 20000;
};

struct OutputOptions {
  std::string format = "json";
  std::string path;  // empty: stdout
};

struct DetectionConfig {
  std::uint64_t seed = 0;
  SolverOptions solver;
  OutputOptions output;
  std::vector<StateDescriptor> states;
  std::vector<CriterionSpec> criteria;
  Json echo;                          // the document as given
  std::filesystem::path base_dir;     // relative matrix paths resolve against this
};

/// Criterion identifiers accepted in configs.
const std::vector<std::string>& known_criteria();
/// State families accepted in configs.
const std::vector<std::string>& known_state_families();

/// Reads and validates; throws ConfigError listing every violation found
/// (including a missing or unparsable file).
DetectionConfig load_config(const std::filesystem::path& path);
DetectionConfig parse_config(const Json& doc, const std::filesystem::path& base_dir = ".");

/// One concrete state after sweep expansion.
struct StateInstance {
  std::string id;
  std::size_t descriptor_index;
  std::string family;
  Json params;
};

std::vector<StateInstance> expand_states(const DetectionConfig& config);

/// Subsystem dimensions of the state an instance will produce (cheap; no construction).
Dims instance_dims(const StateInstance& s, const std::filesystem::path& base_dir);

/// Builds the density matrix. Random states draw from a generator seeded by
/// (seed, instance position), so results do not depend on evaluation order.
DensityMatrix build_state(const StateInstance& s, const DetectionConfig& config, std::size_t position);

/// Observable descriptors: {"type": "sigma_n"|"pauli"|"diag"|"model"|"matrix"|"swap"|"gamma"|"identity", ...}.
Observable build_observable(const Json& desc, const std::filesystem::path& base_dir);
Dims observable_dims(const Json& desc, const std::filesystem::path& base_dir);

}  // namespace qproxy::report
