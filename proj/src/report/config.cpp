#include "qproxy/report/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "qproxy/error.hpp"
#include "qproxy/linalg/cap.hpp"
#include "qproxy/linalg/matrix_io.hpp"
#include "qproxy/linalg/random.hpp"
#include "qproxy/linalg/spectral.hpp"
#include "qproxy/operators.hpp"
#include "criteria.hpp"
#include "params.hpp"
#include "qproxy/spin_models.hpp"
#include "qproxy/states.hpp"

namespace qproxy::report {

namespace fs = std::filesystem;

namespace {

const std::set<std::string> kTopLevelKeys{"seed", "solver", "output", "states", "criteria"};

std::string short_number(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

// Walks a dotted path ("p", "model.field", "model.couplings.1") to a number.
Json* find_numeric(Json& root, const std::string& path) {
  Json* node = &root;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (node->is_object()) {
      if (!node->contains(part)) return nullptr;
      node = &(*node)[part];
    } else if (node->is_array()) {
      if (part.empty() || !std::all_of(part.begin(), part.end(), ::isdigit)) return nullptr;
      const auto idx = std::stoul(part);
      if (idx >= node->size()) return nullptr;
      node = &(*node)[idx];
    } else {
      return nullptr;
    }
  }
  return node->is_number() ? node : nullptr;
}

fs::path resolve_path(const std::string& p, const fs::path& base) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

ComplexMatrix load_matrix(const Json& desc, const fs::path& base) {
  const auto path = resolve_path(get_string(desc, "path"), base);
  if (!fs::exists(path)) throw FormatError("matrix file not found: " + path.string());
  return read_matrix_file(path);
}

Dims matrix_dims(const Json& desc, std::size_t dim) {
  if (!desc.contains("dims")) return {dim};
  Dims dims = get_dims(desc, "dims");
  if (product(dims) != dim) throw DimensionError("'dims' do not multiply to the matrix dimension " + std::to_string(dim));
  return dims;
}

void check_werner_like(const Json& params, const char* key) {
  const double x = get_number(params, key);
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError(std::string("'") + key + "' must lie in [0, 1]");
  const std::size_t d = get_count(params, "d", 2);
  if (d < 2) throw DomainError("'d' must be >= 2");
  require_within_cap(d * d, "state");
}

}  // namespace

std::vector<double> Sweep::values() const {
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) out.push_back(std::round((from + static_cast<double>(i) * step) * 1e12) / 1e12);
  return out;
}

const std::vector<std::string>& known_criteria() {
  static const std::vector<std::string> ids{
      "unext.invariant.werner", "unext.invariant.isotropic", "unext.model.xxx", "unext.model.j1j2",
      "unext.feasibility",      "unext.entropy",             "coherence.basis", "coherence.entropy",
      "coherence.ptapt",        "activation",                "steering.model",  "entanglement.model",
      "bell.model"};
  return ids;
}

const std::vector<std::string>& known_state_families() {
  static const std::vector<std::string> families{"werner",       "isotropic",  "qubit",  "maximally_mixed",
                                                 "ground_state", "eigenstate", "matrix", "random"};
  return families;
}

Dims observable_dims(const Json& desc, const fs::path& base) {
  if (!desc.is_object()) throw FormatError("observable descriptor must be an object");
  const std::string type = get_string(desc, "type");
  if (type == "sigma_n" || type == "pauli") {
    if (type == "pauli") {
      const std::string axis = get_string(desc, "axis");
      if (axis != "x" && axis != "y" && axis != "z") throw DomainError("pauli 'axis' must be x, y or z");
    } else {
      get_number(desc, "theta");
      get_number(desc, "phi", 0.0);
    }
    get_number(desc, "scale", 1.0);
    return {2};
  }
  if (type == "diag") {
    const auto values = get_numbers(desc, "values");
    if (values.empty()) throw DomainError("diag 'values' must be nonempty");
    require_within_cap(values.size(), "observable");
    return {values.size()};
  }
  if (type == "identity") {
    Dims dims = get_dims(desc, "dims");
    require_within_cap(product(dims), "observable");
    return dims;
  }
  if (type == "model") {
    const SpinChainSpec spec = parse_chain_spec(get_object(desc, "model"));
    chain_bonds(spec);
    return Dims(spec.sites, 2);
  }
  if (type == "matrix") {
    const ComplexMatrix m = load_matrix(desc, base);
    if (m.hermitian_deviation() > kHermitianTol * std::max(1.0, m.max_abs())) {
      throw NotHermitianError("observable matrix is not Hermitian");
    }
    return matrix_dims(desc, m.dim());
  }
  if (type == "swap" || type == "gamma") {
    const std::size_t d = get_count(desc, "d", 2);
    if (d < 2) throw DomainError("'d' must be >= 2");
    require_within_cap(d * d, "observable");
    return {d, d};
  }
  throw DomainError("unknown observable type '" + type + "'");
}

Observable build_observable(const Json& desc, const fs::path& base) {
  const Dims dims = observable_dims(desc, base);
  const std::string type = get_string(desc, "type");
  if (type == "sigma_n") {
    return Observable(sigma_n(get_number(desc, "theta"), get_number(desc, "phi", 0.0)) *
                          Complex(get_number(desc, "scale", 1.0)),
                      dims);
  }
  if (type == "pauli") {
    const std::string axis = get_string(desc, "axis");
    const std::size_t idx = axis == "x" ? 0 : axis == "y" ? 1 : 2;
    return Observable(su_generators(2).generators[idx].matrix() * Complex(get_number(desc, "scale", 1.0)), dims);
  }
  if (type == "diag") {
    const auto values = get_numbers(desc, "values");
    return Observable(ComplexMatrix::diagonal(values), dims);
  }
  if (type == "identity") return Observable(ComplexMatrix::identity(product(dims)), dims);
  if (type == "model") return build_hamiltonian(parse_chain_spec(get_object(desc, "model")));
  if (type == "matrix") return Observable(hermitize(load_matrix(desc, base)), dims);
  if (type == "swap") return swap_operator(dims[0]);
  return gamma_operator(dims[0]);
}

Dims instance_dims(const StateInstance& s, const fs::path& base) {
  const Json& p = s.params;
  const std::string& f = s.family;
  if (f == "werner" || f == "isotropic") {
    check_werner_like(p, f == "werner" ? "p" : "t");
    const std::size_t d = get_count(p, "d", 2);
    return {d, d};
  }
  if (f == "qubit") {
    const auto v = get_numbers(p, "bloch");
    if (v.size() != 3) throw DomainError("'bloch' must have 3 components");
    if (std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]) > 1.0 + 1e-10) throw DomainError("|bloch| exceeds 1");
    return {2};
  }
  if (f == "maximally_mixed" || f == "random") {
    Dims dims = get_dims(p, "dims");
    require_within_cap(product(dims), "state");
    if (f == "random") {
      const std::size_t rank = get_count(p, "rank", 0);
      if (rank > product(dims)) throw DomainError("'rank' exceeds the dimension");
    }
    return dims;
  }
  if (f == "ground_state") {
    const SpinChainSpec spec = parse_chain_spec(get_object(p, "model"));
    chain_bonds(spec);
    return Dims(spec.sites, 2);
  }
  if (f == "eigenstate") {
    const Dims dims = observable_dims(get_object(p, "observable"), base);
    if (get_count(p, "index") >= product(dims)) throw DomainError("'index' exceeds the dimension");
    return dims;
  }
  if (f == "matrix") {
    const ComplexMatrix m = load_matrix(p, base);
    Dims dims = matrix_dims(p, m.dim());
    DensityMatrix check(m, dims);  // validates positivity and trace
    return dims;
  }
  throw DomainError("unknown state family '" + f + "'");
}

DensityMatrix build_state(const StateInstance& s, const DetectionConfig& config, std::size_t position) {
  const Json& p = s.params;
  const std::string& f = s.family;
  const Dims dims = instance_dims(s, config.base_dir);
  if (f == "werner") return werner_state({get_number(p, "p"), dims[0]});
  if (f == "isotropic") return isotropic_state({get_number(p, "t"), dims[0]});
  if (f == "qubit") {
    const auto v = get_numbers(p, "bloch");
    return qubit_from_bloch({v[0], v[1], v[2]});
  }
  if (f == "maximally_mixed") return DensityMatrix::maximally_mixed(dims);
  if (f == "random") {
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(position)};
    Rng rng(seq);
    return random_density_matrix(dims, rng, get_count(p, "rank", 0));
  }
  if (f == "ground_state") return ground_state(build_hamiltonian(parse_chain_spec(get_object(p, "model")))).state;
  if (f == "eigenstate") {
    const Observable a = build_observable(get_object(p, "observable"), config.base_dir);
    const Spectrum sp = spectral_decomposition(a);
    const std::size_t idx = get_count(p, "index");
    const double e = sp.eigenvalues[idx];
    const double tol = kDegeneracyGap * std::max(1.0, a.matrix().max_abs());
    std::size_t lo = idx, hi = idx + 1;
    while (lo > 0 && e - sp.eigenvalues[lo - 1] <= tol) --lo;
    while (hi < sp.eigenvalues.size() && sp.eigenvalues[hi] - e <= tol) ++hi;
    ComplexMatrix proj = sp.projector(lo, hi) * Complex(1.0 / static_cast<double>(hi - lo));
    return DensityMatrix::from_psd(std::move(proj), a.dims());
  }
  const ComplexMatrix m = load_matrix(p, config.base_dir);
  return DensityMatrix(m, dims);
}

std::vector<StateInstance> expand_states(const DetectionConfig& config) {
  std::vector<StateInstance> out;
  for (std::size_t i = 0; i < config.states.size(); ++i) {
    const auto& desc = config.states[i];
    if (!desc.sweep) {
      out.push_back({desc.id, i, desc.family, desc.params});
      continue;
    }
    for (double v : desc.sweep->values()) {
      Json params = desc.params;
      *find_numeric(params, desc.sweep->param) = v;
      out.push_back({desc.id + "[" + desc.sweep->param + "=" + short_number(v) + "]", i, desc.family,
                     std::move(params)});
    }
  }
  return out;
}

DetectionConfig parse_config(const Json& doc, const fs::path& base_dir) {
  std::vector<std::string> violations;
  DetectionConfig config;
  config.echo = doc;
  config.base_dir = base_dir;
  auto guard = [&](const std::string& where, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      violations.push_back(where + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
      violations.push_back(where + ": " + e.what());
    }
  };

  if (!doc.is_object()) throw ConfigError({"configuration must be a JSON object"});
  for (const auto& [key, value] : doc.items()) {
    if (!kTopLevelKeys.contains(key)) violations.push_back("unknown top-level key '" + key + "'");
  }

  guard("seed", [&] { config.seed = get_count(doc, "seed", 0); });
  if (doc.contains("solver")) {
    guard("solver", [&] {
      const Json& s = get_object(doc, "solver");
      config.solver.ext_tol = get_number(s, "ext_tol", config.solver.ext_tol);
      config.solver.ext_iters = get_count(s, "ext_iters", config.solver.ext_iters);
      if (!(config.solver.ext_tol > 0.0)) throw DomainError("'ext_tol' must be positive");
      if (config.solver.ext_iters == 0) throw DomainError("'ext_iters' must be positive");
    });
  }
  if (doc.contains("output")) {
    guard("output", [&] {
      const Json& o = get_object(doc, "output");
      config.output.format = get_string(o, "format", "json");
      config.output.path = get_string(o, "path", "");
      if (config.output.format != "json" && config.output.format != "csv") {
        throw DomainError("'format' must be json or csv");
      }
    });
  }

  // States.
  std::set<std::string> ids;
  if (doc.contains("states") && !doc["states"].is_array()) violations.push_back("'states' must be an array");
  const Json states = doc.contains("states") && doc["states"].is_array() ? doc["states"] : Json::array();
  std::vector<std::optional<Dims>> state_dims;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Json& s = states[i];
    std::string where = "states[" + std::to_string(i) + "]";
    StateDescriptor desc;
    std::optional<Dims> dims;
    guard(where, [&] {
      if (!s.is_object()) throw FormatError("state descriptor must be an object");
      desc.id = get_string(s, "id", "state" + std::to_string(i));
      where += " '" + desc.id + "'";
      desc.family = get_string(s, "family");
      if (std::find(known_state_families().begin(), known_state_families().end(), desc.family) ==
          known_state_families().end()) {
        throw DomainError("unknown state family '" + desc.family + "'");
      }
      if (!ids.insert(desc.id).second) throw DomainError("duplicate state id");
      desc.params = s;
      desc.params.erase("id");
      desc.params.erase("family");
      desc.params.erase("sweep");
      if (s.contains("sweep")) {
        const Json& sw = get_object(s, "sweep");
        Sweep sweep{get_string(sw, "param"), get_number(sw, "from"), get_number(sw, "to"), get_number(sw, "step")};
        if (!(sweep.step > 0.0)) throw DomainError("sweep 'step' must be positive");
        if (sweep.to < sweep.from) throw DomainError("sweep 'to' must be >= 'from'");
        if (sweep.values().size() > 100000) throw DomainError("sweep expands to too many states");
        Json probe = desc.params;
        if (find_numeric(probe, sweep.param) == nullptr) {
          throw DomainError("sweep parameter '" + sweep.param + "' is not a numeric parameter of the state");
        }
        desc.sweep = sweep;
      }
    });
    // Validate each concrete instance; sweeps are checked at every point.
    if (!desc.family.empty()) {
      DetectionConfig one;
      one.states.push_back(desc);
      std::vector<StateInstance> instances;
      guard(where, [&] { instances = expand_states(one); });
      for (const auto& inst : instances) {
        const std::size_t before = violations.size();
        guard(where + (desc.sweep ? " at " + inst.id : ""), [&] {
          Dims d = instance_dims(inst, base_dir);
          if (!dims) dims = d;
          else if (product(*dims) != product(d)) throw DomainError("sweep changes the state dimension");
        });
        if (violations.size() > before) break;
      }
    }
    state_dims.push_back(dims);
    config.states.push_back(std::move(desc));
  }

  // Criteria.
  if (doc.contains("criteria") && !doc["criteria"].is_array()) violations.push_back("'criteria' must be an array");
  const Json criteria = doc.contains("criteria") && doc["criteria"].is_array() ? doc["criteria"] : Json::array();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Json& c = criteria[i];
    std::string where = "criteria[" + std::to_string(i) + "]";
    CriterionSpec spec;
    bool ok = false;
    guard(where, [&] {
      if (c.is_string()) {
        spec.id = c.get<std::string>();
        spec.params = Json::object();
      } else if (c.is_object()) {
        spec.id = get_string(c, "id");
        spec.params = c;
        spec.params.erase("id");
      } else {
        throw FormatError("criterion must be a string or an object with 'id'");
      }
      where += " '" + spec.id + "'";
      if (std::find(known_criteria().begin(), known_criteria().end(), spec.id) == known_criteria().end()) {
        throw DomainError("unknown criterion");
      }
      validate_criterion_params(spec, base_dir);
      ok = true;
    });
    if (ok) {
      for (std::size_t s = 0; s < config.states.size(); ++s) {
        if (!state_dims[s]) continue;
        guard(where + " on state '" + config.states[s].id + "'", [&] {
          if (auto why = criterion_state_mismatch(spec, *state_dims[s], base_dir, config.solver)) {
            throw DomainError("criterion/state mismatch: " + *why);
          }
        });
      }
    }
    config.criteria.push_back(std::move(spec));
  }

  if (!violations.empty()) throw ConfigError(std::move(violations));
  return config;
}

DetectionConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file " + path.string()});
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError({"config file " + path.string() + " is not valid JSON: " + e.what()});
  }
  return parse_config(doc, path.has_parent_path() ? path.parent_path() : fs::path("."));
}

}  // namespace qproxy::report
