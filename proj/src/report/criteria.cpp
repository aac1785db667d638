#include "criteria.hpp"

#include <cmath>
#include <map>
#include <set>

#include "params.hpp"
#include "qproxy/error.hpp"
#include "qproxy/linalg/cap.hpp"
#include "qproxy/linalg/matrix_io.hpp"
#include "qproxy/linalg/spectral.hpp"
#include "qproxy/operators.hpp"

namespace qproxy::report {

namespace fs = std::filesystem;

namespace {

const std::map<std::string, std::set<std::string>> kAllowedKeys{
    {"unext.invariant.werner", {"alpha1", "alpha2", "k"}},
    {"unext.invariant.isotropic", {"alpha1", "alpha2", "k"}},
    {"unext.model.xxx", {"J", "k"}},
    {"unext.model.j1j2", {"J1", "J2", "k"}},
    {"unext.feasibility", {"k"}},
    {"unext.entropy", {"k", "observable"}},
    {"coherence.basis", {"observable", "basis"}},
    {"coherence.entropy", {"observable", "basis", "s_min"}},
    {"coherence.ptapt", {"kind", "s", "gamma", "convention"}},
    {"activation", {"hamiltonian"}},
    {"steering.model", {"model", "J", "J1", "J2"}},
    {"entanglement.model", {"J"}},
    {"bell.model", {"model", "J", "J1", "J2", "p_bell"}},
};

constexpr std::size_t kMaxExtensionK = 4;

std::optional<std::size_t> qubit_count(const Dims& dims) {
  const std::size_t n = product(dims);
  if (n < 2 || (n & (n - 1)) != 0) return std::nullopt;
  std::size_t q = 0;
  while ((std::size_t{1} << q) < n) ++q;
  return q;
}

std::size_t get_k(const Json& p, std::size_t max_k = 0) {
  const std::size_t k = get_count(p, "k", 2);
  if (k < 2) throw DomainError("'k' must be >= 2");
  if (max_k != 0 && k > max_k) throw DomainError("'k' must be <= " + std::to_string(max_k));
  return k;
}

double get_coupling(const Json& p, const std::string& key, double fallback) {
  const double j = get_number(p, key, fallback);
  if (j < 0.0) throw DomainError("'" + key + "' must be >= 0 (criteria assume antiferromagnetic couplings)");
  return j;
}

ChainKind chain_kind(const CriterionSpec& spec) {
  if (spec.id == "unext.model.xxx") return ChainKind::xxx;
  if (spec.id == "unext.model.j1j2") return ChainKind::j1j2;
  const std::string m = get_string(spec.params, "model", "xxx");
  if (m == "xxx") return ChainKind::xxx;
  if (m == "j1j2") return ChainKind::j1j2;
  throw DomainError("'model' must be xxx or j1j2");
}

ChainModel chain_model(const CriterionSpec& spec, std::size_t sites) {
  const ChainKind kind = chain_kind(spec);
  if (kind == ChainKind::xxx) return {kind, sites, get_coupling(spec.params, "J", 1.0), 0.0};
  return {kind, sites, get_coupling(spec.params, "J1", 1.0), get_coupling(spec.params, "J2", 0.0)};
}

ComplexMatrix basis_matrix(const Json& p, std::size_t dim, const fs::path& base) {
  if (!p.contains("basis") || (p["basis"].is_string() && p["basis"] == "computational")) {
    return ComplexMatrix::identity(dim);
  }
  const Json& b = p["basis"];
  if (!b.is_object()) throw FormatError("'basis' must be \"computational\" or a matrix descriptor");
  const fs::path path = fs::path(get_string(b, "path")).is_absolute() ? fs::path(get_string(b, "path"))
                                                                        : base / get_string(b, "path");
  if (!fs::exists(path)) throw FormatError("basis matrix file not found: " + path.string());
  ComplexMatrix u = read_matrix_file(path);
  if (u.dim() != dim) throw DimensionError("basis dimension does not match the observable");
  if (max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(dim)) > 1e-8) throw DomainError("basis is not unitary");
  return u;
}

PTAPTSpec ptapt_spec(const Json& p) {
  const std::string kind = get_string(p, "kind", "PT");
  if (kind != "PT" && kind != "APT") throw DomainError("'kind' must be PT or APT");
  PTAPTSpec spec{kind == "PT" ? PTAPTKind::pt : PTAPTKind::apt, get_number(p, "s", 1.0), get_number(p, "gamma", 0.0)};
  (void)pt_apt_hamiltonian(spec);
  return spec;
}

ComplexOrder complex_order(const Json& p) {
  const std::string c = get_string(p, "convention", "real_part");
  if (c == "real_part") return ComplexOrder::real_part;
  if (c == "literal") return ComplexOrder::literal;
  throw DomainError("'convention' must be real_part or literal");
}

Json residuals_json(const Residuals& r) {
  return Json{{"psd_violation", r.psd_violation},
              {"permutation_violation", r.permutation_violation},
              {"marginal_violation", r.marginal_violation}};
}

bool is_bipartite_square(const Dims& d) { return d.size() == 2 && d[0] == d[1]; }

}  // namespace

void validate_criterion_params(const CriterionSpec& spec, const fs::path& base) {
  const Json& p = spec.params;
  const auto& allowed = kAllowedKeys.at(spec.id);
  for (const auto& [key, value] : p.items()) {
    if (!allowed.contains(key)) throw DomainError("unknown parameter '" + key + "'");
  }
  const std::string& id = spec.id;
  if (id == "unext.invariant.werner" || id == "unext.invariant.isotropic") {
    get_number(p, "alpha1", 0.0);
    if (get_number(p, "alpha2", 1.0) < 0.0) throw DomainError("'alpha2' must be >= 0");
    get_k(p);
  } else if (id == "unext.model.xxx" || id == "unext.model.j1j2" || id == "steering.model" || id == "bell.model") {
    chain_model(spec, 4);
    if (id.starts_with("unext.model")) get_k(p);
    if (id == "bell.model") {
      const double pb = get_number(p, "p_bell");
      if (!(pb >= 0.0 && pb <= 1.0)) throw DomainError("'p_bell' must lie in [0, 1]");
    }
  } else if (id == "entanglement.model") {
    get_coupling(p, "J", 1.0);
  } else if (id == "unext.feasibility") {
    get_k(p, kMaxExtensionK);
  } else if (id == "unext.entropy") {
    get_k(p, kMaxExtensionK);
    if (p.contains("observable")) observable_dims(get_object(p, "observable"), base);
  } else if (id == "coherence.basis" || id == "coherence.entropy") {
    const Dims dims = observable_dims(get_object(p, "observable"), base);
    basis_matrix(p, product(dims), base);
    if (id == "coherence.entropy") {
      const double s = get_number(p, "s_min");
      if (!(s >= 0.0 && s <= std::log2(static_cast<double>(product(dims))) + 1e-12)) {
        throw DomainError("'s_min' must lie in [0, log2 d]");
      }
    }
  } else if (id == "coherence.ptapt") {
    ptapt_spec(p);
    complex_order(p);
  } else if (id == "activation") {
    observable_dims(get_object(p, "hamiltonian"), base);
  }
}

std::optional<std::string> criterion_state_mismatch(const CriterionSpec& spec, const Dims& dims, const fs::path& base,
                                                    const SolverOptions&) {
  const std::string& id = spec.id;
  const std::size_t dim = product(dims);
  const auto qubits = qubit_count(dims);
  if (id == "unext.invariant.werner" || id == "unext.invariant.isotropic") {
    if (!is_bipartite_square(dims)) return "needs a bipartite d x d state";
  } else if (id == "unext.model.xxx" || id == "unext.model.j1j2" || id == "steering.model" || id == "bell.model") {
    if (!qubits || *qubits < 4 || *qubits % 2 != 0) return "needs a state of an even number (>= 4) of qubits";
  } else if (id == "entanglement.model") {
    if (!qubits || *qubits < 3) return "needs a state of at least 3 qubits";
  } else if (id == "unext.feasibility" || id == "unext.entropy") {
    if (dims.size() != 2) return "needs a bipartite state";
    if (id == "unext.entropy") {
      if (!is_bipartite_square(dims)) return "needs a bipartite d x d state";
      if (spec.params.contains("observable") &&
          product(observable_dims(spec.params["observable"], base)) != dim) {
        return "observable dimension differs from the state dimension";
      }
    }
    const std::size_t k = get_k(spec.params, kMaxExtensionK);
    std::size_t ext = dims[0];
    for (std::size_t j = 0; j < k && ext <= dense_cap(); ++j) ext *= dims[1];
    if (ext > dense_cap()) return "extension dimension exceeds the dense cap";
  } else if (id == "coherence.basis" || id == "coherence.entropy") {
    if (product(observable_dims(spec.params["observable"], base)) != dim) {
      return "observable dimension differs from the state dimension";
    }
  } else if (id == "coherence.ptapt") {
    if (dim != 2) return "needs a single-qubit state";
  } else if (id == "activation") {
    if (product(observable_dims(spec.params["hamiltonian"], base)) != dim) {
      return "Hamiltonian dimension differs from the state dimension";
    }
  }
  return std::nullopt;
}

Evaluation evaluate(const CriterionSpec& spec, const DensityMatrix& rho, const DetectionConfig& config) {
  const std::string& id = spec.id;
  const Json& p = spec.params;
  const fs::path& base = config.base_dir;
  if (auto why = criterion_state_mismatch(spec, rho.dims(), base, config.solver)) throw DimensionError(*why);

  Evaluation out;
  if (id == "unext.invariant.werner" || id == "unext.invariant.isotropic") {
    const auto kind = id == "unext.invariant.werner" ? InvariantKind::werner_invariant
                                                     : InvariantKind::isotropic_invariant;
    const double a1 = get_number(p, "alpha1", 0.0);
    const double a2 = get_number(p, "alpha2", 1.0);
    const std::size_t k = get_k(p);
    const std::size_t d = rho.dims()[0];
    out.verdict = evaluate_witness(invariant_unext_witness(a1, a2, kind, d, k), rho);
    out.diagnostics = {{"alpha1", a1}, {"alpha2", a2}, {"k", k}, {"d", d}};
  } else if (id == "unext.model.xxx" || id == "unext.model.j1j2") {
    const std::size_t k = get_k(p);
    const ChainModel model = chain_model(spec, *qubit_count(rho.dims()));
    out.verdict = evaluate_witness(model_unext_witness(model, k), rho);
    out.diagnostics = {{"sites", model.sites}, {"k", k}};
  } else if (id == "steering.model") {
    const ChainModel model = chain_model(spec, *qubit_count(rho.dims()));
    out.verdict = evaluate_witness(steering_witness(model), rho);
    out.diagnostics = {{"sites", model.sites}};
    if (model.kind == ChainKind::j1j2) out.diagnostics["derived_by_analogy"] = true;
  } else if (id == "bell.model") {
    const ChainModel model = chain_model(spec, *qubit_count(rho.dims()));
    out.verdict = evaluate_witness(bell_nonlocality_witness(model, get_number(p, "p_bell")), rho);
    out.diagnostics = {{"sites", model.sites}, {"p_bell", get_number(p, "p_bell")}};
  } else if (id == "entanglement.model") {
    const std::size_t sites = *qubit_count(rho.dims());
    out.verdict = evaluate_witness(entanglement_witness(sites, get_coupling(p, "J", 1.0)), rho);
    out.diagnostics = {{"sites", sites}};
  } else if (id == "unext.feasibility") {
    const std::size_t k = get_k(p, kMaxExtensionK);
    const FeasibilityResult r =
        k_extension_feasible({rho, k, config.solver.ext_tol, config.solver.ext_iters});
    out.verdict = verdict_from_mean(r.residuals.marginal_violation, config.solver.ext_tol, Direction::above_detects,
                                    "symmetric-extension search on A B^" + std::to_string(k) +
                                        ": detected when no extension exists (alternating projections stall above "
                                        "tolerance)");
    out.verdict.detected = r.status == Feasibility::infeasible;
    out.verdict.undecided = r.status == Feasibility::undecided;
    out.diagnostics = {{"k", k},
                       {"status", std::string(to_string(r.status))},
                       {"iterations", r.iterations},
                       {"gap", r.gap},
                       {"tolerance", config.solver.ext_tol},
                       {"residuals", residuals_json(r.residuals)}};
  } else if (id == "unext.entropy") {
    const std::size_t k = get_k(p, kMaxExtensionK);
    const std::size_t d = rho.dims()[0];
    const Observable a = p.contains("observable") ? build_observable(p["observable"], base) : swap_operator(d);
    MaxEntropyOptions options;
    options.tolerance = config.solver.ext_tol;
    options.projection_iterations = config.solver.ext_iters;
    const EntropyWitnessResult r = entropy_unext_check(rho, a, k, options);
    out.verdict = r.verdict;
    out.diagnostics = {{"k", k},
                       {"bound_status", std::string(to_string(r.bound.status))},
                       {"bound_steps", r.bound.steps},
                       {"bound_residuals", residuals_json(r.bound.residuals)}};
  } else if (id == "coherence.basis") {
    const Observable a = build_observable(get_object(p, "observable"), base);
    out.verdict = evaluate_witness(coherence_witness(a, basis_matrix(p, a.dim(), base)), rho);
  } else if (id == "coherence.entropy") {
    const Observable a = build_observable(get_object(p, "observable"), base);
    const double s_min = get_number(p, "s_min");
    const double s_state = von_neumann_entropy(rho);
    // The bound only covers states with S >= S'; using min(s_min, S(rho)) keeps it valid for every state.
    const double s_eff = std::max(0.0, std::min(s_min, s_state));
    const double threshold = coherence_threshold_entropy(a, basis_matrix(p, a.dim(), base), s_eff);
    out.verdict = verdict_from_mean(trace_product(rho.matrix(), a.matrix()).real(), threshold,
                                    Direction::below_detects,
                                    "incoherent states with entropy >= S' have Tr[rho A] >= min over p with H(p) >= S' "
                                    "of sum_i p_i A_ii");
    out.diagnostics = {{"s_min", s_min}, {"state_entropy", s_state}, {"effective_s", s_eff}};
  } else if (id == "coherence.ptapt") {
    const auto s = bloch_decompose(rho).coherence_vector;
    out.verdict = pt_apt_coherence_check({s[0], s[1], s[2]}, ptapt_spec(p), complex_order(p));
    out.diagnostics = {{"bloch", s}};
  } else if (id == "activation") {
    out.verdict = evaluate_witness(activation_witness(build_observable(get_object(p, "hamiltonian"), base)), rho);
  } else {
    throw DomainError("unknown criterion '" + id + "'");
  }
  return out;
}

}  // namespace qproxy::report
