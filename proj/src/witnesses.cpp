#include "qproxy/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "qproxy/error.hpp"
#include "qproxy/linalg/spectral.hpp"
#include "qproxy/operators.hpp"

namespace qproxy {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

void require_antiferro(double j, const char* name) {
  if (!(j >= 0.0)) throw DomainError(std::string(name) + " must be >= 0 (criteria assume antiferromagnetic couplings)");
}

double half_sites(const ChainModel& model, const char* what) {
  if (model.sites < 2 || model.sites % 2 != 0) {
    throw DomainError(std::string(what) + ": needs an even number of sites 2N >= 2");
  }
  return static_cast<double>(model.sites) / 2.0;
}

double total_coupling(const ChainModel& model) {
  require_antiferro(model.j1, model.kind == ChainKind::xxx ? "J" : "J1");
  if (model.kind == ChainKind::xxx) return model.j1;
  require_antiferro(model.j2, "J2");
  return model.j1 + model.j2;
}

std::vector<double> diagonal_in(const Observable& a, const ComplexMatrix& basis) {
  if (basis.dim() != a.dim()) throw DimensionError("basis dimension does not match the observable");
  const ComplexMatrix gram = basis.adjoint() * basis;
  if (max_abs_diff(gram, ComplexMatrix::identity(basis.dim())) > 1e-8) {
    throw DomainError("basis columns are not orthonormal");
  }
  const ComplexMatrix rotated = basis.adjoint() * a.matrix() * basis;
  std::vector<double> diag(a.dim());
  for (std::size_t i = 0; i < diag.size(); ++i) diag[i] = rotated(i, i).real();
  return diag;
}

std::string chain_label(const ChainModel& m) {
  if (m.kind == ChainKind::xxx) return "XXX ring, " + std::to_string(m.sites) + " sites, J=" + fmt(m.j1);
  return "J1-J2 ring, " + std::to_string(m.sites) + " sites, J1=" + fmt(m.j1) + ", J2=" + fmt(m.j2);
}

}  // namespace

std::string_view to_string(Direction d) { return d == Direction::below_detects ? "below" : "above"; }

std::string_view to_string(PropertyKind p) {
  switch (p) {
    case PropertyKind::k_unextendible:
      return "k-unextendible";
    case PropertyKind::coherent:
      return "coherent";
    case PropertyKind::active:
      return "active";
    case PropertyKind::steerable:
      return "steerable";
    case PropertyKind::entangled:
      return "entangled";
    case PropertyKind::bell_nonlocal:
      return "bell-nonlocal";
  }
  return "?";
}

std::string_view to_string(ComplexOrder c) { return c == ComplexOrder::real_part ? "real_part" : "literal"; }

ProxyWitness make_proxy_witness(Observable a, double a_min, PropertyClass property, Direction direction,
                                std::string provenance) {
  if (!std::isfinite(a_min)) throw DomainError("witness threshold must be finite");
  if (provenance.empty()) provenance = std::string(to_string(property.kind)) + " proxy witness";
  return {std::move(a), a_min, direction, std::move(property), std::move(provenance)};
}

Verdict verdict_from_mean(double mean, double threshold, Direction direction, std::string provenance) {
  Verdict v;
  v.mean_value = mean;
  v.threshold = threshold;
  v.direction = direction;
  v.witness_value = direction == Direction::below_detects ? mean - threshold : threshold - mean;
  v.detected = v.witness_value < 0.0;
  v.margin = -v.witness_value;
  v.provenance = std::move(provenance);
  return v;
}

Verdict evaluate_witness(const ProxyWitness& w, const DensityMatrix& rho) {
  if (rho.dim() != w.observable.dim()) {
    throw DimensionError("state dimension " + std::to_string(rho.dim()) + " does not match witness dimension " +
                         std::to_string(w.observable.dim()));
  }
  const Complex mean = trace_product(rho.matrix(), w.observable.matrix());
  Verdict v = verdict_from_mean(mean.real(), w.threshold, w.direction, w.provenance);
  if (!w.observable.is_hermitian()) v.mean_imag = mean.imag();
  return v;
}

double unext_threshold_invariant(double alpha1, double alpha2, InvariantKind kind, std::size_t d, std::size_t k) {
  if (d < 2 || k < 1) throw DomainError("unext_threshold_invariant: need d >= 2, k >= 1");
  if (kind == InvariantKind::isotropic_invariant) return alpha1;
  return alpha1 - alpha2 * static_cast<double>(d - 1) / static_cast<double>(k);
}

Observable invariant_hamiltonian(double alpha1, double alpha2, InvariantKind kind, std::size_t d) {
  const Observable op = kind == InvariantKind::werner_invariant ? swap_operator(d) : gamma_operator(d);
  return Observable(ComplexMatrix::identity(d * d) * Complex(alpha1) + op.matrix() * Complex(alpha2), {d, d});
}

ProxyWitness invariant_unext_witness(double alpha1, double alpha2, InvariantKind kind, std::size_t d,
                                     std::size_t k) {
  if (alpha2 < 0.0) throw DomainError("alpha2 must be >= 0 for the invariant k-extendibility bound");
  if (k < 2) throw DomainError("k must be >= 2");
  const bool werner = kind == InvariantKind::werner_invariant;
  std::string prov = werner ? "min over k-extendible states of Tr[rho (a1 I + a2 F)] = a1 - a2 (d-1)/k, "
                              "attained by the Werner state at p = ((d-1)/k + 1)/2"
                            : "min over k-extendible states of Tr[rho (a1 I + a2 Gamma)] = a1 (t = 0 is k-extendible)";
  return make_proxy_witness(invariant_hamiltonian(alpha1, alpha2, kind, d),
                            unext_threshold_invariant(alpha1, alpha2, kind, d, k),
                            {PropertyKind::k_unextendible, k, werner ? "k-extendible states (Werner bound)"
                                                                     : "k-extendible states (isotropic bound)"},
                            Direction::below_detects, std::move(prov));
}

double werner_bond_energy(std::size_t sites, double j, double p) {
  return static_cast<double>(sites) * j * (1.0 - 4.0 * p);
}

double unext_threshold_model(const ChainModel& model, std::size_t k) {
  if (k < 2) throw DomainError("unext_threshold_model: k must be >= 2");
  const double n = half_sites(model, "unext_threshold_model");
  return -2.0 * n * total_coupling(model) * (1.0 + 2.0 / static_cast<double>(k));
}

double steering_threshold(const ChainModel& model) {
  const double n = half_sites(model, "steering_threshold");
  return -3.0 * n * total_coupling(model);
}

double entanglement_threshold(std::size_t sites, double j) {
  if (sites < 2) throw DomainError("entanglement_threshold: need at least 2 sites");
  require_antiferro(j, "J");
  return -static_cast<double>(sites) * j;
}

Observable chain_hamiltonian(const ChainModel& model) {
  if (model.kind == ChainKind::xxx) {
    return build_hamiltonian({ModelFamily::heisenberg, model.sites, {model.j1, model.j1, model.j1}});
  }
  return build_hamiltonian({ModelFamily::j1j2, model.sites, {model.j1, model.j2}});
}

ProxyWitness model_unext_witness(const ChainModel& model, std::size_t k) {
  const double threshold = unext_threshold_model(model, k);
  std::string prov = chain_label(model) + ": every bond of a k-extendible state has Werner p <= (1 + 1/k)/2, so " +
                     (model.kind == ChainKind::xxx ? "E >= -2NJ(1 + 2/k)" : "E >= -2N(J1 + J2)(1 + 2/k)");
  return make_proxy_witness(chain_hamiltonian(model), threshold,
                            {PropertyKind::k_unextendible, k, "states k-extendible across every A_m|B_m pairing"},
                            Direction::below_detects, std::move(prov));
}

ProxyWitness steering_witness(const ChainModel& model) {
  const double threshold = steering_threshold(model);
  std::string prov = chain_label(model) + ": unsteerable Werner bonds have p <= 1 - (d+1)/(2d^2) = 5/8, so E >= " +
                     (model.kind == ChainKind::xxx ? "-3NJ" : "-3N(J1 + J2) (same substitution, by analogy)");
  return make_proxy_witness(chain_hamiltonian(model), threshold, {PropertyKind::steerable, 0, "unsteerable states"},
                            Direction::below_detects, std::move(prov));
}

ProxyWitness entanglement_witness(std::size_t sites, double j) {
  const double threshold = entanglement_threshold(sites, j);
  return make_proxy_witness(chain_hamiltonian({ChainKind::xxx, sites, j, 0.0}), threshold,
                            {PropertyKind::entangled, 0, "fully separable states"}, Direction::below_detects,
                            "XXX ring, " + std::to_string(sites) +
                                " sites: separable bonds have Werner p <= 1/2, so E >= -NJ");
}

double coherence_threshold(const Observable& a, const ComplexMatrix& basis) {
  const auto diag = diagonal_in(a, basis);
  return *std::min_element(diag.begin(), diag.end());
}

double coherence_threshold(const Observable& a) { return coherence_threshold(a, ComplexMatrix::identity(a.dim())); }

double coherence_threshold_entropy(const Observable& a, const ComplexMatrix& basis, double s_min) {
  const auto diag = diagonal_in(a, basis);
  const double log_d = std::log2(static_cast<double>(diag.size()));
  if (!(s_min >= 0.0 && s_min <= log_d + 1e-12)) {
    throw DomainError("coherence_threshold_entropy: s_min must lie in [0, log2 d]");
  }
  const double lo = *std::min_element(diag.begin(), diag.end());
  const double scale = std::max(1.0, std::abs(lo));
  const auto at_min = std::count_if(diag.begin(), diag.end(), [&](double x) { return x - lo <= 1e-12 * scale; });
  if (s_min <= std::log2(static_cast<double>(at_min))) return lo;

  // Tilted distribution p ~ exp(-beta (a_i - min)); entropy falls monotonically in beta.
  std::vector<double> p(diag.size());
  auto tilt = [&](double beta) {
    double z = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) z += p[i] = std::exp(-beta * (diag[i] - lo));
    for (auto& x : p) x /= z;
    return shannon_entropy(p);
  };
  double beta_lo = 0.0;
  double beta_hi = 1.0;
  while (tilt(beta_hi) > s_min && beta_hi < 1e12) beta_hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (beta_lo + beta_hi);
    (tilt(mid) >= s_min ? beta_lo : beta_hi) = mid;
  }
  tilt(beta_lo);
  return std::inner_product(p.begin(), p.end(), diag.begin(), 0.0);
}

double coherence_threshold_entropy(const Observable& a, double s_min) {
  return coherence_threshold_entropy(a, ComplexMatrix::identity(a.dim()), s_min);
}

ProxyWitness coherence_witness(const Observable& a, const ComplexMatrix& basis) {
  return make_proxy_witness(a, coherence_threshold(a, basis), {PropertyKind::coherent, 0, "incoherent states"},
                            Direction::below_detects, "incoherent states give Tr[rho A] = sum_i p_i A_ii >= min_i A_ii");
}

Verdict pt_apt_coherence_check(const std::array<double, 3>& v, const PTAPTSpec& spec, ComplexOrder order) {
  const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (!(norm <= 1.0 + 1e-10)) throw DomainError("pt_apt_coherence_check: |v| exceeds 1");
  (void)pt_apt_hamiltonian(spec);  // validates s and gamma

  const bool pt = spec.kind == PTAPTKind::pt;
  const double lhs = v[0] * spec.s;
  // Right-hand side is purely imaginary: -i g (1 + v_z) for PT, +i g (1 + v_z) for APT.
  const double rhs_imag = (pt ? -1.0 : 1.0) * spec.gamma * (1.0 + v[2]);
  const Complex mean = pt ? Complex(lhs, spec.gamma * v[2]) : Complex(spec.gamma * v[2], lhs);

  Verdict out;
  out.mean_value = lhs;
  out.threshold = 0.0;
  out.direction = Direction::below_detects;
  out.mean_imag = spec.gamma * v[2];
  std::ostringstream prov;
  prov << (pt ? "PT" : "APT") << " Hamiltonian, s=" << fmt(spec.s) << ", gamma=" << fmt(spec.gamma)
       << ": Tr[tau H] = " << fmt(mean.real()) << (mean.imag() < 0 ? " - " : " + ") << fmt(std::abs(mean.imag()))
       << "i; incoherent minimum " << (pt ? "-i gamma" : "-gamma") << "; compared v_x s against "
       << fmt(rhs_imag) << "i";
  if (order == ComplexOrder::real_part) {
    out.threshold_imag = (pt ? -1.0 : 1.0) * spec.gamma;
    out.witness_value = lhs;
    prov << " (real parts only)";
  } else {
    out.threshold_imag = rhs_imag;
    out.convention_dependent = true;
    out.witness_value = std::abs(lhs) > 1e-15 ? lhs : -rhs_imag;
    prov << " (lexicographic: real part, then imaginary part)";
  }
  out.detected = out.witness_value < 0.0;
  out.margin = -out.witness_value;
  out.provenance = prov.str();
  return out;
}

double activation_threshold(const Observable& h) {
  if (!h.is_hermitian()) throw NotHermitianError("activation_threshold: Hamiltonian is not Hermitian");
  return h.matrix().trace().real() / static_cast<double>(h.dim());
}

ProxyWitness activation_witness(const Observable& h) {
  return make_proxy_witness(h, activation_threshold(h), {PropertyKind::active, 0, "passive states"},
                            Direction::above_detects,
                            "passive states have mean energy at most the uniform average (1/d) sum_i E_i");
}

Interval WernerRanges::k_extendible(std::size_t k) const { return {0.0, std::min(1.0, werner_ext_threshold(d, k))}; }

WernerRanges werner_property_ranges(std::size_t d) {
  if (d < 2) throw DomainError("werner_property_ranges: d must be >= 2");
  const double dd = static_cast<double>(d);
  const double lower = (dd - 1.0) / (2.0 * dd);
  return {d, {lower, 0.5}, {lower, 1.0 - (dd + 1.0) / (2.0 * dd * dd)}};
}

ProxyWitness bell_nonlocality_witness(const ChainModel& model, double p_bell) {
  if (!(p_bell >= 0.0 && p_bell <= 1.0)) throw DomainError("bell bound p must lie in [0, 1]");
  half_sites(model, "bell_nonlocality_witness");
  const double threshold = werner_bond_energy(model.sites, total_coupling(model), p_bell);
  return make_proxy_witness(chain_hamiltonian(model), threshold, {PropertyKind::bell_nonlocal, 0, "Bell-local states"},
                            Direction::below_detects,
                            chain_label(model) + ": user-supplied Werner locality bound p <= " + fmt(p_bell));
}

EntropyWitnessResult entropy_unext_check(const DensityMatrix& xi, const Observable& a, std::size_t k,
                                         const MaxEntropyOptions& options, double slack) {
  const auto& dims = xi.dims();
  if (dims.size() != 2 || dims[0] != dims[1]) throw DimensionError("entropy_unext_check: need a d x d state");
  const std::size_t d = dims[0];
  const double mean = trace_product(xi.matrix(), a.matrix()).real();
  const double s = von_neumann_entropy(xi);
  EntropyWitnessResult out{{}, max_entropy_with_mean(a, mean, k, d, options)};
  const auto& b = out.bound;
  std::string prov = "S(xi) = " + fmt(s) + " bits against the largest entropy of a " + std::to_string(k) +
                     "-extendible state with Tr[rho A] = " + fmt(mean);
  if (b.status == Feasibility::infeasible) {
    prov += " (no " + std::to_string(k) + "-extendible state reaches this mean)";
  } else if (b.status == Feasibility::undecided) {
    prov += " (bound undecided)";
  }
  out.verdict = verdict_from_mean(s, b.entropy + slack, Direction::above_detects, std::move(prov));
  out.verdict.threshold = b.entropy;
  if (b.status == Feasibility::undecided) {
    out.verdict.detected = false;
    out.verdict.undecided = true;
  }
  return out;
}

}  // namespace qproxy
