#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "qproxy/extendibility.hpp"
#include "qproxy/linalg/quantum_types.hpp"
#include "qproxy/spin_models.hpp"

namespace qproxy {

enum class Direction { below_detects, above_detects };
std::string_view to_string(Direction d);

enum class PropertyKind { k_unextendible, coherent, active, steerable, entangled, bell_nonlocal };
std::string_view to_string(PropertyKind p);

struct PropertyClass {
  PropertyKind kind;
  std::size_t k = 0;               // k_unextendible only
  std::string restricted_set;      // description of the set C lacking the property
};

/// Z = A - A_min (below_detects) or A_max - A (above_detects).
struct ProxyWitness {
  Observable observable;
  double threshold;
  Direction direction;
  PropertyClass property;
  std::string provenance;
};

/// witness_value is oriented so that a negative value means detected:
/// Tr[rho A] - threshold below, threshold - Tr[rho A] above. Equality is not a detection.
struct Verdict {
  double mean_value = 0.0;
  double witness_value = 0.0;
  double threshold = 0.0;
  Direction direction = Direction::below_detects;
  bool detected = false;
  double margin = 0.0;  // -witness_value
  std::string provenance;
  std::optional<double> mean_imag;
  std::optional<double> threshold_imag;
  bool convention_dependent = false;
  bool undecided = false;
};

/// Throws DomainError for a non-finite threshold.
ProxyWitness make_proxy_witness(Observable a, double a_min, PropertyClass property,
                                Direction direction = Direction::below_detects, std::string provenance = {});

/// Throws DimensionError when rho and the witness disagree on the dimension.
Verdict evaluate_witness(const ProxyWitness& w, const DensityMatrix& rho);
/// Verdict for an already computed mean value.
Verdict verdict_from_mean(double mean, double threshold, Direction direction, std::string provenance);

// --- k-unextendibility ------------------------------------------------------

enum class InvariantKind { werner_invariant, isotropic_invariant };

/// werner: alpha1 - alpha2 (d-1)/k; isotropic: alpha1. Assumes alpha2 >= 0.
double unext_threshold_invariant(double alpha1, double alpha2, InvariantKind kind, std::size_t d, std::size_t k);
/// alpha1 I + alpha2 F (werner) or alpha1 I + alpha2 Gamma (isotropic) on C^d (x) C^d.
Observable invariant_hamiltonian(double alpha1, double alpha2, InvariantKind kind, std::size_t d);
/// Throws DomainError for alpha2 < 0, where the threshold is not a lower bound.
ProxyWitness invariant_unext_witness(double alpha1, double alpha2, InvariantKind kind, std::size_t d, std::size_t k);

enum class ChainKind { xxx, j1j2 };

/// Antiferromagnetic ring on `sites` qubits (2N in the pairing A1 B1 ... AN BN).
struct ChainModel {
  ChainKind kind = ChainKind::xxx;
  std::size_t sites = 4;
  double j1 = 1.0;
  double j2 = 0.0;  // j1j2 only
};

/// Energy 2 N J (1 - 4 p) of sum over 2N bonds of J sigma.sigma when every bond
/// sits at Werner parameter p; N = sites / 2.
double werner_bond_energy(std::size_t sites, double j, double p);

/// XXX: -2NJ(1 + 2/k); J1J2: -2N(J1 + J2)(1 + 2/k), with N = sites/2.
/// Throws DomainError for negative couplings, odd site counts or k < 2.
double unext_threshold_model(const ChainModel& model, std::size_t k);
/// XXX: -3NJ; J1J2: -3N(J1 + J2) by the same Werner-bound substitution.
double steering_threshold(const ChainModel& model);
/// -N J for an N-site XXX ring (full separability).
double entanglement_threshold(std::size_t sites, double j);

/// Hamiltonian of the model in Pauli units.
Observable chain_hamiltonian(const ChainModel& model);
ProxyWitness model_unext_witness(const ChainModel& model, std::size_t k);
ProxyWitness steering_witness(const ChainModel& model);
ProxyWitness entanglement_witness(std::size_t sites, double j);

// --- coherence ----------------------------------------------------------------

/// min_i <b_i|A|b_i> over the columns b_i of `basis` (a unitary).
double coherence_threshold(const Observable& a, const ComplexMatrix& basis);
double coherence_threshold(const Observable& a);  // computational basis

/// min sum_i p_i A_ii subject to H(p) >= s_min (bits), via p ~ exp(-beta A_ii).
/// Throws DomainError unless 0 <= s_min <= log2 d.
double coherence_threshold_entropy(const Observable& a, const ComplexMatrix& basis, double s_min);
double coherence_threshold_entropy(const Observable& a, double s_min);

ProxyWitness coherence_witness(const Observable& a, const ComplexMatrix& basis);

enum class ComplexOrder { real_part, literal };
std::string_view to_string(ComplexOrder c);

/// Coherence test for tau = (I + v.sigma)/2 against a PT or APT Hamiltonian.
/// real_part: detected iff v_x s < 0. literal: compares v_x s with
/// -/+ i gamma (1 + v_z) lexicographically (real, then imaginary).
Verdict pt_apt_coherence_check(const std::array<double, 3>& v, const PTAPTSpec& spec,
                               ComplexOrder order = ComplexOrder::real_part);

// --- activation ---------------------------------------------------------------

/// (1/d) sum_i E_i: the largest mean energy of a passive state.
double activation_threshold(const Observable& h);
ProxyWitness activation_witness(const Observable& h);

// --- Werner family intervals -------------------------------------------------

struct Interval {
  double lower;
  double upper;
  bool contains(double x) const noexcept { return x >= lower && x <= upper; }
};

struct WernerRanges {
  std::size_t d;
  Interval separable;
  Interval unsteerable;
  /// [0, min(1, (1/2)((d-1)/k + 1))]
  Interval k_extendible(std::size_t k) const;
};

WernerRanges werner_property_ranges(std::size_t d);

/// Stub: Bell non-locality needs a Werner non-locality bound p_bell supplied by
/// the caller; the returned witness uses the bond-energy bound at p_bell.
ProxyWitness bell_nonlocality_witness(const ChainModel& model, double p_bell);

// --- entropy-constrained unextendibility -----------------------------------

struct EntropyWitnessResult {
  Verdict verdict;
  MaxEntropyResult bound;
};

/// Flags xi as k-unextendible when S(xi) exceeds the largest entropy of a
/// k-extendible state with the same mean of A. The bound is a primal estimate,
/// so a slack of `slack` bits is required before detecting.
EntropyWitnessResult entropy_unext_check(const DensityMatrix& xi, const Observable& a, std::size_t k,
                                         const MaxEntropyOptions& options = {}, double slack = 1e-6);

}  // namespace qproxy
