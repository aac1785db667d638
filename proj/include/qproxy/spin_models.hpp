#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "qproxy/linalg/quantum_types.hpp"

namespace qproxy {

enum class ModelFamily { heisenberg, xy_field, j1j2 };

/// Hamiltonians are written in Pauli units (sigma, not S = sigma/2).
/// Couplings: heisenberg {Jx, Jy, Jz}; xy_field {Jx, Jy}; j1j2 {J1, J2}.
struct SpinChainSpec {
  ModelFamily family = ModelFamily::heisenberg;
  std::size_t sites = 2;
  std::vector<double> couplings;
  double field = 0.0;
  bool periodic = true;
};

enum class PTAPTKind { pt, apt };

struct PTAPTSpec {
  PTAPTKind kind = PTAPTKind::pt;
  double s = 1.0;
  double gamma = 0.0;
};

/// alpha1 I + sum_m alpha2[m] (F_{A_m B_m} + F_{A_{m+1} B_m}) on qubits
/// ordered A_1 B_1 ... A_N B_N, with A_{N+1} = A_1.
struct GenInvariantSpec {
  std::size_t n = 1;
  double alpha1 = 0.0;
  std::vector<double> alpha2;
};

/// Two-site term Jx XX + Jy YY + Jz ZZ between sites i and j (0-based).
struct Bond {
  std::size_t i;
  std::size_t j;
  double jx;
  double jy;
  double jz;
};

std::string_view to_string(ModelFamily family);
/// Throws DomainError for unknown names.
ModelFamily model_family_from_string(std::string_view name);

/// Bonds of the chain described by `spec`, after validating it.
std::vector<Bond> chain_bonds(const SpinChainSpec& spec);

Observable heisenberg_hamiltonian(const SpinChainSpec& spec);
Observable xy_field_hamiltonian(const SpinChainSpec& spec);
Observable j1j2_hamiltonian(const SpinChainSpec& spec);
/// Dispatches on spec.family.
Observable build_hamiltonian(const SpinChainSpec& spec);

/// PT: [[i g, s], [s, -i g]]; APT: [[g, i s], [i s, -g]]. Throws for s <= 0 or g < 0.
Observable pt_apt_hamiltonian(const PTAPTSpec& spec);

Observable general_invariant_hamiltonian(const GenInvariantSpec& spec);

enum class ThermoModel { xxx, isotropic_xy, ising };

/// Ground energy constant per site times N times coupling, as quoted for the
/// thermodynamic limit: XXX -1.77 N |J|, isotropic XY -Jx N / pi, Ising -Jx N / 2.
/// These constants assume the S = sigma/2 normalization for XY and Ising; see README.
double thermodynamic_ground_energy(ThermoModel model, double sites, double coupling);

/// Bethe-ansatz value 1 - 4 ln 2 of the XXX ground energy per site in Pauli units.
double xxx_bethe_energy_per_site();

/// Row-parallel (OpenMP) assembly of sum over bonds plus field * sum_l Z_l.
ComplexMatrix assemble_spin_hamiltonian(std::size_t sites, std::span<const Bond> bonds, double field);

namespace reference {

/// Serial Kronecker-sum assembly; exponentially slower, for cross-checks at small N.
ComplexMatrix assemble_spin_hamiltonian(std::size_t sites, std::span<const Bond> bonds, double field);

}  // namespace reference

}  // namespace qproxy
