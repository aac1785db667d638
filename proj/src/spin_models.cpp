#include "qproxy/spin_models.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "qproxy/error.hpp"
#include "qproxy/linalg/cap.hpp"
#include "qproxy/operators.hpp"

namespace qproxy {

namespace {

std::size_t checked_sites(std::size_t sites, const char* what) {
  if (sites < 2) throw DomainError(std::string(what) + ": need at least 2 sites");
  if (sites >= 63 || (std::size_t{1} << sites) > dense_cap()) {
    throw CapError(std::string(what) + ": " + std::to_string(sites) + " sites exceed the dense cap (max " +
                   std::to_string(max_qubits()) + ")");
  }
  return sites;
}

void require_couplings(const SpinChainSpec& spec, std::size_t count, const char* names) {
  if (spec.couplings.size() != count) {
    throw DomainError(std::string(to_string(spec.family)) + " expects couplings " + names);
  }
}

void add_ring(std::vector<Bond>& bonds, std::size_t n, std::size_t step, bool periodic, double jx, double jy,
              double jz) {
  for (std::size_t l = 0; l < n; ++l) {
    if (!periodic && l + step >= n) break;
    bonds.push_back({l, (l + step) % n, jx, jy, jz});
  }
}

}  // namespace

std::string_view to_string(ModelFamily family) {
  switch (family) {
    case ModelFamily::heisenberg:
      return "heisenberg";
    case ModelFamily::xy_field:
      return "xy_field";
    case ModelFamily::j1j2:
      return "j1j2";
  }
  return "?";
}

ModelFamily model_family_from_string(std::string_view name) {
  if (name == "heisenberg") return ModelFamily::heisenberg;
  if (name == "xy_field") return ModelFamily::xy_field;
  if (name == "j1j2") return ModelFamily::j1j2;
  throw DomainError("unknown model family '" + std::string(name) + "'");
}

std::vector<Bond> chain_bonds(const SpinChainSpec& spec) {
  const std::size_t n = checked_sites(spec.sites, "spin chain");
  std::vector<Bond> bonds;
  switch (spec.family) {
    case ModelFamily::heisenberg: {
      require_couplings(spec, 3, "[Jx, Jy, Jz]");
      const auto& c = spec.couplings;
      add_ring(bonds, n, 1, spec.periodic, c[0], c[1], c[2]);
      break;
    }
    case ModelFamily::xy_field: {
      require_couplings(spec, 2, "[Jx, Jy]");
      add_ring(bonds, n, 1, spec.periodic, spec.couplings[0], spec.couplings[1], 0.0);
      break;
    }
    case ModelFamily::j1j2: {
      require_couplings(spec, 2, "[J1, J2]");
      if (n < 4) throw DomainError("j1j2 needs at least 4 sites for distinct next-nearest bonds");
      const double j1 = spec.couplings[0];
      const double j2 = spec.couplings[1];
      add_ring(bonds, n, 1, spec.periodic, j1, j1, j1);
      add_ring(bonds, n, 2, spec.periodic, j2, j2, j2);
      break;
    }
  }
  return bonds;
}

Observable heisenberg_hamiltonian(const SpinChainSpec& spec) {
  if (spec.family != ModelFamily::heisenberg) throw DomainError("heisenberg_hamiltonian: wrong family");
  return build_hamiltonian(spec);
}

Observable xy_field_hamiltonian(const SpinChainSpec& spec) {
  if (spec.family != ModelFamily::xy_field) throw DomainError("xy_field_hamiltonian: wrong family");
  return build_hamiltonian(spec);
}

Observable j1j2_hamiltonian(const SpinChainSpec& spec) {
  if (spec.family != ModelFamily::j1j2) throw DomainError("j1j2_hamiltonian: wrong family");
  return build_hamiltonian(spec);
}

Observable build_hamiltonian(const SpinChainSpec& spec) {
  const auto bonds = chain_bonds(spec);
  const double field = spec.family == ModelFamily::xy_field ? spec.field : 0.0;
  if (spec.family != ModelFamily::xy_field && spec.field != 0.0) {
    throw DomainError(std::string(to_string(spec.family)) + " takes no field term");
  }
  return Observable(assemble_spin_hamiltonian(spec.sites, bonds, field), Dims(spec.sites, 2));
}

Observable pt_apt_hamiltonian(const PTAPTSpec& spec) {
  if (!(spec.s > 0.0)) throw DomainError("PT/APT energy scale s must be positive");
  if (!(spec.gamma >= 0.0)) throw DomainError("PT/APT gamma must be non-negative");
  const Complex i{0.0, 1.0};
  ComplexMatrix h(2);
  if (spec.kind == PTAPTKind::pt) {
    h(0, 0) = i * spec.gamma;
    h(0, 1) = spec.s;
    h(1, 0) = spec.s;
    h(1, 1) = -i * spec.gamma;
  } else {
    h(0, 0) = spec.gamma;
    h(0, 1) = i * spec.s;
    h(1, 0) = i * spec.s;
    h(1, 1) = -spec.gamma;
  }
  return Observable(std::move(h), {2}, true);
}

Observable general_invariant_hamiltonian(const GenInvariantSpec& spec) {
  if (spec.n < 1) throw DomainError("general_invariant_hamiltonian: N must be >= 1");
  if (spec.alpha2.size() != spec.n) throw DomainError("general_invariant_hamiltonian: need N alpha2 values");
  const std::size_t sites = checked_sites(2 * spec.n, "general_invariant_hamiltonian");
  const std::size_t dim = std::size_t{1} << sites;
  ComplexMatrix h = ComplexMatrix::identity(dim) * Complex(spec.alpha1);

  struct SwapTerm {
    std::size_t a, b;
    double weight;
  };
  std::vector<SwapTerm> terms;
  for (std::size_t m = 0; m < spec.n; ++m) {
    const std::size_t a_m = 2 * m;
    const std::size_t b_m = 2 * m + 1;
    const std::size_t a_next = 2 * ((m + 1) % spec.n);
    terms.push_back({a_m, b_m, spec.alpha2[m]});
    terms.push_back({a_next, b_m, spec.alpha2[m]});
  }

  const auto n = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(static)
  for (std::int64_t xs = 0; xs < n; ++xs) {
    const auto x = static_cast<std::size_t>(xs);
    for (const auto& t : terms) {
      const std::size_t sa = sites - 1 - t.a;
      const std::size_t sb = sites - 1 - t.b;
      const std::size_t ba = (x >> sa) & 1U;
      const std::size_t bb = (x >> sb) & 1U;
      if (ba == bb) {
        h(x, x) += t.weight;
      } else {
        h(x, x ^ ((std::size_t{1} << sa) | (std::size_t{1} << sb))) += t.weight;
      }
    }
  }
  return Observable(std::move(h), Dims(sites, 2));
}

double xxx_bethe_energy_per_site() { return 1.0 - 4.0 * std::numbers::ln2; }

double thermodynamic_ground_energy(ThermoModel model, double sites, double coupling) {
  switch (model) {
    case ThermoModel::xxx:
      return -1.77 * sites * std::abs(coupling);
    case ThermoModel::isotropic_xy:
      return -coupling * sites / std::numbers::pi;
    case ThermoModel::ising:
      return -coupling * sites / 2.0;
  }
  throw DomainError("thermodynamic_ground_energy: unknown model");
}

ComplexMatrix assemble_spin_hamiltonian(std::size_t sites, std::span<const Bond> bonds, double field) {
  checked_sites(sites, "assemble_spin_hamiltonian");
  for (const auto& b : bonds) {
    if (b.i >= sites || b.j >= sites || b.i == b.j) throw DomainError("assemble_spin_hamiltonian: bad bond");
  }
  const std::size_t dim = std::size_t{1} << sites;
  ComplexMatrix h(dim);
  const auto n = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(static)
  for (std::int64_t xs = 0; xs < n; ++xs) {
    const auto x = static_cast<std::size_t>(xs);
    double diag = 0.0;
    for (std::size_t l = 0; l < sites; ++l) diag += ((x >> (sites - 1 - l)) & 1U) ? -field : field;
    for (const auto& b : bonds) {
      const std::size_t si = sites - 1 - b.i;
      const std::size_t sj = sites - 1 - b.j;
      const bool same = ((x >> si) & 1U) == ((x >> sj) & 1U);
      diag += same ? b.jz : -b.jz;
      // XX flips both spins with weight 1; YY with -1 on equal spins, +1 otherwise.
      const double flip = b.jx + (same ? -b.jy : b.jy);
      if (flip != 0.0) h(x, x ^ ((std::size_t{1} << si) | (std::size_t{1} << sj))) += flip;
    }
    h(x, x) += diag;
  }
  return h;
}

namespace reference {

namespace {

ComplexMatrix site_operator(const ComplexMatrix& op, std::size_t site, std::size_t sites) {
  ComplexMatrix out = site == 0 ? op : ComplexMatrix::identity(2);
  for (std::size_t l = 1; l < sites; ++l) out = tensor_product(out, l == site ? op : ComplexMatrix::identity(2));
  return out;
}

}  // namespace

ComplexMatrix assemble_spin_hamiltonian(std::size_t sites, std::span<const Bond> bonds, double field) {
  const auto paulis = su_generators(2).generators;
  const std::size_t dim = std::size_t{1} << sites;
  ComplexMatrix h(dim);
  for (const auto& b : bonds) {
    const double weights[3] = {b.jx, b.jy, b.jz};
    for (std::size_t a = 0; a < 3; ++a) {
      if (weights[a] == 0.0) continue;
      h += site_operator(paulis[a].matrix(), b.i, sites) * site_operator(paulis[a].matrix(), b.j, sites) *
           Complex(weights[a]);
    }
  }
  if (field != 0.0) {
    for (std::size_t l = 0; l < sites; ++l) h += site_operator(paulis[2].matrix(), l, sites) * Complex(field);
  }
  return h;
}

}  // namespace reference

}  // namespace qproxy
