#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qproxy/error.hpp"
#include "qproxy/linalg/cap.hpp"
#include "qproxy/linalg/spectral.hpp"
#include "qproxy/operators.hpp"
#include "qproxy/spin_models.hpp"
#include "qproxy/states.hpp"
#include "support.hpp"

using namespace qproxy;
using namespace testing;

namespace {

SpinChainSpec xxx(std::size_t n, double j = 1.0) { return {ModelFamily::heisenberg, n, {j, j, j}}; }

// Chain built from explicit tensor products of Pauli matrices.
ComplexMatrix chain_by_hand(std::size_t n, const std::vector<Bond>& bonds, double field) {
  ComplexMatrix h(std::size_t{1} << n);
  for (const auto& b : bonds) {
    h += site_op(pauli_x(), b.i, n) * site_op(pauli_x(), b.j, n) * Complex(b.jx);
    h += site_op(pauli_y(), b.i, n) * site_op(pauli_y(), b.j, n) * Complex(b.jy);
    h += site_op(pauli_z(), b.i, n) * site_op(pauli_z(), b.j, n) * Complex(b.jz);
  }
  for (std::size_t l = 0; l < n; ++l) h += site_op(pauli_z(), l, n) * Complex(field);
  return h;
}

ComplexMatrix total_sz(std::size_t n) {
  ComplexMatrix s(std::size_t{1} << n);
  for (std::size_t l = 0; l < n; ++l) s += site_op(pauli_z(), l, n);
  return s;
}

ComplexMatrix cyclic_shift(std::size_t n) {
  std::vector<std::size_t> perm(n);
  for (std::size_t j = 0; j < n; ++j) perm[j] = (j + 1) % n;
  return permutation_operator(perm, 2);
}

}  // namespace

TEST_SUITE("spin_models") {

TEST_CASE("two-site XXX ring counts the bond twice") {
  const Observable h = heisenberg_hamiltonian(xxx(2));
  ComplexMatrix expect(4);
  for (const auto& p : {pauli_x(), pauli_y(), pauli_z()}) expect += kron_naive(p, p) * Complex(2.0);
  CHECK(max_abs_diff(h.matrix(), expect) < 1e-15);
  // singlet of sum sigma.sigma sits at -3, doubled
  CHECK(eigenvalues(h.matrix()).front() == doctest::Approx(-6.0));
}

TEST_CASE("Heisenberg ring ground energies") {
  CHECK(ground_state(heisenberg_hamiltonian(xxx(4))).energy == doctest::Approx(-8.0).epsilon(1e-12));
  const Observable h8 = heisenberg_hamiltonian(xxx(8));
  CHECK(h8.matrix().is_real());
  CHECK(h8.matrix().hermitian_deviation() == 0.0);
  // per-site energy approaches the Bethe value from below for even rings
  const double e8 = ground_state(h8).energy / 8.0;
  CHECK(e8 < xxx_bethe_energy_per_site());
  CHECK(e8 > 1.05 * xxx_bethe_energy_per_site());
}

TEST_CASE("OpenMP assembly equals the explicit tensor-product Hamiltonian") {
  for (std::size_t n : {2, 3, 5, 7}) {
    std::vector<Bond> bonds;
    for (std::size_t l = 0; l < n; ++l) bonds.push_back({l, (l + 1) % n, 0.7, -0.3, 1.1});
    if (n >= 4) bonds.push_back({0, 2, 0.2, 0.5, -0.4});
    if (n == 2) bonds.pop_back();
    const ComplexMatrix fast = assemble_spin_hamiltonian(n, bonds, 0.35);
    CHECK(max_abs_diff(fast, reference::assemble_spin_hamiltonian(n, bonds, 0.35)) < 1e-13);
    CHECK(max_abs_diff(fast, chain_by_hand(n, bonds, 0.35)) < 1e-13);
  }
}

TEST_CASE("XY model with field") {
  const Observable xy = xy_field_hamiltonian({ModelFamily::xy_field, 6, {1, 1}, 0.0});
  for (std::size_t i = 0; i < xy.dim(); ++i) CHECK(xy.matrix()(i, i) == Complex(0.0));

  const Observable xyh = xy_field_hamiltonian({ModelFamily::xy_field, 4, {1, 0.5}, 0.3});
  for (std::size_t i = 0; i < 16; ++i) {
    double expect = 0.0;
    for (std::size_t l = 0; l < 4; ++l) expect += ((i >> (3 - l)) & 1U) ? -0.3 : 0.3;
    CHECK(xyh.matrix()(i, i).real() == doctest::Approx(expect));
  }

  // Ising chain in Pauli units: classical, every bond at -Jx.
  const Observable ising = xy_field_hamiltonian({ModelFamily::xy_field, 8, {1, 0}, 0.0});
  CHECK(ground_state(ising).energy == doctest::Approx(-8.0).epsilon(1e-12));
}

TEST_CASE("isotropic XY ground energy tracks -4 Jx N / pi in Pauli units") {
  // Pauli-unit couplings are four times the spin-1/2 ones the quoted constant refers to.
  const std::size_t n = 10;
  const double e = ground_state(xy_field_hamiltonian({ModelFamily::xy_field, n, {1, 1}, 0.0})).energy;
  const double quoted = 4.0 * thermodynamic_ground_energy(ThermoModel::isotropic_xy, n, 1.0);
  CHECK(e < 0.0);
  CHECK(std::abs(e / quoted - 1.0) < 0.03);
}

TEST_CASE("J1-J2 chains") {
  const ComplexMatrix j1j2_only = j1j2_hamiltonian({ModelFamily::j1j2, 6, {1.0, 0.0}}).matrix();
  CHECK(max_abs_diff(j1j2_only, heisenberg_hamiltonian(xxx(6)).matrix()) == 0.0);

  // Majumdar-Ghosh point: the dimer product state is an exact ground state at -1.5 N J1.
  const Observable mg = j1j2_hamiltonian({ModelFamily::j1j2, 6, {1.0, 0.5}});
  const auto g = ground_state(mg);
  CHECK(g.energy == doctest::Approx(-9.0).epsilon(1e-12));
  CHECK(g.degeneracy == 2);
  const double r = 1 / std::sqrt(2.0);
  const std::vector<Complex> singlet{0, r, -r, 0};
  std::vector<Complex> dimer{1.0};
  for (int pair = 0; pair < 3; ++pair) {
    std::vector<Complex> next(dimer.size() * 4);
    for (std::size_t a = 0; a < dimer.size(); ++a)
      for (std::size_t b = 0; b < 4; ++b) next[a * 4 + b] = dimer[a] * singlet[b];
    dimer = next;
  }
  CHECK(expectation_value(DensityMatrix::from_pure(dimer, {64}), mg).real() == doctest::Approx(-9.0).epsilon(1e-12));

  CHECK(ground_state(j1j2_hamiltonian({ModelFamily::j1j2, 6, {1.0, 0.3}})).energy == doctest::Approx(-9.8).epsilon(1e-10));
  CHECK_THROWS_AS(j1j2_hamiltonian({ModelFamily::j1j2, 3, {1.0, 0.5}}), DomainError);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(build_hamiltonian({ModelFamily::heisenberg, 13, {1, 1, 1}}), CapError);
  CHECK_THROWS_AS(build_hamiltonian({ModelFamily::heisenberg, 1, {1, 1, 1}}), DomainError);
  CHECK_THROWS_AS(build_hamiltonian({ModelFamily::heisenberg, 4, {1, 1}}), DomainError);
  CHECK_THROWS_AS(build_hamiltonian({ModelFamily::xy_field, 4, {1, 1, 1}}), DomainError);
  CHECK_THROWS_AS(build_hamiltonian({ModelFamily::heisenberg, 4, {1, 1, 1}, 0.5}), DomainError);
  CHECK_THROWS_AS(model_family_from_string("kagome"), DomainError);
  CHECK(model_family_from_string(to_string(ModelFamily::j1j2)) == ModelFamily::j1j2);
}

TEST_CASE("open boundary drops the wrap-around bond") {
  const SpinChainSpec open{ModelFamily::heisenberg, 4, {1, 1, 1}, 0.0, false};
  CHECK(chain_bonds(open).size() == 3);
  CHECK(chain_bonds(xxx(4)).size() == 4);
  CHECK(ground_state(heisenberg_hamiltonian(open)).energy < -6.0);
}

TEST_CASE("magnetization conservation when Jx = Jy") {
  const std::vector<SpinChainSpec> specs{
      xxx(6), {ModelFamily::heisenberg, 5, {0.5, 0.5, 2.0}}, {ModelFamily::xy_field, 6, {1, 1}, 0.7},
      {ModelFamily::j1j2, 6, {1.0, 0.4}}};
  for (const auto& spec : specs) {
    const ComplexMatrix h = build_hamiltonian(spec).matrix();
    const ComplexMatrix s = total_sz(spec.sites);
    CHECK((h * s - s * h).max_abs() <= 1e-10);
  }
  const ComplexMatrix ising = build_hamiltonian({ModelFamily::xy_field, 4, {1, 0}, 0.0}).matrix();
  CHECK((ising * total_sz(4) - total_sz(4) * ising).max_abs() > 1.0);
}

TEST_CASE("periodic chains are translation invariant") {
  const std::vector<SpinChainSpec> specs{xxx(6), {ModelFamily::xy_field, 5, {1, 0.2}, 0.4}, {ModelFamily::j1j2, 7, {1.0, 0.6}}};
  for (const auto& spec : specs) {
    const ComplexMatrix h = build_hamiltonian(spec).matrix();
    CHECK(max_abs_diff(conjugate_by(cyclic_shift(spec.sites), h), h) <= 1e-10);
  }
  const SpinChainSpec open{ModelFamily::heisenberg, 5, {1, 1, 1}, 0.0, false};
  const ComplexMatrix ho = build_hamiltonian(open).matrix();
  CHECK(max_abs_diff(conjugate_by(cyclic_shift(5), ho), ho) > 0.5);
}

TEST_CASE("PT and APT Hamiltonians") {
  CHECK(max_abs_diff(pt_apt_hamiltonian({PTAPTKind::pt, 1.5, 0.0}).matrix(), pauli_x() * Complex(1.5)) == 0.0);
  const ComplexMatrix apt = pt_apt_hamiltonian({PTAPTKind::apt, 1e-300, 0.8}).matrix();
  CHECK(max_abs_diff(apt, mat2(0.8, 0, 0, -0.8)) < 1e-290);
  const ComplexMatrix pt = pt_apt_hamiltonian({PTAPTKind::pt, 2.0, 1.0}).matrix();
  CHECK(max_abs_diff(pt, mat2(Complex(0, 1), 2, 2, Complex(0, -1))) == 0.0);
  CHECK(max_abs_diff(pt_apt_hamiltonian({PTAPTKind::apt, 2.0, 1.0}).matrix(), mat2(1, Complex(0, 2), Complex(0, 2), -1)) == 0.0);
  // Tr[tau H_PT] = i gamma v_z + v_x s
  const std::array<double, 3> v{0.3, -0.4, 0.5};
  const DensityMatrix tau = qubit_from_bloch(v);
  const Complex mean = trace_product(tau.matrix(), pt);
  CHECK(std::abs(mean - Complex(2.0 * v[0], v[2])) < 1e-15);
  CHECK_THROWS_AS(pt_apt_hamiltonian({PTAPTKind::pt, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(pt_apt_hamiltonian({PTAPTKind::pt, 1.0, -1.0}), DomainError);
}

TEST_CASE("generalized invariant Hamiltonian") {
  const ComplexMatrix n1 = general_invariant_hamiltonian({1, 0.4, {1.5}}).matrix();
  CHECK(max_abs_diff(n1, ComplexMatrix::identity(4) * Complex(0.4) + swap_operator(2).matrix() * Complex(3.0)) < 1e-14);

  for (double j : {1.0, 0.6}) {
    const ComplexMatrix n2 = general_invariant_hamiltonian({2, -4 * j, {2 * j, 2 * j}}).matrix();
    CHECK(max_abs_diff(n2, heisenberg_hamiltonian(xxx(4, j)).matrix()) < 1e-14);
    const ComplexMatrix n6 = general_invariant_hamiltonian({6, -12 * j, std::vector<double>(6, 2 * j)}).matrix();
    CHECK(max_abs_diff(n6, heisenberg_hamiltonian(xxx(12, j)).matrix()) < 1e-13);
  }
  CHECK(max_abs_diff(general_invariant_hamiltonian({3, 2.5, {0, 0, 0}}).matrix(), ComplexMatrix::identity(64) * Complex(2.5)) == 0.0);
  CHECK_THROWS_AS(general_invariant_hamiltonian({2, 0.0, {1.0}}), DomainError);
}

TEST_CASE("generalized invariant Hamiltonian commutes with U on every qubit") {
  Rng rng(55);
  const ComplexMatrix h = general_invariant_hamiltonian({2, 0.3, {1.2, -0.7}}).matrix();
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix u = random_unitary(2, rng);
    ComplexMatrix u4 = kron_naive(kron_naive(u, u), kron_naive(u, u));
    CHECK(max_abs_diff(conjugate_by(u4, h), h) <= 1e-9);
  }
}

TEST_CASE("thermodynamic ground-energy constants") {
  CHECK(thermodynamic_ground_energy(ThermoModel::xxx, 10, 1.0) == doctest::Approx(-17.7));
  CHECK(thermodynamic_ground_energy(ThermoModel::xxx, 10, -1.0) == doctest::Approx(-17.7));
  CHECK(thermodynamic_ground_energy(ThermoModel::isotropic_xy, std::numbers::pi, 1.0) == doctest::Approx(-1.0));
  CHECK(thermodynamic_ground_energy(ThermoModel::ising, 4, 2.0) == doctest::Approx(-4.0));
  CHECK(xxx_bethe_energy_per_site() == doctest::Approx(-1.7725887).epsilon(1e-7));
}

}  // TEST_SUITE
