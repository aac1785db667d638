#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "qproxy/error.hpp"
#include "qproxy/linalg/spectral.hpp"
#include "qproxy/operators.hpp"
#include "qproxy/states.hpp"
#include "support.hpp"

using namespace qproxy;
using namespace testing;

namespace {

std::size_t rank_of(const ComplexMatrix& m) {
  const auto ev = eigenvalues(m);
  return static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [](double x) { return std::abs(x) > 1e-9; }));
}

// Index of the permuted basis state: factor j of |x> lands at position perm[j].
ComplexMatrix permutation_by_hand(const std::vector<std::size_t>& perm, std::size_t d) {
  const std::size_t k = perm.size();
  std::size_t dim = 1;
  for (std::size_t i = 0; i < k; ++i) dim *= d;
  ComplexMatrix w(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    std::vector<std::size_t> digits(k), moved(k);
    std::size_t rest = x;
    for (std::size_t j = k; j-- > 0;) {
      digits[j] = rest % d;
      rest /= d;
    }
    for (std::size_t j = 0; j < k; ++j) moved[perm[j]] = digits[j];
    std::size_t y = 0;
    for (std::size_t j = 0; j < k; ++j) y = y * d + moved[j];
    w(y, x) = 1.0;
  }
  return w;
}

std::vector<std::size_t> compose(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> c(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) c[j] = a[b[j]];
  return c;
}

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("SU(2) generators are the Pauli matrices") {
  const GeneratorBasis g = su_generators(2);
  REQUIRE(g.generators.size() == 3);
  CHECK(max_abs_diff(g.generators[0].matrix(), pauli_x()) == 0.0);
  CHECK(max_abs_diff(g.generators[1].matrix(), pauli_y()) == 0.0);
  CHECK(max_abs_diff(g.generators[2].matrix(), pauli_z()) == 0.0);
  CHECK_THROWS_AS(su_generators(4), DomainError);
}

TEST_CASE("Gell-Mann matrices") {
  const GeneratorBasis g = su_generators(3);
  REQUIRE(g.generators.size() == 8);
  const double s = 1.0 / std::sqrt(3.0);
  const std::vector<double> t8{s, s, -2 * s};
  CHECK(max_abs_diff(g.generators[7].matrix(), ComplexMatrix::diagonal(t8)) < 1e-15);
  CHECK(std::abs(trace_product(g.generators[3].matrix(), g.generators[4].matrix())) < 1e-15);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(std::abs(g.generators[i].matrix().trace()) < 1e-15);
    CHECK(g.generators[i].matrix().hermitian_deviation() == 0.0);
    for (std::size_t j = 0; j < 8; ++j) {
      CHECK(std::abs(trace_product(g.generators[i].matrix(), g.generators[j].matrix()) - Complex(i == j ? 2.0 : 0.0)) <
            1e-14);
    }
  }
}

TEST_CASE("swap operator") {
  const ComplexMatrix f = swap_operator(2).matrix();
  // F|01> = |10>: column 1 has its one in row 2
  CHECK(f(2, 1) == Complex(1.0));
  CHECK(f(1, 1) == Complex(0.0));
  ComplexMatrix pauli_form = ComplexMatrix::identity(4);
  for (const auto& p : {pauli_x(), pauli_y(), pauli_z()}) pauli_form += kron_naive(p, p);
  CHECK(max_abs_diff(f, pauli_form * Complex(0.5)) < 1e-15);
  CHECK(std::abs(swap_operator(3).matrix().trace() - Complex(3.0)) < 1e-15);
  for (std::size_t d : {2, 3, 4}) {
    const ComplexMatrix fd = swap_operator(d).matrix();
    CHECK(max_abs_diff(fd * fd, ComplexMatrix::identity(d * d)) < 1e-12);
    CHECK(fd.hermitian_deviation() == 0.0);
  }
}

TEST_CASE("gamma operator") {
  const ComplexMatrix g = gamma_operator(2).matrix();
  CHECK(std::abs(g.trace() - Complex(2.0)) < 1e-15);
  const std::vector<Complex> phi{1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0)};
  CHECK(max_abs_diff(g, ComplexMatrix::outer(phi) * Complex(2.0)) < 1e-15);
  const ComplexMatrix pauli_form =
      (kron_naive(id2(), id2()) + kron_naive(pauli_x(), pauli_x()) - kron_naive(pauli_y(), pauli_y()) +
       kron_naive(pauli_z(), pauli_z())) *
      Complex(0.5);
  CHECK(max_abs_diff(g, pauli_form) < 1e-15);
  for (std::size_t d : {2, 3, 4}) {
    const ComplexMatrix gd = gamma_operator(d).matrix();
    CHECK(max_abs_diff(gd * gd, gd * Complex(double(d))) < 1e-12);
  }
}

TEST_CASE("symmetric and antisymmetric projectors") {
  for (std::size_t d : {2, 3}) {
    const auto [plus, minus] = sym_antisym_projectors(d);
    const ComplexMatrix& p = plus.matrix();
    const ComplexMatrix& m = minus.matrix();
    CHECK(rank_of(p) == d * (d + 1) / 2);
    CHECK(rank_of(m) == d * (d - 1) / 2);
    CHECK(max_abs_diff(p * p, p) < 1e-12);
    CHECK(max_abs_diff(m * m, m) < 1e-12);
    CHECK(max_abs_diff(p * m, ComplexMatrix(d * d)) < 1e-12);
    CHECK(max_abs_diff(p + m, ComplexMatrix::identity(d * d)) < 1e-12);
    CHECK(max_abs_diff(p - m, swap_operator(d).matrix()) < 1e-12);
  }
  CHECK(std::abs(sym_antisym_projectors(3).first.matrix().trace() - Complex(6.0)) < 1e-12);
}

TEST_CASE("U x U commutes with F and U x U* with Gamma") {
  Rng rng(314);
  for (std::size_t d : {2, 3}) {
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix u = random_unitary(d, rng);
      const ComplexMatrix uu = tensor_product(u, u);
      const ComplexMatrix uus = tensor_product(u, u.conjugate());
      CHECK(max_abs_diff(conjugate_by(uu, swap_operator(d).matrix()), swap_operator(d).matrix()) <= 1e-10);
      CHECK(max_abs_diff(conjugate_by(uus, gamma_operator(d).matrix()), gamma_operator(d).matrix()) <= 1e-10);
    }
  }
}

TEST_CASE("permutation operators") {
  const std::vector<std::size_t> id3{0, 1, 2};
  CHECK(max_abs_diff(permutation_operator(id3, 2), ComplexMatrix::identity(8)) == 0.0);
  const std::vector<std::size_t> swap2{1, 0};
  for (std::size_t d : {2, 3}) CHECK(max_abs_diff(permutation_operator(swap2, d), swap_operator(d).matrix()) == 0.0);

  std::vector<std::vector<std::size_t>> s3;
  std::vector<std::size_t> p{0, 1, 2};
  do s3.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  REQUIRE(s3.size() == 6);
  std::size_t products = 0;
  for (const auto& a : s3) {
    CHECK(max_abs_diff(permutation_operator(a, 2), permutation_by_hand(a, 2)) == 0.0);
    for (const auto& b : s3) {
      const ComplexMatrix lhs = permutation_operator(a, 2) * permutation_operator(b, 2);
      CHECK(max_abs_diff(lhs, permutation_operator(compose(a, b), 2)) == 0.0);
      ++products;
    }
  }
  CHECK(products == 36);

  const std::vector<std::size_t> bad{0, 0, 2};
  CHECK_THROWS_AS(permutation_operator(bad, 2), DomainError);
}

TEST_CASE("permutation operator acts on subsystems like permute_subsystems") {
  Rng rng(2);
  const auto rho = random_density_matrix({2, 2, 2}, rng);
  const std::vector<std::size_t> perm{2, 0, 1};
  const ComplexMatrix w = permutation_operator(perm, 2);
  CHECK(max_abs_diff(conjugate_by(w, rho.matrix()), permute_subsystems(rho.matrix(), {2, 2, 2}, perm)) < 1e-14);
}

TEST_CASE("Bloch decomposition examples") {
  auto vec = [](const DensityMatrix& rho) { return bloch_decompose(rho).coherence_vector; };
  const auto zero = vec(DensityMatrix::maximally_mixed({2}));
  for (double s : zero) CHECK(std::abs(s) < 1e-15);
  const auto up = vec(qubit_from_bloch({0, 0, 1}));
  CHECK(up[0] == doctest::Approx(0.0));
  CHECK(up[2] == doctest::Approx(1.0));
  const auto plus = vec(qubit_from_bloch({1, 0, 0}));
  CHECK(plus[0] == doctest::Approx(1.0));
  CHECK(std::abs(plus[1]) < 1e-15);
  CHECK(std::abs(plus[2]) < 1e-15);
  CHECK_THROWS_AS(bloch_decompose(DensityMatrix::maximally_mixed({2, 2})), DomainError);
}

TEST_CASE("Bloch reconstruction on random qubit and qutrit states") {
  Rng rng(21);
  for (std::size_t d : {2, 3}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto rho = random_density_matrix({d}, rng);
      const BlochDecomposition b = bloch_decompose(rho);
      CHECK(b.coherence_vector.size() == d * d - 1);
      CHECK(max_abs_diff(b.reconstruct(), rho.matrix()) <= 1e-10);
    }
  }
}

TEST_CASE("sigma_n is a unit-vector Pauli combination") {
  const double t = 0.8, p = 2.1;
  const ComplexMatrix expect = pauli_x() * Complex(std::sin(t) * std::cos(p)) +
                               pauli_y() * Complex(std::sin(t) * std::sin(p)) + pauli_z() * Complex(std::cos(t));
  CHECK(max_abs_diff(sigma_n(t, p), expect) < 1e-15);
}

}  // TEST_SUITE
