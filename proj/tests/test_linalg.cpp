#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qproxy/error.hpp"
#include "qproxy/linalg/cap.hpp"
#include "qproxy/linalg/jacobi.hpp"
#include "qproxy/linalg/kernels.hpp"
#include "qproxy/linalg/matrix_io.hpp"
#include "qproxy/linalg/spectral.hpp"
#include "qproxy/operators.hpp"
#include "qproxy/spin_models.hpp"
#include "qproxy/states.hpp"
#include "support.hpp"

using namespace qproxy;
using namespace testing;

namespace {

std::vector<double> diag_values(std::initializer_list<double> v) { return std::vector<double>(v); }

ComplexMatrix diag(std::initializer_list<double> v) {
  const auto d = diag_values(v);
  return ComplexMatrix::diagonal(d);
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("matrix construction rejects bad shapes") {
  CHECK_THROWS_AS(ComplexMatrix(0), DimensionError);
  CHECK_THROWS_AS(ComplexMatrix(2, std::vector<Complex>(3)), DimensionError);
  CHECK_THROWS_AS(ComplexMatrix(2) * ComplexMatrix(3), DimensionError);
}

TEST_CASE("tensor product examples") {
  CHECK(max_abs_diff(tensor_product(id2(), id2()), ComplexMatrix::identity(4)) == 0.0);

  const ComplexMatrix xx = tensor_product(pauli_x(), pauli_x());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(xx(i, j) == Complex(i + j == 3 ? 1.0 : 0.0));

  CHECK(max_abs_diff(tensor_product(pauli_z(), id2()), diag({1, 1, -1, -1})) == 0.0);
}

TEST_CASE("left factor is the slow index") {
  // |1>|0> on dims {2, 3} sits at row 1*3 + 0.
  ComplexMatrix a(2), b(3);
  a(1, 1) = 1.0;
  b(0, 0) = 1.0;
  const ComplexMatrix ab = tensor_product(a, b);
  CHECK(ab(3, 3) == Complex(1.0));
  CHECK(std::abs(ab.trace() - Complex(1.0)) < 1e-15);
}

TEST_CASE("partial trace examples") {
  const ComplexMatrix gamma_half = gamma_operator(2).matrix() * Complex(0.5);
  const std::size_t keep_a[] = {0};
  CHECK(max_abs_diff(partial_trace(gamma_half, {2, 2}, keep_a), ComplexMatrix::identity(2) * Complex(0.5)) < 1e-15);

  Rng rng(11);
  const auto rho = random_density_matrix({2}, rng);
  const auto sigma = random_density_matrix({3}, rng);
  const ComplexMatrix prod = tensor_product(rho.matrix(), sigma.matrix());
  const std::size_t keep_b[] = {1};
  CHECK(max_abs_diff(partial_trace(prod, {2, 3}, keep_a), rho.matrix()) < 1e-14);
  CHECK(max_abs_diff(partial_trace(prod, {2, 3}, keep_b), sigma.matrix()) < 1e-14);

  CHECK_THROWS_AS(partial_trace(prod, {2, 2}, keep_a), DimensionError);
  const std::size_t bad[] = {2};
  CHECK_THROWS_AS(partial_trace(prod, {2, 3}, bad), DimensionError);
}

TEST_CASE("partial trace preserves trace and positivity on 100 random states") {
  Rng rng(2024);
  const std::vector<std::vector<std::size_t>> keeps{{0}, {1}, {2}, {0, 2}, {1, 2}, {0, 1}};
  for (int trial = 0; trial < 100; ++trial) {
    const auto rho = random_density_matrix({2, 3, 2}, rng, 1 + trial % 4);
    const auto& keep = keeps[trial % keeps.size()];
    const DensityMatrix reduced = partial_trace(rho, keep);  // validates PSD + trace
    CHECK(std::abs(reduced.matrix().trace() - Complex(1.0)) < 1e-12);
    CHECK(eigenvalues(reduced.matrix()).front() > -1e-12);
  }
}

TEST_CASE("OpenMP kernels agree with the serial reference") {
  Rng rng(5);
  for (std::size_t n : {1, 3, 8, 24}) {
    const auto a = random_matrix(n, rng);
    const auto b = random_matrix(n, rng);
    CHECK(max_abs_diff(kernels::matmul(a, b), reference::matmul(a, b)) < 1e-12);
    CHECK(std::abs(kernels::trace_product(a, b) - reference::trace_product(a, b)) < 1e-10);
    const auto small = random_matrix(3, rng);
    CHECK(max_abs_diff(kernels::kron(a, small), reference::kron(a, small)) == 0.0);
    CHECK(max_abs_diff(kernels::kron(a, small), kron_naive(a, small)) == 0.0);
  }
  const Dims dims{2, 3, 2};
  const auto m = random_matrix(12, rng);
  for (const std::vector<std::size_t>& keep : {std::vector<std::size_t>{0}, {1}, {0, 2}, {1, 2}, {0, 1, 2}}) {
    CHECK(max_abs_diff(kernels::partial_trace(m, dims, keep), reference::partial_trace(m, dims, keep)) < 1e-12);
  }
  for (const std::vector<std::size_t>& perm : {std::vector<std::size_t>{0, 1, 2}, {2, 0, 1}, {1, 0, 2}, {2, 1, 0}}) {
    CHECK(max_abs_diff(kernels::permute_subsystems(m, dims, perm), reference::permute_subsystems(m, dims, perm)) <
          1e-12);
  }
}

TEST_CASE("spectral decomposition examples") {
  const Spectrum z = spectral_decomposition(Observable(pauli_z()));
  CHECK(z.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(z.eigenvalues[1] == doctest::Approx(1.0));

  const Spectrum f = spectral_decomposition(swap_operator(2));
  const std::vector<double> expect{-1, 1, 1, 1};
  for (std::size_t i = 0; i < 4; ++i) CHECK(f.eigenvalues[i] == doctest::Approx(expect[i]).epsilon(1e-12));

  // 4-site XXX ring: Pauli-unit Hamiltonian assembled here from explicit tensor products.
  ComplexMatrix h(16);
  for (std::size_t l = 0; l < 4; ++l) {
    for (const auto& p : {pauli_x(), pauli_y(), pauli_z()}) h += site_op(p, l, 4) * site_op(p, (l + 1) % 4, 4);
  }
  CHECK(eigenvalues(h).front() == doctest::Approx(-8.0).epsilon(1e-12));
}

TEST_CASE("spectral decomposition rejects non-Hermitian input") {
  const Observable pt = pt_apt_hamiltonian({PTAPTKind::pt, 1.0, 0.5});
  CHECK_THROWS_AS(spectral_decomposition(pt), NotHermitianError);
  CHECK_THROWS_AS(Observable(mat2(0, 1, 0, 0)), NotHermitianError);
}

TEST_CASE("reconstruction and orthonormality on random Hermitian matrices") {
  Rng rng(77);
  for (std::size_t n : {2, 5, 17, 64, 300}) {
    for (bool real : {false, true}) {
      const ComplexMatrix h = random_hermitian(n, rng, real);
      const Spectrum s = spectral_decomposition(Observable(h));
      CHECK(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
      CHECK(max_abs_diff(s.reconstruct(), h) <= 1e-8 * h.max_abs());
      CHECK(max_abs_diff(s.eigenvectors.adjoint() * s.eigenvectors, ComplexMatrix::identity(n)) <= 1e-8);
    }
  }
}

TEST_CASE("Jacobi reference agrees with LAPACK") {
  Rng rng(3);
  for (std::size_t n : {1, 2, 6, 20, 40}) {
    const ComplexMatrix h = random_hermitian(n, rng, n % 2 == 0);
    const Spectrum jac = reference::jacobi_eigh(h);
    const Spectrum lap = eigh(h);
    for (std::size_t i = 0; i < n; ++i) CHECK(jac.eigenvalues[i] == doctest::Approx(lap.eigenvalues[i]).epsilon(1e-10));
    CHECK(max_abs_diff(jac.reconstruct(), h) <= 1e-9 * std::max(1.0, h.max_abs()));
  }
  // degenerate spectrum: projectors agree even though vectors may not
  const Spectrum jf = reference::jacobi_eigh(swap_operator(3).matrix());
  const Spectrum lf = eigh(swap_operator(3).matrix());
  CHECK(max_abs_diff(jf.projector(0, 3), lf.projector(0, 3)) < 1e-10);
}

TEST_CASE("lowest eigenpairs match the full decomposition") {
  Rng rng(8);
  const ComplexMatrix h = random_hermitian(300, rng, true);
  const Spectrum full = eigh(h);
  const EigenPairs low = lowest_eigenpairs(h, 4);
  REQUIRE(low.values.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(low.values[i] == doctest::Approx(full.eigenvalues[i]).epsilon(1e-10));
    const std::vector<Complex>& v = low.vectors[i];
    // H v = lambda v
    double res = 0.0;
    for (std::size_t r = 0; r < 300; ++r) {
      Complex acc = 0.0;
      for (std::size_t c = 0; c < 300; ++c) acc += h(r, c) * v[c];
      res = std::max(res, std::abs(acc - low.values[i] * v[r]));
    }
    CHECK(res < 1e-9);
  }
}

TEST_CASE("matrix function examples") {
  const Observable z(pauli_z());
  CHECK(max_abs_diff(matrix_function(z, [](double x) { return x; }).matrix(), pauli_z()) < 1e-14);

  const Observable f2 = matrix_function(swap_operator(2), [](double x) { return x * x; });
  CHECK(max_abs_diff(f2.matrix(), ComplexMatrix::identity(4)) < 1e-12);

  const Observable e = matrix_function(Observable(diag({0.0, std::log(2.0)})), [](double x) { return std::exp(x); });
  CHECK(max_abs_diff(e.matrix(), diag({1.0, 2.0})) < 1e-14);

  CHECK_THROWS_AS(matrix_function(Observable(diag({0.0, 1.0})), [](double x) { return std::log(x); }, Domain::positive()),
                  DomainError);
}

TEST_CASE("expectation of f(A) equals its spectral form") {
  Rng rng(19);
  const ComplexMatrix a = random_hermitian(6, rng);
  const Spectrum s = eigh(a);
  auto f = [](double x) { return std::sin(x) + x * x * x; };
  const Observable fa = matrix_function(Observable(a), f);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = random_density_matrix({6}, rng);
    Complex spectral = 0.0;
    for (std::size_t i = 0; i < 6; ++i) spectral += f(s.eigenvalues[i]) * trace_product(rho.matrix(), s.projector(i, i + 1));
    CHECK(std::abs(expectation_value(rho, fa) - spectral) < 1e-8);
  }
}

TEST_CASE("expectation value examples") {
  const auto mixed = DensityMatrix::maximally_mixed({2});
  CHECK(std::abs(expectation_value(mixed, Observable(pauli_z()))) < 1e-15);

  const auto plus = qubit_from_bloch({1, 0, 0});
  for (double theta : {0.0, 0.4, 1.3, 2.9}) {
    for (double phi : {0.0, 0.7, 2.0}) {
      const Complex v = expectation_value(plus, Observable(sigma_n(theta, phi)));
      CHECK(v.real() == doctest::Approx(std::sin(theta) * std::cos(phi)).epsilon(1e-12));
      CHECK(std::abs(v.imag()) < 1e-12);
    }
  }
  for (double p : {0.0, 0.3, 1.0}) {
    CHECK(expectation_value(werner_state({p, 2}), swap_operator(2)).real() == doctest::Approx(1 - 2 * p).epsilon(1e-12));
  }
  CHECK_THROWS_AS(expectation_value(mixed, swap_operator(2)), DimensionError);
}

TEST_CASE("variance examples and non-negativity") {
  const Observable z(pauli_z());
  CHECK(std::abs(variance(qubit_from_bloch({0, 0, 1}), z)) < 1e-14);
  CHECK(variance(DensityMatrix::maximally_mixed({2}), z) == doctest::Approx(1.0));
  for (double p : {0.0, 0.2, 0.5, 0.9}) {
    const double m = 1 - 2 * p;
    CHECK(variance(werner_state({p, 2}), swap_operator(2)) == doctest::Approx(1 - m * m).epsilon(1e-12));
  }
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Observable a(random_hermitian(4, rng));
    CHECK(variance(random_density_matrix({2, 2}, rng), a) >= -1e-10);
  }
}

TEST_CASE("von Neumann entropy examples") {
  Rng rng(6);
  const auto ket = random_ket(5, rng);
  CHECK(std::abs(von_neumann_entropy(DensityMatrix::from_pure(ket, {5}))) < 1e-10);
  for (std::size_t d : {2, 3, 8}) {
    CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed({d})) == doctest::Approx(std::log2(double(d))));
  }
  CHECK(std::abs(von_neumann_entropy(werner_state({1.0, 2}))) < 1e-10);
  for (int trial = 0; trial < 20; ++trial) {
    const double s = von_neumann_entropy(random_density_matrix({2, 2}, rng));
    CHECK(s >= 0.0);
    CHECK(s <= 2.0 + 1e-12);
  }
  const std::vector<double> probs{0.5, 0.5, 0.0};
  CHECK(shannon_entropy(probs) == doctest::Approx(1.0));
}

TEST_CASE("density matrix validation") {
  CHECK_THROWS_AS(DensityMatrix(diag({0.5, 0.6})), DomainError);          // trace
  CHECK_THROWS_AS(DensityMatrix(diag({1.5, -0.5})), DomainError);         // negative eigenvalue
  CHECK_THROWS_AS(DensityMatrix(mat2(0.5, 0.3, 0.0, 0.5)), NotHermitianError);
  CHECK_THROWS_AS(DensityMatrix(diag({0.5, 0.5}), {3}), DimensionError);
  // deviations below tolerance are symmetrized away
  const DensityMatrix rho(mat2(0.5, Complex(0.1, 1e-12), 0.1, 0.5));
  CHECK(rho.matrix().hermitian_deviation() == 0.0);
}

TEST_CASE("dense cap is read from the environment") {
  CHECK(dense_cap() == kDefaultDenseCap);
  setenv("QPROXY_DENSE_CAP", "64", 1);
  CHECK(dense_cap() == 64);
  CHECK_THROWS_AS(require_within_cap(128, "test"), CapError);
  CHECK_THROWS_AS(eigh(ComplexMatrix::identity(128)), CapError);
  unsetenv("QPROXY_DENSE_CAP");
  CHECK_NOTHROW(require_within_cap(4096, "test"));
  CHECK_THROWS_AS(require_within_cap(4097, "test"), CapError);
  CHECK(max_qubits() == 12);
}

TEST_CASE("matrix interchange round trip and errors") {
  Rng rng(12);
  const ComplexMatrix m = random_matrix(3, rng);
  CHECK(max_abs_diff(matrix_from_json(matrix_to_json(m)), m) == 0.0);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(R"({"dim": 2, "entries": [[1,0]]})")), FormatError);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(R"({"entries": []})")), FormatError);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(R"({"dim": 1, "entries": [[1]]})")), FormatError);
  CHECK_THROWS_AS(read_matrix_file("/nonexistent/m.json"), FormatError);
}

TEST_CASE("random unitaries are unitary and reproducible") {
  Rng a(99), b(99);
  const ComplexMatrix u = random_unitary(5, a);
  CHECK(max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(5)) < 1e-12);
  CHECK(max_abs_diff(u, random_unitary(5, b)) == 0.0);
  Rng c(1);
  const auto rho = random_density_matrix({2, 2}, c, 1);
  CHECK(std::abs(trace_product(rho.matrix(), rho.matrix()) - Complex(1.0)) < 1e-12);  // rank 1 is pure
}

}  // TEST_SUITE
