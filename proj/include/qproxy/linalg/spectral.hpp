#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "qproxy/linalg/matrix.hpp"
#include "qproxy/linalg/quantum_types.hpp"

namespace qproxy {

/// Eigenvalues ascending; eigenvectors as orthonormal columns.
/// Vectors inside a degenerate cluster are an arbitrary orthonormal basis of
/// the eigenspace; use projector() rather than individual columns there.
struct Spectrum {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  ComplexMatrix reconstruct() const;
  /// Sum of |v_i><v_i| for i in [begin, end).
  ComplexMatrix projector(std::size_t begin, std::size_t end) const;

 private:
  ComplexMatrix projector(std::size_t begin, std::size_t end, bool weighted) const;
};

/// A subset of eigenpairs, eigenvalues ascending.
struct EigenPairs {
  std::vector<double> values;
  std::vector<std::vector<Complex>> vectors;
};

/// Hermitian eigendecomposition (LAPACK; real-symmetric path when the input
/// has no imaginary parts). Dimension guarded by dense_cap().
Spectrum eigh(const ComplexMatrix& hermitian);
std::vector<double> eigenvalues(const ComplexMatrix& hermitian);
/// The `count` smallest eigenpairs.
EigenPairs lowest_eigenpairs(const ComplexMatrix& hermitian, std::size_t count);

/// Throws NotHermitianError for non-Hermitian observables, even when the
/// observable carries the non_hermitian_allowed flag.
Spectrum spectral_decomposition(const Observable& h);

/// Closed interval [lower, upper] with optional open ends.
struct Domain {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  bool lower_open = false;
  bool upper_open = false;

  static Domain all() { return {}; }
  static Domain positive() { return {0.0, std::numeric_limits<double>::infinity(), true, false}; }
  bool contains(double x) const noexcept;
};

/// f(A) = sum_a f(a) Pi^a. Throws DomainError when an eigenvalue lies outside
/// `domain` or f returns a non-finite value.
Observable matrix_function(const Observable& a, const std::function<double(double)>& f,
                           const Domain& domain = Domain::all());

/// Tr[rho A]. For Hermitian A the imaginary part is roundoff.
Complex expectation_value(const DensityMatrix& rho, const Observable& a);

/// Tr[rho A^2] - Tr[rho A]^2 (real part).
double variance(const DensityMatrix& rho, const Observable& a);

/// -Tr[rho log2 rho], with 0 log 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho);
/// Entropy in bits of a probability vector, 0 log 0 = 0.
double shannon_entropy(std::span<const double> probabilities);

}  // namespace qproxy
