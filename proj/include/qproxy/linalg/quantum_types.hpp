#pragma once

#include <span>

#include "qproxy/linalg/matrix.hpp"

namespace qproxy {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPositivityTol = 1e-10;

/// Positive semidefinite, unit-trace matrix with its subsystem layout.
class DensityMatrix {
 public:
  /// Full validation: Hermitian (symmetrized when the deviation is below
  /// tolerance), unit trace, eigenvalues >= -1e-10.
  DensityMatrix(ComplexMatrix m, Dims dims);
  explicit DensityMatrix(ComplexMatrix m);

  /// Skips the eigenvalue check; for matrices positive by construction
  /// (mixtures, partial traces, conjugations). Hermiticity and trace are still checked.
  static DensityMatrix from_psd(ComplexMatrix m, Dims dims);
  /// |psi><psi| / <psi|psi>
  static DensityMatrix from_pure(std::span<const Complex> ket, Dims dims);
  static DensityMatrix maximally_mixed(Dims dims);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const Dims& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return matrix_.dim(); }

 private:
  struct Unchecked {};
  DensityMatrix(Unchecked, ComplexMatrix m, Dims dims);
  void validate() const;

  ComplexMatrix matrix_;
  Dims dims_;
};

/// Hermitian operator with its subsystem layout. PT/APT Hamiltonians set
/// `non_hermitian_allowed`, which disables the Hermiticity check.
class Observable {
 public:
  Observable(ComplexMatrix m, Dims dims, bool non_hermitian_allowed = false);
  explicit Observable(ComplexMatrix m);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const Dims& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return matrix_.dim(); }
  bool non_hermitian_allowed() const noexcept { return non_hermitian_allowed_; }
  bool is_hermitian() const noexcept;

 private:
  ComplexMatrix matrix_;
  Dims dims_;
  bool non_hermitian_allowed_;
};

/// Symmetrizes to (H + H^dagger)/2 when the deviation is within tolerance
/// (scaled by max(1, |H|_max)); throws NotHermitianError otherwise.
ComplexMatrix hermitize(ComplexMatrix m, double tol = kHermitianTol);

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace qproxy
