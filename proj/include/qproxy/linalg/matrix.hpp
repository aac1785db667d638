#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qproxy {

using Complex = std::complex<double>;

/// Local dimensions of the tensor factors, left factor first.
using Dims = std::vector<std::size_t>;

std::size_t product(const Dims& dims);

/// Dense square complex matrix, row-major.
///
/// Computational basis ordering is fixed project-wide: |i>|j> on dims {dA, dB}
/// maps to row i * dB + j, so the leftmost factor is the slowest index.
class ComplexMatrix {
 public:
  /// Zero matrix. Throws DimensionError for dim == 0.
  explicit ComplexMatrix(std::size_t dim);
  /// Throws DimensionError unless entries.size() == dim * dim.
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  /// |v><v| (no normalization).
  static ComplexMatrix outer(std::span<const Complex> ket);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) noexcept { return entries_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return entries_[row * dim_ + col];
  }

  std::span<Complex> entries() noexcept { return entries_; }
  std::span<const Complex> entries() const noexcept { return entries_; }
  Complex* data() noexcept { return entries_.data(); }
  const Complex* data() const noexcept { return entries_.data(); }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  Complex trace() const noexcept;
  double max_abs() const noexcept;
  double frobenius_norm() const noexcept;
  /// max |a_ij - conj(a_ji)|
  double hermitian_deviation() const noexcept;
  /// True when no entry has a nonzero imaginary part.
  bool is_real() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar) noexcept;

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;
};

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product; `a` is the slow (left) factor.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduces `m` on subsystems `dims` to the subsystems listed in `keep`
/// (kept factors stay in ascending index order). Trace preserving.
ComplexMatrix partial_trace(const ComplexMatrix& m, const Dims& dims, std::span<const std::size_t> keep);

/// W M W^dagger where W sends the tensor factor at position j to position perm[j].
ComplexMatrix permute_subsystems(const ComplexMatrix& m, const Dims& dims, std::span<const std::size_t> perm);

/// Tr[a b]
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// U M U^dagger
ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& m);

}  // namespace qproxy
