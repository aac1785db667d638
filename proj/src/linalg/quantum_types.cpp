#include "qproxy/linalg/quantum_types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qproxy/error.hpp"
#include "qproxy/linalg/spectral.hpp"

namespace qproxy {

namespace {

void check_dims(const ComplexMatrix& m, const Dims& dims, const char* what) {
  if (dims.empty() || std::find(dims.begin(), dims.end(), std::size_t{0}) != dims.end()) {
    throw DimensionError(std::string(what) + ": subsystem dimensions must be positive");
  }
  if (product(dims) != m.dim()) {
    throw DimensionError(std::string(what) + ": subsystem dimensions multiply to " + std::to_string(product(dims)) +
                         ", matrix dimension is " + std::to_string(m.dim()));
  }
}

void check_trace(const ComplexMatrix& m) {
  const Complex tr = m.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > kTraceTol) {
    throw DomainError("DensityMatrix: trace " + std::to_string(tr.real()) + "+" + std::to_string(tr.imag()) +
                      "i is not 1");
  }
}

}  // namespace

ComplexMatrix hermitize(ComplexMatrix m, double tol) {
  const double scale = std::max(1.0, m.max_abs());
  const double dev = m.hermitian_deviation();
  if (dev > tol * scale) {
    throw NotHermitianError("matrix is not Hermitian (max deviation " + std::to_string(dev) + ")");
  }
  const std::size_t n = m.dim();
  for (std::size_t r = 0; r < n; ++r) {
    m(r, r) = {m(r, r).real(), 0.0};
    for (std::size_t c = r + 1; c < n; ++c) {
      const Complex avg = 0.5 * (m(r, c) + std::conj(m(c, r)));
      m(r, c) = avg;
      m(c, r) = std::conj(avg);
    }
  }
  return m;
}

DensityMatrix::DensityMatrix(Unchecked, ComplexMatrix m, Dims dims) : matrix_(std::move(m)), dims_(std::move(dims)) {}

DensityMatrix::DensityMatrix(ComplexMatrix m, Dims dims) : matrix_(hermitize(std::move(m))), dims_(std::move(dims)) {
  validate();
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : matrix_(hermitize(std::move(m))), dims_{matrix_.dim()} { validate(); }

void DensityMatrix::validate() const {
  check_dims(matrix_, dims_, "DensityMatrix");
  check_trace(matrix_);
  const auto evals = eigenvalues(matrix_);
  if (evals.front() < -kPositivityTol) {
    throw DomainError("DensityMatrix: negative eigenvalue " + std::to_string(evals.front()));
  }
}

DensityMatrix DensityMatrix::from_psd(ComplexMatrix m, Dims dims) {
  ComplexMatrix h = hermitize(std::move(m));
  check_dims(h, dims, "DensityMatrix");
  check_trace(h);
  return DensityMatrix(Unchecked{}, std::move(h), std::move(dims));
}

DensityMatrix DensityMatrix::from_pure(std::span<const Complex> ket, Dims dims) {
  double norm2 = 0.0;
  for (const auto& z : ket) norm2 += std::norm(z);
  if (!(norm2 > 0.0)) throw DomainError("DensityMatrix::from_pure: zero vector");
  ComplexMatrix m = ComplexMatrix::outer(ket);
  m *= 1.0 / norm2;
  return from_psd(std::move(m), std::move(dims));
}

DensityMatrix DensityMatrix::maximally_mixed(Dims dims) {
  const std::size_t n = product(dims);
  ComplexMatrix m = ComplexMatrix::identity(n);
  m *= 1.0 / static_cast<double>(n);
  return from_psd(std::move(m), std::move(dims));
}

Observable::Observable(ComplexMatrix m, Dims dims, bool non_hermitian_allowed)
    : matrix_(non_hermitian_allowed ? std::move(m) : hermitize(std::move(m))),
      dims_(std::move(dims)),
      non_hermitian_allowed_(non_hermitian_allowed) {
  check_dims(matrix_, dims_, "Observable");
}

Observable::Observable(ComplexMatrix m)
    : matrix_(hermitize(std::move(m))), dims_{matrix_.dim()}, non_hermitian_allowed_(false) {}

bool Observable::is_hermitian() const noexcept {
  return matrix_.hermitian_deviation() <= kHermitianTol * std::max(1.0, matrix_.max_abs());
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  ComplexMatrix reduced = partial_trace(rho.matrix(), rho.dims(), keep);
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  Dims dims;
  for (std::size_t k : sorted) dims.push_back(rho.dims()[k]);
  return DensityMatrix::from_psd(std::move(reduced), std::move(dims));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix::from_psd(tensor_product(a.matrix(), b.matrix()), std::move(dims));
}

}  // namespace qproxy
