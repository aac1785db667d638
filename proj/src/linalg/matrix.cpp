#include "qproxy/linalg/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>

#include "qproxy/error.hpp"
#include "qproxy/linalg/kernels.hpp"

namespace qproxy {

std::size_t product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw DimensionError("ComplexMatrix: dimension must be at least 1");
  entries_.assign(dim * dim, Complex{});
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim == 0) throw DimensionError("ComplexMatrix: dimension must be at least 1");
  if (entries_.size() != dim * dim) {
    throw DimensionError("ComplexMatrix: expected " + std::to_string(dim * dim) + " entries, got " +
                         std::to_string(entries_.size()));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket) {
  const std::size_t n = ket.size();
  ComplexMatrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = ket[r] * std::conj(ket[c]);
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out(*this);
  for (auto& z : out.entries_) z = std::conj(z);
  return out;
}

Complex ComplexMatrix::trace() const noexcept {
  Complex t{};
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius_norm() const noexcept {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::hermitian_deviation() const noexcept {
  double dev = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r; c < dim_; ++c) {
      dev = std::max(dev, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    }
  }
  return dev;
}

bool ComplexMatrix::is_real() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](const Complex& z) { return z.imag() == 0.0; });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (other.dim_ != dim_) throw DimensionError("ComplexMatrix::operator+=: dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (other.dim_ != dim_) throw DimensionError("ComplexMatrix::operator-=: dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) noexcept {
  for (auto& z : entries_) z *= scalar;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("matrix product: dimension mismatch");
  return kernels::matmul(a, b);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("max_abs_diff: dimension mismatch");
  double m = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
  return m;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return kernels::kron(a, b);
}

namespace {

void check_layout(const ComplexMatrix& m, const Dims& dims, const char* op) {
  if (dims.empty()) throw DimensionError(std::string(op) + ": empty subsystem list");
  if (std::find(dims.begin(), dims.end(), std::size_t{0}) != dims.end()) {
    throw DimensionError(std::string(op) + ": subsystem dimension 0");
  }
  if (product(dims) != m.dim()) {
    throw DimensionError(std::string(op) + ": product of subsystem dimensions " + std::to_string(product(dims)) +
                         " does not match matrix dimension " + std::to_string(m.dim()));
  }
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, const Dims& dims, std::span<const std::size_t> keep) {
  check_layout(m, dims, "partial_trace");
  if (keep.empty()) throw DimensionError("partial_trace: keep set is empty");
  std::unordered_set<std::size_t> seen;
  for (std::size_t k : keep) {
    if (k >= dims.size()) throw DimensionError("partial_trace: subsystem index " + std::to_string(k) + " out of range");
    if (!seen.insert(k).second) throw DimensionError("partial_trace: duplicate subsystem index " + std::to_string(k));
  }
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  return kernels::partial_trace(m, dims, sorted);
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const Dims& dims, std::span<const std::size_t> perm) {
  check_layout(m, dims, "permute_subsystems");
  if (perm.size() != dims.size()) throw DimensionError("permute_subsystems: permutation length mismatch");
  std::vector<bool> hit(perm.size(), false);
  for (std::size_t p : perm) {
    if (p >= perm.size() || hit[p]) throw DomainError("permute_subsystems: not a permutation");
    hit[p] = true;
  }
  return kernels::permute_subsystems(m, dims, perm);
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("trace_product: dimension mismatch");
  return kernels::trace_product(a, b);
}

ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& m) {
  if (u.dim() != m.dim()) throw DimensionError("conjugate_by: dimension mismatch");
  return kernels::matmul(kernels::matmul(u, m), u.adjoint());
}

}  // namespace qproxy
