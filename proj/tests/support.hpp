#pragma once

#include <complex>
#include <vector>

#include "qproxy/linalg/matrix.hpp"
#include "qproxy/linalg/random.hpp"

namespace testing {

using qproxy::Complex;
using qproxy::ComplexMatrix;

inline ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) { return ComplexMatrix(2, {a, b, c, d}); }

inline ComplexMatrix pauli_x() { return mat2(0, 1, 1, 0); }
inline ComplexMatrix pauli_y() { return mat2(0, Complex(0, -1), Complex(0, 1), 0); }
inline ComplexMatrix pauli_z() { return mat2(1, 0, 0, -1); }
inline ComplexMatrix id2() { return ComplexMatrix::identity(2); }

// Kronecker product written out by index arithmetic, independent of the library kernels.
inline ComplexMatrix kron_naive(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t m = a.dim(), n = b.dim();
  ComplexMatrix out(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) out(i * n + k, j * n + l) = a(i, j) * b(k, l);
  return out;
}

// op placed at `site` of an n-qubit register, identity elsewhere.
inline ComplexMatrix site_op(const ComplexMatrix& op, std::size_t site, std::size_t n) {
  ComplexMatrix out = site == 0 ? op : id2();
  for (std::size_t l = 1; l < n; ++l) out = kron_naive(out, l == site ? op : id2());
  return out;
}

inline ComplexMatrix random_hermitian(std::size_t dim, qproxy::Rng& rng, bool real = false) {
  std::normal_distribution<double> g;
  ComplexMatrix h(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    h(i, i) = g(rng);
    for (std::size_t j = i + 1; j < dim; ++j) {
      h(i, j) = Complex(g(rng), real ? 0.0 : g(rng));
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

inline ComplexMatrix random_matrix(std::size_t dim, qproxy::Rng& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(dim);
  for (auto& z : m.entries()) z = Complex(g(rng), g(rng));
  return m;
}

}  // namespace testing
