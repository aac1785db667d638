#include "qproxy/linalg/random.hpp"

#include <cmath>

#include "qproxy/error.hpp"

namespace qproxy {

namespace {

Complex gaussian(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

}  // namespace

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  ComplexMatrix g(dim);
  for (auto& z : g.entries()) z = gaussian(rng);
  // Modified Gram-Schmidt on columns; R's diagonal comes out real positive,
  // which is the phase fixing that makes the distribution Haar-like.
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      Complex proj{};
      for (std::size_t r = 0; r < dim; ++r) proj += std::conj(g(r, j)) * g(r, k);
      for (std::size_t r = 0; r < dim; ++r) g(r, k) -= proj * g(r, j);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < dim; ++r) norm += std::norm(g(r, k));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < dim; ++r) g(r, k) /= norm;
  }
  return g;
}

std::vector<Complex> random_ket(std::size_t dim, Rng& rng) {
  std::vector<Complex> v(dim);
  double norm = 0.0;
  for (auto& z : v) {
    z = gaussian(rng);
    norm += std::norm(z);
  }
  norm = std::sqrt(norm);
  for (auto& z : v) z /= norm;
  return v;
}

DensityMatrix random_density_matrix(const Dims& dims, Rng& rng, std::size_t rank) {
  const std::size_t n = product(dims);
  if (rank == 0 || rank > n) rank = n;
  std::vector<Complex> g(n * rank);
  for (auto& z : g) z = gaussian(rng);
  ComplexMatrix m(n);
  double tr = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      Complex acc{};
      for (std::size_t k = 0; k < rank; ++k) acc += g[r * rank + k] * std::conj(g[c * rank + k]);
      m(r, c) = acc;
    }
    tr += m(r, r).real();
  }
  m *= 1.0 / tr;
  return DensityMatrix::from_psd(std::move(m), dims);
}

}  // namespace qproxy
