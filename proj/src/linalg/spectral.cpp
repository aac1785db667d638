#include "qproxy/linalg/spectral.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "qproxy/error.hpp"
#include "qproxy/linalg/cap.hpp"
#include "qproxy/linalg/kernels.hpp"

namespace qproxy {

namespace {

void check_info(lapack_int info, const char* routine) {
  if (info != 0) throw Error(std::string(routine) + " failed with info " + std::to_string(info));
}

std::vector<double> real_part(const ComplexMatrix& m) {
  std::vector<double> out(m.entries().size());
  std::transform(m.entries().begin(), m.entries().end(), out.begin(), [](const Complex& z) { return z.real(); });
  return out;
}

void require_square_hermitian_input(const ComplexMatrix& m, const char* what) {
  require_within_cap(m.dim(), what);
}

}  // namespace

ComplexMatrix Spectrum::reconstruct() const { return projector(0, 0, true); }

ComplexMatrix Spectrum::projector(std::size_t begin, std::size_t end) const { return projector(begin, end, false); }

ComplexMatrix Spectrum::projector(std::size_t begin, std::size_t end, bool weighted) const {
  const std::size_t n = eigenvectors.dim();
  if (weighted) {
    begin = 0;
    end = n;
  }
  ComplexMatrix out(n);
  for (std::size_t k = begin; k < end; ++k) {
    const double w = weighted ? eigenvalues[k] : 1.0;
    if (w == 0.0) continue;
    for (std::size_t r = 0; r < n; ++r) {
      const Complex vr = w * eigenvectors(r, k);
      if (vr == Complex{}) continue;
      Complex* row = out.data() + r * n;
      for (std::size_t c = 0; c < n; ++c) row[c] += vr * std::conj(eigenvectors(c, k));
    }
  }
  return out;
}

Spectrum eigh(const ComplexMatrix& h) {
  require_square_hermitian_input(h, "eigh");
  const auto n = static_cast<lapack_int>(h.dim());
  Spectrum s{std::vector<double>(h.dim()), ComplexMatrix(h.dim())};
  if (h.is_real()) {
    auto a = real_part(h);
    check_info(LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'V', 'U', n, a.data(), n, s.eigenvalues.data()), "dsyevd");
    std::transform(a.begin(), a.end(), s.eigenvectors.entries().begin(), [](double x) { return Complex{x, 0.0}; });
  } else {
    s.eigenvectors = h;
    check_info(LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'V', 'U', n, s.eigenvectors.data(), n, s.eigenvalues.data()),
               "zheevd");
  }
  return s;
}

std::vector<double> eigenvalues(const ComplexMatrix& h) {
  require_square_hermitian_input(h, "eigenvalues");
  const auto n = static_cast<lapack_int>(h.dim());
  std::vector<double> w(h.dim());
  if (h.is_real()) {
    auto a = real_part(h);
    check_info(LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'N', 'U', n, a.data(), n, w.data()), "dsyevd");
  } else {
    ComplexMatrix a = h;
    check_info(LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'N', 'U', n, a.data(), n, w.data()), "zheevd");
  }
  return w;
}

EigenPairs lowest_eigenpairs(const ComplexMatrix& h, std::size_t count) {
  require_square_hermitian_input(h, "lowest_eigenpairs");
  count = std::clamp<std::size_t>(count, 1, h.dim());
  const std::size_t dim = h.dim();
  const auto n = static_cast<lapack_int>(dim);
  const auto m_req = static_cast<lapack_int>(count);
  lapack_int found = 0;
  std::vector<double> w(dim);
  std::vector<lapack_int> support(2 * dim);
  EigenPairs out;
  // Column-major skips LAPACKE's transposition copies. Row-major storage read
  // as column-major is the transpose: the same symmetric matrix, or the
  // conjugate of a Hermitian one (hence the conj below).
  if (h.is_real()) {
    auto a = real_part(h);
    std::vector<double> z(dim * count);
    check_info(LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, a.data(), n, 0.0, 0.0, 1, m_req, 0.0, &found,
                              w.data(), z.data(), n, support.data()),
               "dsyevr");
    for (lapack_int k = 0; k < found; ++k) {
      const auto* col = z.data() + static_cast<std::size_t>(k) * dim;
      out.vectors.emplace_back(col, col + dim);
    }
  } else {
    ComplexMatrix a = h;
    std::vector<Complex> z(dim * count);
    check_info(LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, a.data(), n, 0.0, 0.0, 1, m_req, 0.0, &found,
                              w.data(), z.data(), n, support.data()),
               "zheevr");
    for (lapack_int k = 0; k < found; ++k) {
      const auto* col = z.data() + static_cast<std::size_t>(k) * dim;
      std::vector<Complex> v(dim);
      for (std::size_t r = 0; r < dim; ++r) v[r] = std::conj(col[r]);
      out.vectors.push_back(std::move(v));
    }
  }
  out.values.assign(w.begin(), w.begin() + found);
  return out;
}

Spectrum spectral_decomposition(const Observable& h) {
  if (!h.is_hermitian()) throw NotHermitianError("spectral_decomposition: observable is not Hermitian");
  return eigh(h.matrix());
}

bool Domain::contains(double x) const noexcept {
  const bool above = lower_open ? x > lower : x >= lower;
  const bool below = upper_open ? x < upper : x <= upper;
  return above && below;
}

Observable matrix_function(const Observable& a, const std::function<double(double)>& f, const Domain& domain) {
  Spectrum s = spectral_decomposition(a);
  for (double& e : s.eigenvalues) {
    if (!domain.contains(e)) {
      throw DomainError("matrix_function: eigenvalue " + std::to_string(e) + " outside the function domain");
    }
    const double fe = f(e);
    if (!std::isfinite(fe)) throw DomainError("matrix_function: f(" + std::to_string(e) + ") is not finite");
    e = fe;
  }
  return Observable(s.reconstruct(), a.dims());
}

namespace {

void check_pair(const DensityMatrix& rho, const Observable& a, const char* what) {
  if (rho.dim() != a.dim()) {
    throw DimensionError(std::string(what) + ": state dimension " + std::to_string(rho.dim()) +
                         " vs observable dimension " + std::to_string(a.dim()));
  }
  if (rho.dims().size() > 1 && a.dims().size() > 1 && rho.dims() != a.dims()) {
    throw DimensionError(std::string(what) + ": subsystem layouts differ");
  }
}

}  // namespace

Complex expectation_value(const DensityMatrix& rho, const Observable& a) {
  check_pair(rho, a, "expectation_value");
  return kernels::trace_product(rho.matrix(), a.matrix());
}

double variance(const DensityMatrix& rho, const Observable& a) {
  check_pair(rho, a, "variance");
  const Complex mean = kernels::trace_product(rho.matrix(), a.matrix());
  const ComplexMatrix a2 = kernels::matmul(a.matrix(), a.matrix());
  const Complex second = kernels::trace_product(rho.matrix(), a2);
  return (second - mean * mean).real();
}

double shannon_entropy(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) s -= p * std::log2(p);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const auto w = eigenvalues(rho.matrix());
  return std::max(0.0, shannon_entropy(w));
}

}  // namespace qproxy
