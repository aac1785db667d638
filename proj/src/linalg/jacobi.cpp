#include "qproxy/linalg/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qproxy/error.hpp"
#include "qproxy/linalg/cap.hpp"

namespace qproxy::reference {

namespace {

double off_diagonal_max(const ComplexMatrix& a) {
  double m = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t c = r + 1; c < a.dim(); ++c) m = std::max(m, std::abs(a(r, c)));
  }
  return m;
}

}  // namespace

Spectrum jacobi_eigh(const ComplexMatrix& hermitian, const JacobiOptions& options) {
  require_within_cap(hermitian.dim(), "jacobi_eigh");
  ComplexMatrix a = hermitize(hermitian);
  const std::size_t n = a.dim();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(1.0, a.max_abs());

  int sweep = 0;
  for (; sweep < options.max_sweeps; ++sweep) {
    if (off_diagonal_max(a) <= options.off_diagonal_tol * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;
        // Phase-rotate so the pivot is real, then apply a real Jacobi rotation.
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // Rotation restricted to (p, q): columns of [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
        const Complex vpp = c;
        const Complex vpq = s;
        const Complex vqp = -s * std::conj(phase);
        const Complex vqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * vpp + akq * vqp;
          a(k, q) = akp * vpq + akq * vqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(vpp) * apk + std::conj(vqp) * aqk;
          a(q, k) = std::conj(vpq) * apk + std::conj(vqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * vpp + vkq * vqp;
          v(k, q) = vkp * vpq + vkq * vqq;
        }
      }
    }
  }
  if (sweep == options.max_sweeps && off_diagonal_max(a) > options.off_diagonal_tol * scale) {
    throw Error("jacobi_eigh: no convergence within sweep cap");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  Spectrum out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

}  // namespace qproxy::reference
