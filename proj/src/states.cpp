#include "qproxy/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qproxy/error.hpp"
#include "qproxy/linalg/spectral.hpp"
#include "qproxy/operators.hpp"

namespace qproxy {

namespace {

void require_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError(std::string(name) + " must lie in [0, 1]");
}

std::size_t equal_local_dim(const DensityMatrix& rho, const char* what) {
  const auto& dims = rho.dims();
  if (dims.size() != 2 || dims[0] != dims[1]) {
    throw DimensionError(std::string(what) + ": expects a bipartite state with equal local dimensions");
  }
  return dims[0];
}

}  // namespace

DensityMatrix werner_state(const WernerParams& params) {
  require_unit_interval(params.p, "werner p");
  const std::size_t d = params.d;
  if (d < 2) throw DomainError("werner d must be >= 2");
  const auto [sym, anti] = sym_antisym_projectors(d);
  const double dd = static_cast<double>(d);
  ComplexMatrix m = sym.matrix() * Complex((1.0 - params.p) * 2.0 / (dd * (dd + 1.0))) +
                    anti.matrix() * Complex(params.p * 2.0 / (dd * (dd - 1.0)));
  return DensityMatrix::from_psd(std::move(m), {d, d});
}

DensityMatrix isotropic_state(const IsotropicParams& params) {
  require_unit_interval(params.t, "isotropic t");
  const std::size_t d = params.d;
  if (d < 2) throw DomainError("isotropic d must be >= 2");
  const double dd = static_cast<double>(d);
  const ComplexMatrix phi = gamma_operator(d).matrix() * Complex(1.0 / dd);
  const ComplexMatrix rest = ComplexMatrix::identity(d * d) - phi;
  ComplexMatrix m = phi * Complex(params.t) + rest * Complex((1.0 - params.t) / (dd * dd - 1.0));
  return DensityMatrix::from_psd(std::move(m), {d, d});
}

WernerTwirl werner_twirl(const DensityMatrix& rho) {
  const std::size_t d = equal_local_dim(rho, "werner_twirl");
  const double f = trace_product(rho.matrix(), swap_operator(d).matrix()).real();
  const double p = std::clamp((1.0 - f) / 2.0, 0.0, 1.0);
  return {{p, d}, werner_state({p, d})};
}

IsotropicTwirl isotropic_twirl(const DensityMatrix& rho) {
  const std::size_t d = equal_local_dim(rho, "isotropic_twirl");
  const double g = trace_product(rho.matrix(), gamma_operator(d).matrix()).real();
  const double t = std::clamp(g / static_cast<double>(d), 0.0, 1.0);
  return {{t, d}, isotropic_state({t, d})};
}

DensityMatrix qubit_from_bloch(const std::array<double, 3>& v) {
  const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (!(norm <= 1.0 + 1e-10)) throw DomainError("qubit_from_bloch: |v| exceeds 1");
  ComplexMatrix m(2);
  m(0, 0) = 0.5 * (1.0 + v[2]);
  m(1, 1) = 0.5 * (1.0 - v[2]);
  m(0, 1) = 0.5 * Complex(v[0], -v[1]);
  m(1, 0) = 0.5 * Complex(v[0], v[1]);
  return DensityMatrix::from_psd(std::move(m), {2});
}

DensityMatrix passive_state(const PassiveStateSpec& spec) {
  const auto& q = spec.populations;
  const std::size_t n = spec.hamiltonian.dim();
  if (q.size() != n) throw DimensionError("passive_state: need one population per energy level");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (q[i] < 0.0) throw DomainError("passive_state: negative population");
    if (i > 0 && q[i] > q[i - 1] + 1e-12) throw DomainError("passive_state: populations must be non-increasing");
    total += q[i];
  }
  if (std::abs(total - 1.0) > kTraceTol) throw DomainError("passive_state: populations must sum to 1");
  const Spectrum s = spectral_decomposition(spec.hamiltonian);
  ComplexMatrix m(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (q[k] == 0.0) continue;
    for (std::size_t r = 0; r < n; ++r) {
      const Complex vr = s.eigenvectors(r, k) * q[k];
      for (std::size_t c = 0; c < n; ++c) m(r, c) += vr * std::conj(s.eigenvectors(c, k));
    }
  }
  return DensityMatrix::from_psd(std::move(m), spec.hamiltonian.dims());
}

GroundState ground_state(const Observable& h) {
  if (!h.is_hermitian()) throw NotHermitianError("ground_state: Hamiltonian is not Hermitian");
  const std::size_t n = h.dim();
  const ComplexMatrix hm = hermitize(h.matrix());
  const double tol = kDegeneracyGap * std::max(1.0, hm.max_abs());

  // Ask LAPACK for a handful of the lowest pairs; widen if they are all degenerate.
  std::size_t count = std::min<std::size_t>(n, 8);
  EigenPairs pairs;
  std::size_t rank = 0;
  while (true) {
    pairs = lowest_eigenpairs(hm, count);
    rank = 0;
    while (rank < count && pairs.values[rank] - pairs.values[0] <= tol) ++rank;
    if (rank < count || count == n) break;
    count = std::min(n, count * 2);
  }

  ComplexMatrix m(n);
  const double w = 1.0 / static_cast<double>(rank);
  for (std::size_t k = 0; k < rank; ++k) {
    const auto& v = pairs.vectors[k];
    for (std::size_t r = 0; r < n; ++r) {
      const Complex vr = v[r] * w;
      if (vr == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) m(r, c) += vr * std::conj(v[c]);
    }
  }
  return {pairs.values[0], DensityMatrix::from_psd(std::move(m), h.dims()), rank};
}

}  // namespace qproxy
