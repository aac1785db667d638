#include "qproxy/operators.hpp"

#include <algorithm>
#include <cmath>

#include "qproxy/error.hpp"
#include "qproxy/linalg/cap.hpp"

namespace qproxy {

namespace {

constexpr Complex I{0.0, 1.0};

ComplexMatrix from_rows(std::size_t dim, std::initializer_list<Complex> values, double scale = 1.0) {
  std::vector<Complex> entries(values);
  for (auto& z : entries) z *= scale;
  return ComplexMatrix(dim, std::move(entries));
}

std::vector<ComplexMatrix> pauli() {
  return {from_rows(2, {0, 1, 1, 0}), from_rows(2, {0, -I, I, 0}), from_rows(2, {1, 0, 0, -1})};
}

std::vector<ComplexMatrix> gell_mann() {
  const double r3 = 1.0 / std::sqrt(3.0);
  return {
      from_rows(3, {0, 1, 0, 1, 0, 0, 0, 0, 0}),
      from_rows(3, {0, -I, 0, I, 0, 0, 0, 0, 0}),
      from_rows(3, {1, 0, 0, 0, -1, 0, 0, 0, 0}),
      from_rows(3, {0, 0, 1, 0, 0, 0, 1, 0, 0}),
      from_rows(3, {0, 0, -I, 0, 0, 0, I, 0, 0}),
      from_rows(3, {0, 0, 0, 0, 0, 1, 0, 1, 0}),
      from_rows(3, {0, 0, 0, 0, 0, -I, 0, I, 0}),
      from_rows(3, {1, 0, 0, 0, 1, 0, 0, 0, -2}, r3),
  };
}

void require_local_dim(std::size_t d, const char* what) {
  if (d < 2) throw DomainError(std::string(what) + ": local dimension must be >= 2");
  require_within_cap(d * d, what);
}

}  // namespace

GeneratorBasis su_generators(std::size_t d) {
  if (d != 2 && d != 3) throw DomainError("su_generators: only d = 2 and d = 3 are supported");
  GeneratorBasis basis{d, {}};
  for (auto& g : d == 2 ? pauli() : gell_mann()) basis.generators.emplace_back(std::move(g));
  return basis;
}

Observable swap_operator(std::size_t d) {
  require_local_dim(d, "swap_operator");
  ComplexMatrix f(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
  return Observable(std::move(f), {d, d});
}

Observable gamma_operator(std::size_t d) {
  require_local_dim(d, "gamma_operator");
  ComplexMatrix g(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i * d + i, j * d + j) = 1.0;
  return Observable(std::move(g), {d, d});
}

std::pair<Observable, Observable> sym_antisym_projectors(std::size_t d) {
  const ComplexMatrix f = swap_operator(d).matrix();
  const ComplexMatrix id = ComplexMatrix::identity(d * d);
  return {Observable(0.5 * (id + f), {d, d}), Observable(0.5 * (id - f), {d, d})};
}

ComplexMatrix permutation_operator(std::span<const std::size_t> perm, std::size_t d) {
  const std::size_t k = perm.size();
  if (k == 0) throw DomainError("permutation_operator: empty permutation");
  std::vector<bool> seen(k, false);
  for (std::size_t p : perm) {
    if (p >= k || seen[p]) throw DomainError("permutation_operator: not a permutation of 0..k-1");
    seen[p] = true;
  }
  if (d < 1) throw DomainError("permutation_operator: d must be positive");
  std::size_t dim = 1;
  for (std::size_t j = 0; j < k; ++j) dim *= d;
  require_within_cap(dim, "permutation_operator");

  ComplexMatrix w(dim);
  std::vector<std::size_t> in(k), out(k);
  for (std::size_t x = 0; x < dim; ++x) {
    std::size_t rest = x;
    for (std::size_t j = k; j-- > 0;) {
      in[j] = rest % d;
      rest /= d;
    }
    for (std::size_t j = 0; j < k; ++j) out[perm[j]] = in[j];
    std::size_t y = 0;
    for (std::size_t j = 0; j < k; ++j) y = y * d + out[j];
    w(y, x) = 1.0;
  }
  return w;
}

BlochDecomposition bloch_decompose(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  if (d != 2 && d != 3) throw DomainError("bloch_decompose: dimension must be 2 or 3");
  const auto basis = su_generators(d);
  BlochDecomposition out{d, {}};
  for (const auto& g : basis.generators) out.coherence_vector.push_back(trace_product(rho.matrix(), g.matrix()).real());
  return out;
}

ComplexMatrix BlochDecomposition::reconstruct() const {
  const auto basis = su_generators(d);
  ComplexMatrix m = ComplexMatrix::identity(d) * Complex(1.0 / static_cast<double>(d));
  for (std::size_t i = 0; i < basis.generators.size(); ++i) m += basis.generators[i].matrix() * Complex(0.5 * coherence_vector.at(i));
  return m;
}

ComplexMatrix sigma_n(double theta, double phi) {
  const auto s = pauli();
  return s[0] * Complex(std::sin(theta) * std::cos(phi)) + s[1] * Complex(std::sin(theta) * std::sin(phi)) +
         s[2] * Complex(std::cos(theta));
}

}  // namespace qproxy
