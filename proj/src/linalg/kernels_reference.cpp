#include "qproxy/linalg/kernels.hpp"

namespace qproxy::reference {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < n; ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t nb = b.dim();
  ComplexMatrix out(a.dim() * nb);
  for (std::size_t r = 0; r < out.dim(); ++r) {
    for (std::size_t c = 0; c < out.dim(); ++c) out(r, c) = a(r / nb, c / nb) * b(r % nb, c % nb);
  }
  return out;
}

namespace {

std::vector<std::size_t> digits(std::size_t index, const Dims& dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t j = dims.size(); j-- > 0;) {
    d[j] = index % dims[j];
    index /= dims[j];
  }
  return d;
}

std::size_t compose(const std::vector<std::size_t>& d, const Dims& dims) {
  std::size_t index = 0;
  for (std::size_t j = 0; j < dims.size(); ++j) index = index * dims[j] + d[j];
  return index;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, const Dims& dims, std::span<const std::size_t> keep) {
  std::vector<bool> kept(dims.size(), false);
  Dims kept_dims;
  for (std::size_t k : keep) {
    kept[k] = true;
  }
  for (std::size_t j = 0; j < dims.size(); ++j) {
    if (kept[j]) kept_dims.push_back(dims[j]);
  }
  ComplexMatrix out(product(kept_dims));
  for (std::size_t r = 0; r < m.dim(); ++r) {
    const auto dr = digits(r, dims);
    for (std::size_t c = 0; c < m.dim(); ++c) {
      const auto dc = digits(c, dims);
      bool diagonal_in_traced = true;
      std::vector<std::size_t> kr;
      std::vector<std::size_t> kc;
      for (std::size_t j = 0; j < dims.size(); ++j) {
        if (kept[j]) {
          kr.push_back(dr[j]);
          kc.push_back(dc[j]);
        } else if (dr[j] != dc[j]) {
          diagonal_in_traced = false;
        }
      }
      if (diagonal_in_traced) out(compose(kr, kept_dims), compose(kc, kept_dims)) += m(r, c);
    }
  }
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const Dims& dims, std::span<const std::size_t> perm) {
  Dims new_dims(dims.size());
  for (std::size_t j = 0; j < dims.size(); ++j) new_dims[perm[j]] = dims[j];
  ComplexMatrix w(m.dim());
  for (std::size_t x = 0; x < m.dim(); ++x) {
    const auto dx = digits(x, dims);
    std::vector<std::size_t> dy(dims.size());
    for (std::size_t j = 0; j < dims.size(); ++j) dy[perm[j]] = dx[j];
    w(compose(dy, new_dims), x) = 1.0;
  }
  return matmul(matmul(w, m), w.adjoint());
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  Complex acc{};
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) acc += a(i, j) * b(j, i);
  }
  return acc;
}

}  // namespace qproxy::reference
