#include "qproxy/linalg/kernels.hpp"

#include <omp.h>

#include <cstdint>

namespace qproxy {

std::vector<std::size_t> strides_of(const Dims& dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t j = dims.size(); j-- > 1;) strides[j - 1] = strides[j] * dims[j];
  return strides;
}

namespace {

// Offsets into the full index space for every multi-index over `subset`.
std::vector<std::size_t> subset_offsets(const Dims& dims, const std::vector<std::size_t>& strides,
                                        const std::vector<std::size_t>& subset) {
  std::size_t count = 1;
  for (std::size_t s : subset) count *= dims[s];
  std::vector<std::size_t> offsets(count, 0);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rest = idx;
    std::size_t off = 0;
    for (std::size_t j = subset.size(); j-- > 0;) {
      const std::size_t s = subset[j];
      off += (rest % dims[s]) * strides[s];
      rest /= dims[s];
    }
    offsets[idx] = off;
  }
  return offsets;
}

}  // namespace

namespace kernels {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  const auto n = static_cast<std::int64_t>(a.dim());
  ComplexMatrix out(a.dim());
  const Complex* pa = a.data();
  const Complex* pb = b.data();
  Complex* po = out.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    Complex* row = po + i * n;
    for (std::int64_t k = 0; k < n; ++k) {
      const Complex aik = pa[i * n + k];
      if (aik == Complex{}) continue;
      const Complex* brow = pb + k * n;
      // expanded by hand: operator* goes through __muldc3 without -ffast-math
      const double ar = aik.real(), ai = aik.imag();
      for (std::int64_t j = 0; j < n; ++j) {
        const double br = brow[j].real(), bi = brow[j].imag();
        row[j] += Complex(ar * br - ai * bi, ar * bi + ai * br);
      }
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  const std::size_t n = na * nb;
  ComplexMatrix out(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t ia = 0; ia < static_cast<std::int64_t>(na); ++ia) {
    for (std::size_t ja = 0; ja < na; ++ja) {
      const Complex s = a(ia, ja);
      for (std::size_t ib = 0; ib < nb; ++ib) {
        Complex* dst = out.data() + (ia * nb + ib) * n + ja * nb;
        const Complex* src = b.data() + ib * nb;
        for (std::size_t jb = 0; jb < nb; ++jb) dst[jb] = s * src[jb];
      }
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const Dims& dims, std::span<const std::size_t> keep) {
  const auto strides = strides_of(dims);
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::vector<std::size_t> traced;
  for (std::size_t j = 0; j < dims.size(); ++j) {
    bool is_kept = false;
    for (std::size_t k : kept) is_kept = is_kept || k == j;
    if (!is_kept) traced.push_back(j);
  }
  const auto kept_off = subset_offsets(dims, strides, kept);
  const auto traced_off = subset_offsets(dims, strides, traced);
  const std::size_t nk = kept_off.size();
  const std::size_t n = m.dim();
  ComplexMatrix out(nk);
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(nk); ++r) {
    for (std::size_t c = 0; c < nk; ++c) {
      Complex acc{};
      for (std::size_t t : traced_off) acc += m.data()[(kept_off[r] + t) * n + kept_off[c] + t];
      out(r, c) = acc;
    }
  }
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const Dims& dims, std::span<const std::size_t> perm) {
  const std::size_t n = m.dim();
  Dims new_dims(dims.size());
  for (std::size_t j = 0; j < dims.size(); ++j) new_dims[perm[j]] = dims[j];
  const auto new_strides = strides_of(new_dims);
  std::vector<std::size_t> map(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t rest = x;
    std::size_t y = 0;
    for (std::size_t j = dims.size(); j-- > 0;) {
      y += (rest % dims[j]) * new_strides[perm[j]];
      rest /= dims[j];
    }
    map[x] = y;
  }
  ComplexMatrix out(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t x = 0; x < static_cast<std::int64_t>(n); ++x) {
    Complex* dst = out.data() + map[x] * n;
    const Complex* src = m.data() + x * n;
    for (std::size_t c = 0; c < n; ++c) dst[map[c]] = src[c];
  }
  return out;
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const auto n = static_cast<std::int64_t>(a.dim());
  double re = 0.0;
  double im = 0.0;
#pragma omp parallel for reduction(+ : re, im) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      const Complex z = a.data()[i * n + j] * b.data()[j * n + i];
      re += z.real();
      im += z.imag();
    }
  }
  return {re, im};
}

}  // namespace kernels
}  // namespace qproxy
