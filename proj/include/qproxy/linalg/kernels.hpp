#pragma once

// Hot loops behind the public matrix API. `kernels` holds the OpenMP versions;
// `reference` holds straightforward serial versions kept for tests and the
// benchmark. Neither namespace validates arguments; callers do.

#include <span>
#include <vector>

#include "qproxy/linalg/matrix.hpp"

namespace qproxy {

/// Strides of a row-major multi-index over `dims` (last factor has stride 1).
std::vector<std::size_t> strides_of(const Dims& dims);

namespace kernels {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix partial_trace(const ComplexMatrix& m, const Dims& dims, std::span<const std::size_t> keep);
ComplexMatrix permute_subsystems(const ComplexMatrix& m, const Dims& dims, std::span<const std::size_t> perm);
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace kernels

namespace reference {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix partial_trace(const ComplexMatrix& m, const Dims& dims, std::span<const std::size_t> keep);
/// Builds the permutation unitary explicitly and multiplies.
ComplexMatrix permute_subsystems(const ComplexMatrix& m, const Dims& dims, std::span<const std::size_t> perm);
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace reference

}  // namespace qproxy
