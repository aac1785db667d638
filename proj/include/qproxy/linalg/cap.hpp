#pragma once

#include <cstddef>
#include <string_view>

namespace qproxy {

inline constexpr std::size_t kDefaultDenseCap = 4096;

/// Largest dense matrix dimension accepted by dimension-guarded operations.
/// Reads QPROXY_DENSE_CAP on every call; falls back to 4096.
std::size_t dense_cap();

/// Throws CapError naming `what` when dim exceeds dense_cap().
void require_within_cap(std::size_t dim, std::string_view what);

/// Largest qubit count n with 2^n <= dense_cap().
std::size_t max_qubits();

}  // namespace qproxy
