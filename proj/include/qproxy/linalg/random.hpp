#pragma once

#include <cstdint>
#include <random>

#include "qproxy/linalg/quantum_types.hpp"

namespace qproxy {

using Rng = std::mt19937_64;

/// QR-orthonormalized complex Gaussian matrix with the phases of R's diagonal
/// fixed. Haar-like; reproducible for a given generator state.
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);

/// Normalized complex Gaussian state vector.
std::vector<Complex> random_ket(std::size_t dim, Rng& rng);

/// G G^dagger / Tr with G a dim x rank complex Gaussian matrix.
DensityMatrix random_density_matrix(const Dims& dims, Rng& rng, std::size_t rank = 0);

}  // namespace qproxy
