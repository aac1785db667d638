#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qproxy/linalg/quantum_types.hpp"

namespace qproxy {

/// Pauli matrices (d = 2) or Gell-Mann matrices (d = 3), normalized so that
/// Tr[G_i G_j] = 2 delta_ij.
struct GeneratorBasis {
  std::size_t d;
  std::vector<Observable> generators;
};

/// Coefficients S_i = Tr[rho G_i]; rho = I/d + (1/2) S . G.
struct BlochDecomposition {
  std::size_t d;
  std::vector<double> coherence_vector;

  ComplexMatrix reconstruct() const;
};

/// Throws DomainError for d outside {2, 3}.
GeneratorBasis su_generators(std::size_t d);

/// F = sum |ij><ji| on C^d (x) C^d.
Observable swap_operator(std::size_t d);
/// Gamma = sum |ii><jj| = d |Phi><Phi|.
Observable gamma_operator(std::size_t d);
/// (Pi+, Pi-) = ((I + F)/2, (I - F)/2).
std::pair<Observable, Observable> sym_antisym_projectors(std::size_t d);

/// Unitary on (C^d)^{(x)k} moving the factor at position j to position perm[j]
/// (0-based). W(a) W(b) = W(a o b). Throws DomainError for an invalid permutation.
ComplexMatrix permutation_operator(std::span<const std::size_t> perm, std::size_t d);

/// Throws DomainError unless dim(rho) is 2 or 3.
BlochDecomposition bloch_decompose(const DensityMatrix& rho);

/// sigma . n for the unit vector (sin t cos p, sin t sin p, cos t).
ComplexMatrix sigma_n(double theta, double phi);

}  // namespace qproxy
