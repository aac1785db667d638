#pragma once

#include "qproxy/linalg/spectral.hpp"

namespace qproxy::reference {

struct JacobiOptions {
  double off_diagonal_tol = 1e-12;
  int max_sweeps = 100;
};

/// Cyclic Jacobi eigensolver for Hermitian matrices. Serial and O(n^3) per
/// sweep; kept as an independent oracle for the LAPACK path.
Spectrum jacobi_eigh(const ComplexMatrix& hermitian, const JacobiOptions& options = {});

}  // namespace qproxy::reference
