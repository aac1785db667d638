#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "qproxy/linalg/quantum_types.hpp"

namespace qproxy {

/// Largest Werner p that is k-extendible: (1/2)((d-1)/k + 1). Values >= 1
/// mean the whole family is k-extendible.
double werner_ext_threshold(std::size_t d, std::size_t k);
/// Largest isotropic t that is k-extendible: (1/d)(1 + (d-1)/k).
double isotropic_ext_threshold(std::size_t d, std::size_t k);

enum class Feasibility { feasible, infeasible, undecided };
std::string_view to_string(Feasibility f);

struct ExtensionProblem {
  DensityMatrix rho;  // bipartite, dims {dA, dB}
  std::size_t k = 2;
  double tolerance = 1e-9;
  std::size_t max_iterations = 20000;
};

struct Residuals {
  double psd_violation = 0.0;          // max(0, -lambda_min)
  double permutation_violation = 0.0;  // max-norm distance to the B-symmetrized matrix
  double marginal_violation = 0.0;     // max-norm of Tr_{B2..Bk} X - rho (or mean-value error)
};

struct FeasibilityResult {
  Feasibility status = Feasibility::undecided;
  /// Symmetric extension on A B_1 ... B_k when feasible.
  std::optional<DensityMatrix> extension;
  Residuals residuals;
  std::size_t iterations = 0;
  /// Frobenius distance between the last iterates of the two constraint sets.
  double gap = 0.0;

  bool feasible() const noexcept { return status == Feasibility::feasible; }
};

/// Dykstra alternating projections between {PSD, trace 1} and the affine set
/// {B-permutation invariant, marginal on A B_1 equals rho}. Infeasible is
/// declared when the gap stalls above tolerance (relative change <= 1e-6 over
/// 50 iterations); running out of iterations otherwise gives undecided.
/// Throws CapError when dA * dB^k exceeds the dense cap and DomainError for k < 2.
FeasibilityResult k_extension_feasible(const ExtensionProblem& problem);

struct MaxEntropyOptions {
  double tolerance = 1e-9;
  std::size_t projection_iterations = 20000;
  std::size_t max_steps = 300;
};

struct MaxEntropyResult {
  Feasibility status = Feasibility::undecided;
  /// Entropy (bits) of the AB marginal of the best iterate; -inf when no
  /// k-extendible state meets the mean constraint.
  double entropy = 0.0;
  std::optional<DensityMatrix> marginal;
  Residuals residuals;
  std::size_t steps = 0;
  /// Entropy after each accepted step; non-decreasing.
  std::vector<double> entropy_trace;
};

/// Lower estimate of max S(rho) over k-extendible rho on C^d (x) C^d with
/// Tr[rho A] = target, by projected gradient ascent on the extension.
/// Throws DomainError when target lies outside the spectrum range of A.
MaxEntropyResult max_entropy_with_mean(const Observable& a, double target, std::size_t k, std::size_t d,
                                       const MaxEntropyOptions& options = {});

}  // namespace qproxy
