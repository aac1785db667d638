#pragma once

#include <array>
#include <vector>

#include "qproxy/linalg/quantum_types.hpp"

namespace qproxy {

struct WernerParams {
  double p;
  std::size_t d;
};

struct IsotropicParams {
  double t;
  std::size_t d;
};

/// Populations q (non-increasing) attached to the ascending-energy eigenbasis of H.
struct PassiveStateSpec {
  std::vector<double> populations;
  Observable hamiltonian;
};

struct WernerTwirl {
  WernerParams params;
  DensityMatrix state;
};

struct IsotropicTwirl {
  IsotropicParams params;
  DensityMatrix state;
};

struct GroundState {
  double energy;
  /// Uniform mixture over the ground space.
  DensityMatrix state;
  std::size_t degeneracy;
};

/// (1-p) 2/(d(d+1)) Pi+ + p 2/(d(d-1)) Pi-; Tr[rho F] = 1 - 2p.
DensityMatrix werner_state(const WernerParams& params);
/// t Phi + (1-t)(I - Phi)/(d^2 - 1); Tr[rho Gamma] = t d.
DensityMatrix isotropic_state(const IsotropicParams& params);

/// Projection onto the Werner family keeping Tr[rho F].
WernerTwirl werner_twirl(const DensityMatrix& rho);
/// Projection onto the isotropic family keeping Tr[rho Gamma].
IsotropicTwirl isotropic_twirl(const DensityMatrix& rho);

/// (I + v . sigma)/2. Throws DomainError when |v| > 1 + 1e-10.
DensityMatrix qubit_from_bloch(const std::array<double, 3>& v);

DensityMatrix passive_state(const PassiveStateSpec& spec);

/// Eigenvalues closer than this to the minimum count as ground-space degenerate.
inline constexpr double kDegeneracyGap = 1e-9;

GroundState ground_state(const Observable& h);

}  // namespace qproxy
