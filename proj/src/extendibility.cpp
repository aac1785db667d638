#include "qproxy/extendibility.hpp"

#include <algorithm>
#include <array>
#include <numbers>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qproxy/error.hpp"
#include "qproxy/linalg/cap.hpp"
#include "qproxy/linalg/spectral.hpp"

namespace qproxy {

namespace {

// Averages X over all permutations of the B factors of A B_1 ... B_k.
class BSymmetrizer {
 public:
  BSymmetrizer(std::size_t d_a, std::size_t d_b, std::size_t k) {
    dims_.assign(k + 1, d_b);
    dims_[0] = d_a;
    dim_ = product(dims_);
    std::vector<std::size_t> perm(k + 1);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::size_t> in(k + 1), out(k + 1);
    do {
      std::vector<std::size_t> map(dim_);
      for (std::size_t x = 0; x < dim_; ++x) {
        std::size_t rest = x;
        for (std::size_t j = k + 1; j-- > 0;) {
          in[j] = rest % dims_[j];
          rest /= dims_[j];
        }
        for (std::size_t j = 0; j <= k; ++j) out[perm[j]] = in[j];
        std::size_t y = 0;
        for (std::size_t j = 0; j <= k; ++j) y = y * dims_[j] + out[j];
        map[x] = y;
      }
      maps_.push_back(std::move(map));
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
  }

  const Dims& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return dim_; }

  ComplexMatrix apply(const ComplexMatrix& m) const {
    ComplexMatrix out(dim_);
    for (const auto& map : maps_) {
      for (std::size_t r = 0; r < dim_; ++r) {
        const std::size_t mr = map[r];
        for (std::size_t c = 0; c < dim_; ++c) out(mr, map[c]) += m(r, c);
      }
    }
    out *= 1.0 / static_cast<double>(maps_.size());
    return out;
  }

 private:
  Dims dims_;
  std::size_t dim_ = 0;
  std::vector<std::vector<std::size_t>> maps_;
};

ComplexMatrix symmetrized(const ComplexMatrix& m) {
  ComplexMatrix out = m.adjoint();
  out += m;
  out *= 0.5;
  return out;
}

// Euclidean projection of the eigenvalues onto the probability simplex.
void project_to_simplex(std::vector<double>& v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) theta = candidate;
  }
  for (auto& x : v) x = std::max(x - theta, 0.0);
}

ComplexMatrix weighted_reconstruct(const Spectrum& s, const std::vector<double>& weights) {
  const std::size_t n = weights.size();
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (weights[k] == 0.0) continue;
    for (std::size_t r = 0; r < n; ++r) {
      const Complex vr = s.eigenvectors(r, k) * weights[k];
      for (std::size_t c = 0; c < n; ++c) out(r, c) += vr * std::conj(s.eigenvectors(c, k));
    }
  }
  return out;
}

// Nearest density matrix in Frobenius norm.
ComplexMatrix project_to_states(const ComplexMatrix& m) {
  const Spectrum s = eigh(symmetrized(m));
  std::vector<double> w = s.eigenvalues;
  project_to_simplex(w);
  return weighted_reconstruct(s, w);
}

double min_eigenvalue(const ComplexMatrix& m) { return eigenvalues(symmetrized(m)).front(); }

double entropy_bits(const ComplexMatrix& m) {
  auto w = eigenvalues(symmetrized(m));
  for (auto& x : w) x = std::max(x, 0.0);
  return shannon_entropy(w);
}

const std::array<std::size_t, 2> kKeepAB{0, 1};

struct DykstraRun {
  ComplexMatrix candidate;  // B-symmetrized PSD iterate
  Feasibility status;
  double gap;
  double violation;
  std::size_t iterations;
};

// Dykstra's alternating projections between the density matrices and an
// affine set of B-symmetric matrices; `violation` measures how far a
// symmetrized density matrix is from the affine constraints.
template <class Affine, class Violation>
DykstraRun dykstra(ComplexMatrix x, const BSymmetrizer& sym, Affine&& project_affine, Violation&& violation,
                   double tol, std::size_t max_iterations) {
  const std::size_t n = x.dim();
  ComplexMatrix p(n), q(n), y(n);
  double gap_before = std::numeric_limits<double>::infinity();
  double gap = std::numeric_limits<double>::infinity();
  double viol = std::numeric_limits<double>::infinity();
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    y = project_affine(x + p);
    p += x;
    p -= y;
    ComplexMatrix next = project_to_states(y + q);
    q += y;
    q -= next;
    x = std::move(next);

    if (it == 1 || it % 10 == 0) {
      ComplexMatrix candidate = sym.apply(x);
      viol = violation(candidate);
      if (viol <= tol) return {std::move(candidate), Feasibility::feasible, (x - y).frobenius_norm(), viol, it};
    }
    if (it % 50 == 0) {
      gap = (x - y).frobenius_norm();
      if (gap > tol && std::isfinite(gap_before) && std::abs(gap_before - gap) <= 1e-6 * gap_before) {
        return {sym.apply(x), Feasibility::infeasible, gap, viol, it};
      }
      gap_before = gap;
    }
  }
  ComplexMatrix candidate = sym.apply(x);
  viol = violation(candidate);
  return {std::move(candidate), viol <= tol ? Feasibility::feasible : Feasibility::undecided, gap, viol,
          max_iterations};
}

std::size_t extension_dim(std::size_t d_a, std::size_t d_b, std::size_t k, const char* what) {
  if (k < 2) throw DomainError(std::string(what) + ": k must be >= 2");
  std::size_t dim = d_a;
  for (std::size_t j = 0; j < k; ++j) {
    if (dim > dense_cap()) break;
    dim *= d_b;
  }
  require_within_cap(dim, what);
  return dim;
}

}  // namespace

double werner_ext_threshold(std::size_t d, std::size_t k) {
  if (d < 2 || k < 1) throw DomainError("werner_ext_threshold: need d >= 2, k >= 1");
  return 0.5 * (static_cast<double>(d - 1) / static_cast<double>(k) + 1.0);
}

double isotropic_ext_threshold(std::size_t d, std::size_t k) {
  if (d < 2 || k < 1) throw DomainError("isotropic_ext_threshold: need d >= 2, k >= 1");
  return (1.0 + static_cast<double>(d - 1) / static_cast<double>(k)) / static_cast<double>(d);
}

std::string_view to_string(Feasibility f) {
  switch (f) {
    case Feasibility::feasible:
      return "feasible";
    case Feasibility::infeasible:
      return "infeasible";
    case Feasibility::undecided:
      return "undecided";
  }
  return "?";
}

FeasibilityResult k_extension_feasible(const ExtensionProblem& problem) {
  const auto& rho = problem.rho;
  if (rho.dims().size() != 2) throw DimensionError("k_extension_feasible: rho must be bipartite");
  if (!(problem.tolerance > 0.0)) throw DomainError("k_extension_feasible: tolerance must be positive");
  const std::size_t d_a = rho.dims()[0];
  const std::size_t d_b = rho.dims()[1];
  const std::size_t k = problem.k;
  const std::size_t dim = extension_dim(d_a, d_b, k, "k_extension_feasible");
  const BSymmetrizer sym(d_a, d_b, k);
  const Dims& dims = sym.dims();
  const std::size_t rest = dim / (d_a * d_b);
  const ComplexMatrix id_rest = ComplexMatrix::identity(rest);
  const std::array<std::size_t, 1> keep_a{0};
  const Dims dims_ab{d_a, d_b};

  // L(X) = Tr_{B2..Bk} X restricted to B-symmetric X satisfies
  // L P_sym L*(Z) = c (dB Z + (k-1) Tr_B(Z) (x) I_B), c = dB^(k-2) / k.
  const double c = std::pow(static_cast<double>(d_b), static_cast<double>(k) - 2.0) / static_cast<double>(k);
  const double db = static_cast<double>(d_b);
  const ComplexMatrix id_b = ComplexMatrix::identity(d_b);
  auto project_affine = [&](const ComplexMatrix& m) {
    ComplexMatrix xs = sym.apply(m);
    const ComplexMatrix r = rho.matrix() - partial_trace(xs, dims, kKeepAB);
    const ComplexMatrix z_a = partial_trace(r, dims_ab, keep_a) * Complex(1.0 / (c * db * static_cast<double>(k)));
    ComplexMatrix z = r * Complex(1.0 / c) - tensor_product(z_a, id_b) * Complex(static_cast<double>(k) - 1.0);
    z *= 1.0 / db;
    xs += sym.apply(tensor_product(z, id_rest));
    return xs;
  };
  auto marginal_violation = [&](const ComplexMatrix& x) {
    return max_abs_diff(partial_trace(x, dims, kKeepAB), rho.matrix());
  };

  const std::array<std::size_t, 1> keep_b{1};
  ComplexMatrix start = rho.matrix();
  const ComplexMatrix rho_b = partial_trace(rho.matrix(), dims_ab, keep_b);
  for (std::size_t j = 1; j < k; ++j) start = tensor_product(start, rho_b);

  DykstraRun run =
      dykstra(std::move(start), sym, project_affine, marginal_violation, problem.tolerance, problem.max_iterations);

  FeasibilityResult result;
  result.status = run.status;
  result.iterations = run.iterations;
  result.gap = run.gap;
  result.residuals.marginal_violation = run.violation;
  result.residuals.psd_violation = std::max(0.0, -min_eigenvalue(run.candidate));
  result.residuals.permutation_violation = max_abs_diff(sym.apply(run.candidate), run.candidate);
  if (run.status == Feasibility::feasible) {
    result.extension = DensityMatrix::from_psd(symmetrized(run.candidate), dims);
  }
  return result;
}

MaxEntropyResult max_entropy_with_mean(const Observable& a, double target, std::size_t k, std::size_t d,
                                       const MaxEntropyOptions& options) {
  if (d < 2) throw DomainError("max_entropy_with_mean: d must be >= 2");
  if (a.dim() != d * d) throw DimensionError("max_entropy_with_mean: observable must act on C^d (x) C^d");
  if (!a.is_hermitian()) throw NotHermitianError("max_entropy_with_mean: observable is not Hermitian");
  const std::size_t dim = extension_dim(d, d, k, "max_entropy_with_mean");
  const ComplexMatrix am = hermitize(a.matrix());
  const auto spectrum = eigenvalues(am);
  const double scale = std::max(1.0, am.max_abs());
  if (target < spectrum.front() - 1e-10 * scale || target > spectrum.back() + 1e-10 * scale) {
    throw DomainError("max_entropy_with_mean: target " + std::to_string(target) + " outside [" +
                      std::to_string(spectrum.front()) + ", " + std::to_string(spectrum.back()) + "]");
  }

  const BSymmetrizer sym(d, d, k);
  const Dims& dims = sym.dims();
  const std::size_t rest = dim / (d * d);
  const ComplexMatrix id_rest = ComplexMatrix::identity(rest);
  const ComplexMatrix lifted = tensor_product(am, id_rest);

  // Orthonormal basis of span{I, P_sym(A (x) I)} and the matching target coordinates.
  const double root_dim = std::sqrt(static_cast<double>(dim));
  const ComplexMatrix e1 = ComplexMatrix::identity(dim) * Complex(1.0 / root_dim);
  const ComplexMatrix m_s = sym.apply(lifted);
  const double m_along_e1 = trace_product(e1, m_s).real();
  ComplexMatrix m_perp = m_s - e1 * Complex(m_along_e1);
  const double m_perp_norm = m_perp.frobenius_norm();
  const bool mean_is_free = m_perp_norm <= 1e-12 * std::max(1.0, m_s.frobenius_norm());
  std::optional<ComplexMatrix> e2;
  double t2 = 0.0;
  if (!mean_is_free) {
    e2 = m_perp * Complex(1.0 / m_perp_norm);
    t2 = (target - m_along_e1 / root_dim) / m_perp_norm;
  }
  const double t1 = 1.0 / root_dim;

  auto project_affine = [&](const ComplexMatrix& m) {
    ComplexMatrix xs = sym.apply(m);
    const double c1 = t1 - trace_product(e1, xs).real();
    xs += e1 * Complex(c1);
    if (e2) {
      const double c2 = t2 - trace_product(*e2, xs).real();
      xs += *e2 * Complex(c2);
    }
    return xs;
  };
  auto mean_violation = [&](const ComplexMatrix& x) {
    return std::abs(trace_product(lifted, x).real() - target);
  };
  auto project = [&](ComplexMatrix start) {
    return dykstra(std::move(start), sym, project_affine, mean_violation, options.tolerance,
                   options.projection_iterations);
  };

  MaxEntropyResult result;
  DykstraRun run = project(ComplexMatrix::identity(dim) * Complex(1.0 / static_cast<double>(dim)));
  result.residuals.marginal_violation = run.violation;
  if (run.status != Feasibility::feasible) {
    result.status = run.status;
    result.entropy = -std::numeric_limits<double>::infinity();
    return result;
  }

  ComplexMatrix x = std::move(run.candidate);
  double entropy = entropy_bits(partial_trace(x, dims, kKeepAB));
  double violation = run.violation;
  result.entropy_trace.push_back(entropy);

  double step = 0.05;
  const double inv_ln2 = 1.0 / std::numbers::ln2;
  std::size_t stalled = 0;
  for (std::size_t it = 0; it < options.max_steps && step > 1e-10; ++it) {
    result.steps = it + 1;
    // Gradient of S(Tr_{B2..Bk} X) is -(log2 rho + I / ln 2) (x) I.
    const ComplexMatrix marginal = partial_trace(x, dims, kKeepAB);
    const Spectrum s = eigh(symmetrized(marginal));
    std::vector<double> g(s.eigenvalues.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = -(std::log2(std::max(s.eigenvalues[i], 1e-12)) + inv_ln2);
    const ComplexMatrix grad = tensor_product(weighted_reconstruct(s, g), id_rest);

    DykstraRun trial = project(x + grad * Complex(step));
    if (trial.status != Feasibility::feasible) {
      step *= 0.5;
      continue;
    }
    const double trial_entropy = entropy_bits(partial_trace(trial.candidate, dims, kKeepAB));
    if (trial_entropy < entropy) {
      step *= 0.5;
      continue;
    }
    const double gain = trial_entropy - entropy;
    x = std::move(trial.candidate);
    entropy = trial_entropy;
    violation = trial.violation;
    result.entropy_trace.push_back(entropy);
    step = std::min(step * 2.0, 10.0);
    stalled = gain <= 1e-12 ? stalled + 1 : 0;
    if (stalled >= 3) break;
  }

  result.status = Feasibility::feasible;
  result.entropy = entropy;
  result.residuals.marginal_violation = violation;
  result.residuals.psd_violation = std::max(0.0, -min_eigenvalue(x));
  result.marginal = DensityMatrix::from_psd(symmetrized(partial_trace(x, dims, kKeepAB)), {d, d});
  return result;
}

}  // namespace qproxy
