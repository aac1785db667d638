// OpenMP kernels against the serial reference, plus Jacobi against LAPACK.
// Run with --benchmark_filter to pick a group.

#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "qproxy/linalg/jacobi.hpp"
#include "qproxy/linalg/kernels.hpp"
#include "qproxy/linalg/spectral.hpp"
#include "qproxy/spin_models.hpp"
#include "support.hpp"

using namespace qproxy;

namespace {

template <auto Fn>
void bm_matmul(benchmark::State& st) {
  Rng rng(1);
  const auto n = static_cast<std::size_t>(st.range(0));
  const ComplexMatrix a = testing::random_matrix(n, rng), b = testing::random_matrix(n, rng);
  for (auto _ : st) benchmark::DoNotOptimize(Fn(a, b));
}

template <auto Fn>
void bm_kron(benchmark::State& st) {
  Rng rng(2);
  const auto n = static_cast<std::size_t>(st.range(0));
  const ComplexMatrix a = testing::random_matrix(n, rng), b = testing::random_matrix(n, rng);
  for (auto _ : st) benchmark::DoNotOptimize(Fn(a, b));
}

template <auto Fn>
void bm_trace_product(benchmark::State& st) {
  Rng rng(3);
  const auto n = static_cast<std::size_t>(st.range(0));
  const ComplexMatrix a = testing::random_matrix(n, rng), b = testing::random_matrix(n, rng);
  for (auto _ : st) benchmark::DoNotOptimize(Fn(a, b));
}

// range(0) qubits, keep the even-indexed ones
template <auto Fn>
void bm_partial_trace(benchmark::State& st) {
  Rng rng(4);
  const auto q = static_cast<std::size_t>(st.range(0));
  const Dims dims(q, 2);
  const ComplexMatrix m = testing::random_matrix(std::size_t{1} << q, rng);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < q; i += 2) keep.push_back(i);
  for (auto _ : st) benchmark::DoNotOptimize(Fn(m, dims, keep));
}

// range(0) qubits, reversed order
template <auto Fn>
void bm_permute(benchmark::State& st) {
  Rng rng(5);
  const auto q = static_cast<std::size_t>(st.range(0));
  const Dims dims(q, 2);
  const ComplexMatrix m = testing::random_matrix(std::size_t{1} << q, rng);
  std::vector<std::size_t> perm(q);
  std::iota(perm.rbegin(), perm.rend(), std::size_t{0});
  for (auto _ : st) benchmark::DoNotOptimize(Fn(m, dims, perm));
}

template <auto Fn>
void bm_assemble(benchmark::State& st) {
  const auto sites = static_cast<std::size_t>(st.range(0));
  const auto bonds = chain_bonds({ModelFamily::heisenberg, sites, {1.0, 1.0, 1.0}, 0.3, true});
  for (auto _ : st) benchmark::DoNotOptimize(Fn(sites, bonds, 0.3));
}

void bm_eigh_lapack(benchmark::State& st) {
  Rng rng(6);
  const ComplexMatrix h = testing::random_hermitian(static_cast<std::size_t>(st.range(0)), rng);
  for (auto _ : st) benchmark::DoNotOptimize(eigh(h));
}

void bm_eigh_jacobi(benchmark::State& st) {
  Rng rng(6);
  const ComplexMatrix h = testing::random_hermitian(static_cast<std::size_t>(st.range(0)), rng);
  for (auto _ : st) benchmark::DoNotOptimize(reference::jacobi_eigh(h));
}

}  // namespace

BENCHMARK(bm_matmul<kernels::matmul>)->Name("matmul/omp")->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(bm_matmul<reference::matmul>)->Name("matmul/ref")->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(bm_kron<kernels::kron>)->Name("kron/omp")->RangeMultiplier(2)->Range(8, 32);
BENCHMARK(bm_kron<reference::kron>)->Name("kron/ref")->RangeMultiplier(2)->Range(8, 32);
BENCHMARK(bm_trace_product<kernels::trace_product>)->Name("trace_product/omp")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(bm_trace_product<reference::trace_product>)->Name("trace_product/ref")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(bm_partial_trace<kernels::partial_trace>)->Name("partial_trace/omp")->DenseRange(6, 10, 2);
BENCHMARK(bm_partial_trace<reference::partial_trace>)->Name("partial_trace/ref")->DenseRange(6, 8, 2);
BENCHMARK(bm_permute<kernels::permute_subsystems>)->Name("permute/omp")->DenseRange(6, 10, 2);
BENCHMARK(bm_permute<reference::permute_subsystems>)->Name("permute/ref")->DenseRange(6, 8, 2);
BENCHMARK(bm_assemble<assemble_spin_hamiltonian>)->Name("assemble/omp")->DenseRange(6, 10, 2);
BENCHMARK(bm_assemble<reference::assemble_spin_hamiltonian>)->Name("assemble/ref")->DenseRange(6, 8, 2);
BENCHMARK(bm_eigh_lapack)->Name("eigh/lapack")->RangeMultiplier(2)->Range(16, 128);
BENCHMARK(bm_eigh_jacobi)->Name("eigh/jacobi")->RangeMultiplier(2)->Range(16, 128);

BENCHMARK_MAIN();
