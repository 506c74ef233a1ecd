// Serial reference kernels against their OpenMP counterparts, plus matrix
// assembly at one thread and at the full thread count. Problem sizes follow
// the uniform unit-square mesh with 1/h = range(0).

#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <vector>

#include "tdgl/fem.hpp"
#include "tdgl/kernels.hpp"
#include "tdgl/mesh.hpp"

using namespace tdgl;

namespace {

const Discretization& disc_for(int m) {
  static std::vector<std::pair<int, std::unique_ptr<Discretization>>> cache;
  for (const auto& [k, d] : cache)
    if (k == m) return *d;
  cache.emplace_back(m, std::make_unique<Discretization>(generate_uniform(StructuredDomain::unit_square(), m)));
  return *cache.back().second;
}

std::vector<Complex> random_complex(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  for (auto& z : v) z = {g(rng), g(rng)};
  return v;
}

std::vector<double> random_real(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

struct LhatFixture {
  ComplexCsr l;
  std::vector<Complex> x, y;
  explicit LhatFixture(int m) {
    const auto& d = disc_for(m);
    l = assemble_Lhat(d, random_real(d.num_edge_dofs(), 3), 4.0);
    x = random_complex(d.num_nodes(), 4);
    y.assign(x.size(), Complex{});
  }
};

template <bool Parallel>
void BM_spmv_complex(benchmark::State& state) {
  LhatFixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel) kernels::parallel::spmv(f.l, f.x, f.y);
    else kernels::serial::spmv(f.l, f.x, f.y);
    benchmark::DoNotOptimize(f.y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.l.nnz()));
}

template <bool Parallel>
void BM_spmv_real(benchmark::State& state) {
  const auto& d = disc_for(static_cast<int>(state.range(0)));
  const NodalField psi = random_complex(d.num_nodes(), 5);
  const RealCsr a = assemble_A_system(d, psi, 1.0, 0.1);
  const auto x = random_real(d.num_edge_dofs(), 6);
  std::vector<double> y(x.size());
  for (auto _ : state) {
    if constexpr (Parallel) kernels::parallel::spmv(a, x, y);
    else kernels::serial::spmv(a, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(a.nnz()));
}

template <bool Parallel>
void BM_dotc(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto a = random_complex(n, 7), b = random_complex(n, 8);
  for (auto _ : state) {
    Complex s = Parallel ? kernels::parallel::dotc(a, b) : kernels::serial::dotc(a, b);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * n);
}

template <bool Parallel>
void BM_axpy(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto x = random_complex(n, 9);
  auto y = random_complex(n, 10);
  for (auto _ : state) {
    if constexpr (Parallel) kernels::parallel::axpy(Complex(1e-9, 0.0), x, y);
    else kernels::serial::axpy(Complex(1e-9, 0.0), x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_assemble_Lhat(benchmark::State& state) {
  const auto& d = disc_for(static_cast<int>(state.range(0)));
  const auto a = random_real(d.num_edge_dofs(), 11);
  const int before = kernels::max_threads();
  kernels::set_threads(state.range(1) == 0 ? 1 : before);
  for (auto _ : state) {
    ComplexCsr l = assemble_Lhat(d, a, 4.0);
    benchmark::DoNotOptimize(l.val.data());
  }
  kernels::set_threads(before);
  state.SetItemsProcessed(state.iterations() * d.num_cells());
}

}  // namespace

BENCHMARK(BM_spmv_complex<false>)->Name("spmv_complex/serial")->Arg(64)->Arg(256);
BENCHMARK(BM_spmv_complex<true>)->Name("spmv_complex/parallel")->Arg(64)->Arg(256);
BENCHMARK(BM_spmv_real<false>)->Name("spmv_real/serial")->Arg(64)->Arg(256);
BENCHMARK(BM_spmv_real<true>)->Name("spmv_real/parallel")->Arg(64)->Arg(256);
BENCHMARK(BM_dotc<false>)->Name("dotc/serial")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_dotc<true>)->Name("dotc/parallel")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_axpy<false>)->Name("axpy/serial")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_axpy<true>)->Name("axpy/parallel")->Arg(1 << 16)->Arg(1 << 20);
// Second argument: 0 runs on one thread, 1 on all threads.
BENCHMARK(BM_assemble_Lhat)->Name("assemble_Lhat")->Args({128, 0})->Args({128, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
