// Serial reference kernels against their OpenMP counterparts on production
// sized inputs: the 10 x 10 two-mode generator and a 201 x 201 Wigner grid.

#include <benchmark/benchmark.h>

#include <vector>

#include "optomem/kernels.hpp"
#include "optomem/liouvillian.hpp"
#include "optomem/states.hpp"
#include "optomem/wigner.hpp"

using namespace optomem;

namespace {

const Superoperator& generator() {
  static const Superoperator l = liouvillian(SystemParams::reference(), HilbertDims{10, 10});
  return l;
}

std::vector<cplx> state() {
  const DensityMatrix rho = product_dm({vacuum_ket(10), coherent_ket(cplx(1.5, 0.0), 10)});
  return {rho.matrix().data(), rho.matrix().data() + rho.matrix().size()};
}

QOperator combined_state() {
  const Vector v = coherent_ket(cplx(1.5, 0.0), 30).amplitudes();
  return QOperator(HilbertDims{30}, v * v.adjoint() / v.squaredNorm());
}

void BM_spmv_serial(benchmark::State& st) {
  const auto x = state();
  std::vector<cplx> y(x.size());
  for (auto _ : st) {
    kernels::spmv_serial(generator().matrix(), x, y);
    benchmark::DoNotOptimize(y.data());
  }
  st.SetItemsProcessed(st.iterations() * generator().matrix().nonZeros());
}

void BM_spmv_omp(benchmark::State& st) {
  kernels::set_threads(static_cast<int>(st.range(0)));
  const auto x = state();
  std::vector<cplx> y(x.size());
  for (auto _ : st) {
    kernels::spmv_omp(generator().matrix(), x, y);
    benchmark::DoNotOptimize(y.data());
  }
  st.SetItemsProcessed(st.iterations() * generator().matrix().nonZeros());
}

void BM_hermitize_serial(benchmark::State& st) {
  auto m = state();
  for (auto _ : st) {
    kernels::hermitize_serial(m, 100);
    benchmark::DoNotOptimize(m.data());
  }
}

void BM_hermitize_omp(benchmark::State& st) {
  kernels::set_threads(static_cast<int>(st.range(0)));
  auto m = state();
  for (auto _ : st) {
    kernels::hermitize_omp(m, 100);
    benchmark::DoNotOptimize(m.data());
  }
}

void BM_wigner_serial(benchmark::State& st) {
  const QOperator rho = combined_state();
  for (auto _ : st) benchmark::DoNotOptimize(wigner_serial(rho, PhaseSpaceGrid{}));
}

void BM_wigner_omp(benchmark::State& st) {
  kernels::set_threads(static_cast<int>(st.range(0)));
  const QOperator rho = combined_state();
  for (auto _ : st) benchmark::DoNotOptimize(wigner(rho, PhaseSpaceGrid{}));
}

}  // namespace

BENCHMARK(BM_spmv_serial);
BENCHMARK(BM_spmv_omp)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime();
BENCHMARK(BM_hermitize_serial);
BENCHMARK(BM_hermitize_omp)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();
BENCHMARK(BM_wigner_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_wigner_omp)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
