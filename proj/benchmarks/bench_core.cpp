#include <benchmark/benchmark.h>

#include "fcs/catalog.hpp"
#include "fcs/certify.hpp"

namespace {

fcs::CanonicalSystem make_aklt() {
  return fcs::canonicalize(fcs::example_system("aklt"));
}

void BM_Canonicalize(benchmark::State& state) {
  auto sys = fcs::example_system("aklt");
  for (auto _ : state) benchmark::DoNotOptimize(fcs::canonicalize(sys));
}
BENCHMARK(BM_Canonicalize);

void BM_SpectralReport(benchmark::State& state) {
  auto csys = make_aklt();
  auto top = fcs::build_transfer(csys);
  for (auto _ : state) benchmark::DoNotOptimize(fcs::spectral_report(top));
}
BENCHMARK(BM_SpectralReport);

void BM_ReducedDensity(benchmark::State& state) {
  auto csys = make_aklt();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        fcs::reduced_density(csys, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ReducedDensity)->Arg(2)->Arg(3)->Arg(4);

void BM_SplitBound(benchmark::State& state) {
  auto csys = make_aklt();
  auto mod = fcs::modular_data(csys);
  auto dual = fcs::dual_system(csys, mod);
  for (auto _ : state)
    benchmark::DoNotOptimize(fcs::split_bound_check(
        csys, dual, static_cast<int>(state.range(0)), 6));
}
BENCHMARK(BM_SplitBound)->Arg(1)->Arg(2);

void BM_FullReport(benchmark::State& state) {
  auto csys = make_aklt();
  for (auto _ : state) benchmark::DoNotOptimize(fcs::full_report(csys));
}
BENCHMARK(BM_FullReport);

}  // namespace

BENCHMARK_MAIN();
