#include "qlwb/schubert.hpp"
#include "qlwb/workbench.hpp"

#include <benchmark/benchmark.h>

using namespace qlwb;

static void BM_StructureConstants(benchmark::State& st) {
    const int k = static_cast<int>(st.range(0)), n = static_cast<int>(st.range(1));
    const bool parallel = st.range(2) != 0;
    for (auto _ : st) benchmark::DoNotOptimize(structure_constants(k, n, parallel));
    st.SetLabel(parallel ? "parallel" : "serial");
}
BENCHMARK(BM_StructureConstants)
    ->Args({2, 7, 0})
    ->Args({2, 7, 1})
    ->Args({3, 7, 0})
    ->Args({3, 7, 1})
    ->Args({3, 8, 0})
    ->Args({3, 8, 1})
    ->Unit(benchmark::kMillisecond);

static void BM_CheckAll(benchmark::State& st) {
    Catalog cat(load_catalog(default_catalog_dir()));
    const bool parallel = st.range(0) != 0;
    for (auto _ : st) benchmark::DoNotOptimize(check_all(cat, parallel));
    st.SetLabel(parallel ? "parallel" : "serial");
}
BENCHMARK(BM_CheckAll)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
