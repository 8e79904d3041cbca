#include <benchmark/benchmark.h>

#include "millsbounds/analysis.hpp"
#include "millsbounds/grid_kernels.hpp"

namespace {

using mills::kernels::Exec;

std::vector<double> grid(std::size_t n) {
    return mills::analysis::grid_points({1e-3, 10.0, n, mills::analysis::Spacing::Log});
}

template <Exec E>
void BM_UpperTailGrid(benchmark::State& state) {
    const auto xs = grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(mills::kernels::upper_tail_grid(xs, E));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Exec E>
void BM_ErrorMatrix(benchmark::State& state) {
    const auto xs = grid(static_cast<std::size_t>(state.range(0)));
    const auto bounds = mills::all_bounds(12);
    for (auto _ : state) benchmark::DoNotOptimize(mills::kernels::error_matrix(bounds, xs, E));
    state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<std::int64_t>(bounds.size()));
}

}  // namespace

BENCHMARK(BM_UpperTailGrid<Exec::Serial>)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UpperTailGrid<Exec::Parallel>)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ErrorMatrix<Exec::Serial>)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ErrorMatrix<Exec::Parallel>)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
