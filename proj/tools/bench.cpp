#include "algres/report.hpp"
#include "../tests/generators.hpp"

#include <benchmark/benchmark.h>

using namespace algres;

namespace {

Mat random_matrix(std::size_t rows, std::size_t cols) {
    algres::testing::Gen gen(1);
    return gen.matrix(rows, cols);
}

void BM_rref_serial(benchmark::State& s) {
    Mat m = random_matrix(static_cast<std::size_t>(s.range(0)), static_cast<std::size_t>(s.range(0)));
    for (auto _ : s) benchmark::DoNotOptimize(rref_serial(m, m.front().size()));
}

void BM_rref_parallel(benchmark::State& s) {
    Mat m = random_matrix(static_cast<std::size_t>(s.range(0)), static_cast<std::size_t>(s.range(0)));
    for (auto _ : s) benchmark::DoNotOptimize(rref_parallel(m, m.front().size()));
}

SymplecticScene u7_class3_scene() {
    auto ctx = catalog("U7");
    const auto& c = ctx->record->find("3");
    return {c.n, ClassInstance{ctx->record.get(), &c, 1, sample_moduli(c, c.variants.front())}.scene_branches(), c.label};
}

void BM_lt_search_serial(benchmark::State& s) {
    auto scene = u7_class3_scene();
    for (auto _ : s) benchmark::DoNotOptimize(lt_search_serial(scene.branches, scene.n));
}

void BM_lt_search_parallel(benchmark::State& s) {
    auto scene = u7_class3_scene();
    for (auto _ : s) benchmark::DoNotOptimize(lt_search_parallel(scene.branches, scene.n));
}

void BM_verify_cells(benchmark::State& s) {
    auto ctx = catalog("U8");
    TableOptions o;
    o.parallel = s.range(0) != 0;
    for (auto _ : s) benchmark::DoNotOptimize(family_tables(*ctx, o));
}

} // namespace

BENCHMARK(BM_rref_serial)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rref_parallel)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_lt_search_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_lt_search_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_cells)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
