#include <benchmark/benchmark.h>

#include "qghost/campaign.hpp"
#include "qghost/kronecker.hpp"
#include "qghost/lift.hpp"

using namespace qghost;

namespace {

Mat random_mat(const Field& f, std::size_t r, std::size_t c, Rng& rng) {
    Mat m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.element(f);
    return m;
}

void BM_Rref(benchmark::State& state) {
    const Field f = Field::make(static_cast<unsigned>(state.range(1)));
    Rng rng(1);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Mat m = random_mat(f, n, n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(rref(m));
}
BENCHMARK(BM_Rref)->Args({32, 1})->Args({128, 1})->Args({32, 2})->Args({128, 2})->Args({64, 8});

void BM_Decompose(benchmark::State& state) {
    const Field f = Field::make(static_cast<unsigned>(state.range(1)));
    Rng rng(2);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const auto rel = LinearRelation::make(n, row_space(random_mat(f, n, 2 * n, rng)));
    for (auto _ : state) benchmark::DoNotOptimize(decompose(rel));
}
BENCHMARK(BM_Decompose)->Args({6, 1})->Args({6, 2})->Args({16, 1});

void BM_IsGhost(benchmark::State& state) {
    const TrialInstance inst = sample_trial(CampaignConfig{}, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(is_ghost(inst.triple.f1));
}
BENCHMARK(BM_IsGhost)->Arg(0)->Arg(1);

void BM_BuildLift(benchmark::State& state) {
    const TrialInstance inst = sample_trial(CampaignConfig{}, static_cast<std::size_t>(state.range(0)));
    const ModMap f = inst.triple.composite();
    const ModMap iota = inst.iota ? *inst.iota : injective_embedding(f.source()).iota;
    for (auto _ : state) benchmark::DoNotOptimize(build_lift(f, iota));
}
BENCHMARK(BM_BuildLift)->Arg(0)->Arg(1);

void BM_Campaign(benchmark::State& state) {
    CampaignConfig cfg;
    cfg.trials = 20;
    cfg.jobs = 1;
    for (auto _ : state) benchmark::DoNotOptimize(verify_theorem(cfg));
}
BENCHMARK(BM_Campaign)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
