#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "rsec/eval.hpp"
#include "rsec/prm.hpp"
#include "rsec/spanner.hpp"
#include "rsec/sparsify.hpp"

namespace {

using namespace rsec;

const Scenario& easy2d() {
    static const Scenario s = load_scenario(RSEC_SCENARIO_DIR "/easy2d.txt");
    return s;
}

const Roadmap& roadmap(std::size_t n) {
    static std::map<std::size_t, Roadmap> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_prm(easy2d(), BuildConfig{n, ConnectionMode::fixed_k, 18, 0})).first;
    return it->second;
}

void BM_BuildPrm(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_prm(easy2d(), BuildConfig{n, ConnectionMode::fixed_k, 18, 0}));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildPrm)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond)->Complexity();

void BM_Sparsify(benchmark::State& state) {
    const auto& g = roadmap(2000);
    const double drift = static_cast<double>(state.range(0)) / 100.0;
    const auto h = static_cast<Heuristic>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(sparsify(g, easy2d(), SparsifyConfig{drift, h}));
    state.SetLabel(std::string(to_string(h)));
}
BENCHMARK(BM_Sparsify)
    ->ArgsProduct({{1, 4, 16}, {0, 1, 2, 3}})
    ->Unit(benchmark::kMillisecond);

void BM_Spanner(benchmark::State& state) {
    const auto& g = roadmap(2000);
    const double t = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(greedy_spanner(g, SpannerConfig{t}));
}
BENCHMARK(BM_Spanner)->Arg(15)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_ShortestPath(benchmark::State& state) {
    const auto& g = roadmap(2000);
    const auto ids = g.vertex_ids();
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(shortest_path(g, ids[i % ids.size()], ids[(i * 7919 + 13) % ids.size()]));
        ++i;
    }
}
BENCHMARK(BM_ShortestPath)->Unit(benchmark::kMicrosecond);

void BM_LocalPlanner(benchmark::State& state) {
    Rng rng(1);
    std::vector<Configuration> pts;
    for (int i = 0; i < 256; ++i) pts.push_back(easy2d().sample_free(rng));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(easy2d().local_planner(pts[i % 256], pts[(i + 1) % 256]));
        ++i;
    }
}
BENCHMARK(BM_LocalPlanner);

void BM_ConnectivityProbability(benchmark::State& state) {
    const auto& g = roadmap(2000);
    for (auto _ : state) benchmark::DoNotOptimize(connectivity_probability(g, easy2d(), 1000, kDefaultConnectK, 3));
}
BENCHMARK(BM_ConnectivityProbability)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
