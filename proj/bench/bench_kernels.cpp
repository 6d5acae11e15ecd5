#include <benchmark/benchmark.h>

#include "metaspace/kernels.hpp"
#include "metaspace/rng.hpp"

using namespace metaspace;

namespace {

std::string random_words(Rng& rng, int n)
{
    static const char* kWords[] = {"lantern", "river", "quiet", "market", "stone", "garden", "bridge", "echo",
                                   "ember",   "tide",  "hollow", "signal", "meadow", "copper", "drift", "harbor"};
    std::string s;
    for (int i = 0; i < n; ++i) {
        s += kWords[rng.below(16)];
        s += ' ';
    }
    return s;
}

std::vector<std::string> random_names(std::size_t n)
{
    Rng rng(7);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        std::string s;
        const int len = rng.between(4, 16);
        for (int k = 0; k < len; ++k) {
            s += static_cast<char>('a' + rng.below(12));
        }
        names.push_back(std::move(s));
    }
    return names;
}

kernels::Exec exec_of(const benchmark::State& state)
{
    return state.range(1) ? kernels::Exec::Parallel : kernels::Exec::Serial;
}

void BM_ChannelNames(benchmark::State& state)
{
    const auto names = random_names(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::max_pairwise_jaro_winkler(names, exec_of(state)));
    }
}

void BM_CosineMatrix(benchmark::State& state)
{
    Rng rng(11);
    std::vector<TokenBag> bags;
    for (int i = 0; i < state.range(0); ++i) {
        bags.emplace_back(random_words(rng, 30));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::cosine_matrix(bags, bags, exec_of(state)));
    }
}

void BM_HistoryAudit(benchmark::State& state)
{
    Rng rng(13);
    std::vector<kernels::HistoryItem> items(static_cast<std::size_t>(state.range(0)));
    for (auto& item : items) {
        item.candidate = TokenBag(random_words(rng, 25));
        for (int k = 0; k < 3; ++k) {
            item.priors.emplace_back(random_words(rng, 25));
        }
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::history_similarity(items, exec_of(state)));
    }
}

void BM_InterestJaccard(benchmark::State& state)
{
    Rng rng(17);
    std::vector<std::uint32_t> masks(static_cast<std::size_t>(state.range(0)));
    for (auto& m : masks) {
        m = static_cast<std::uint32_t>(rng.below(1u << 25));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::jaccard_scores(masks[0], masks, exec_of(state)));
    }
}

} // namespace

BENCHMARK(BM_ChannelNames)->ArgsProduct({{64, 512}, {0, 1}});
BENCHMARK(BM_CosineMatrix)->ArgsProduct({{64, 256}, {0, 1}});
BENCHMARK(BM_HistoryAudit)->ArgsProduct({{1000, 10000}, {0, 1}});
BENCHMARK(BM_InterestJaccard)->ArgsProduct({{1000, 100000}, {0, 1}});

BENCHMARK_MAIN();
