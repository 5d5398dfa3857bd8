// Serial reference vs OpenMP kernels.

#include "tcaudit/kernels.hpp"
#include "tcaudit/tavis_cummings.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace tcaudit;

namespace {

std::vector<kernels::Complex> random_entries(std::size_t count)
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    std::vector<kernels::Complex> v(count);
    for (auto& z : v)
        z = {uniform(rng), uniform(rng)};
    return v;
}

template <bool Parallel>
void matmul(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_entries(n * n), b = random_entries(n * n);
    std::vector<kernels::Complex> c(n * n);
    for (auto _ : state) {
        if constexpr (Parallel)
            kernels::matmul_parallel(a, b, c, n);
        else
            kernels::matmul_serial(a, b, c, n);
        benchmark::DoNotOptimize(c.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(n * n * n));
}

template <bool Parallel>
void kron(benchmark::State& state)
{
    const auto na = static_cast<std::size_t>(state.range(0));
    const std::size_t nb = 7;
    const auto a = random_entries(na * na), b = random_entries(nb * nb);
    std::vector<kernels::Complex> out(na * na * nb * nb);
    for (auto _ : state) {
        if constexpr (Parallel)
            kernels::kron_parallel(a, na, b, nb, out);
        else
            kernels::kron_serial(a, na, b, nb, out);
        benchmark::DoNotOptimize(out.data());
    }
}

std::vector<tc::SectorKey> many_sectors()
{
    std::vector<tc::SectorKey> keys;
    for (int two_j = 0; two_j <= 20; ++two_j)
        for (int total = 0; total <= 200; total += 10)
            keys.push_back({two_j, 2 * total - two_j});
    return keys;
}

template <bool Parallel>
void sector_spectra(benchmark::State& state)
{
    const auto keys = many_sectors();
    const tc::ModelParams params{1.0, 0.1, {}};
    for (auto _ : state) {
        auto out = Parallel ? tc::sector_spectra(params, keys) : tc::sector_spectra_serial(params, keys);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(keys.size()));
}

} // namespace

BENCHMARK(matmul<false>)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(matmul<true>)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(kron<false>)->Arg(16)->Arg(49);
BENCHMARK(kron<true>)->Arg(16)->Arg(49);
BENCHMARK(sector_spectra<false>);
BENCHMARK(sector_spectra<true>);

BENCHMARK_MAIN();
