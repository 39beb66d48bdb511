#include <benchmark/benchmark.h>

#include "starsim/gates.hpp"
#include "starsim/verify.hpp"

using namespace starsim;

static void BM_Hadamard(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    StateVector psi = random_state(n, 1);
    for (auto _ : state) {
        apply_gate(psi, GateOp::h(n / 2));
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * (1LL << n));
}
BENCHMARK(BM_Hadamard)->DenseRange(12, 20, 2);

static void BM_Mcz(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    StateVector psi = random_state(n, 2);
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    for (auto _ : state) {
        apply_gate(psi, GateOp::mcz(all));
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * (1LL << n));
}
BENCHMARK(BM_Mcz)->DenseRange(12, 20, 2);

static void BM_Diagonal(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    StateVector psi = random_state(n, 3);
    std::vector<double> phases(8, 0.5);
    const GateOp op = GateOp::diagonal(DiagonalGate(3, phases), {0, 1, 2});
    for (auto _ : state) {
        apply_gate(psi, op);
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * (1LL << n));
}
BENCHMARK(BM_Diagonal)->DenseRange(12, 20, 2);

static void BM_MeasureProbability(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const StateVector psi = random_state(n, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(probability_of_one(psi, n / 2));
    }
    state.SetItemsProcessed(state.iterations() * (1LL << n));
}
BENCHMARK(BM_MeasureProbability)->DenseRange(12, 20, 2);
