#include <benchmark/benchmark.h>

#include "starsim/grover.hpp"
#include "starsim/protocols.hpp"
#include "starsim/verify.hpp"

using namespace starsim;

// One seeded distributed-MCZ round, the building block of every sweep.
static void BM_DistributedMcz(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    const PartitionPlan plan = PartitionPlan::balanced(n, k);
    const StarTopology topo = grover_topology(plan);
    const StateVector input = random_state(n, 11);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        Network net(topo, RunPolicy::seeded(seed++));
        net.set_data_state(input);
        benchmark::DoNotOptimize(distributed_mcz(net).ebits);
    }
}
BENCHMARK(BM_DistributedMcz)->Args({6, 2})->Args({6, 3})->Args({8, 4})->Args({10, 4});

// Full branch enumeration of the same round (4^k leaves).
static void BM_EnumerateMczBranches(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    const PartitionPlan plan = PartitionPlan::balanced(n, k);
    const StarTopology topo = grover_topology(plan);
    const StateVector input = random_state(n, 13);
    for (auto _ : state) {
        Network net(topo, RunPolicy::enumerate_all());
        net.set_data_state(input);
        distributed_mcz(net);
        benchmark::DoNotOptimize(net.branches().size());
    }
}
BENCHMARK(BM_EnumerateMczBranches)->Args({6, 2})->Args({6, 3})->Args({8, 4});

static void BM_DistributedGroverLayer(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    GroverSpec spec;
    spec.num_qubits = n;
    spec.marked = std::string(n, '1');
    spec.layers = 1;
    spec.partition = PartitionPlan::balanced(n, k);
    const StarTopology topo = grover_topology(spec.partition);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        Network net(topo, RunPolicy::seeded(seed++));
        benchmark::DoNotOptimize(run_distributed_grover(spec, net).success_probability);
    }
}
BENCHMARK(BM_DistributedGroverLayer)->Args({4, 2})->Args({6, 3});

BENCHMARK_MAIN();
