#include "starsim/grover.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "starsim/verify.hpp"

using namespace starsim;

namespace {

GroverSpec make_spec(int n, const std::string& marked, int layers, int k) {
    GroverSpec spec;
    spec.num_qubits = n;
    spec.marked = marked;
    spec.layers = layers;
    spec.partition = PartitionPlan::balanced(n, k);
    return spec;
}

int best_layer_count_by_sweep(int n, const std::string& marked, int max_layers) {
    // Independent check of the iteration formula: brute-force the layer
    // count that maximizes the exact success probability.
    double best = -1.0;
    int best_layers = 0;
    for (int layers = 1; layers <= max_layers; ++layers) {
        const auto res = run_monolithic_grover(make_spec(n, marked, layers, 1));
        if (res.success_probability > best) {
            best = res.success_probability;
            best_layers = layers;
        }
    }
    return best_layers;
}

}  // namespace

TEST(OptimalIterations, MatchesBruteForceSweep) {
    EXPECT_EQ(optimal_iterations(3), 2);
    EXPECT_EQ(best_layer_count_by_sweep(3, "101", 5), 2);
    EXPECT_EQ(optimal_iterations(4), 3);
    EXPECT_EQ(best_layer_count_by_sweep(4, "0110", 6), 3);
    EXPECT_EQ(optimal_iterations(2), 1);
}

TEST(MonolithicGrover, TwoQubitsOneLayerIsExact) {
    const auto res = run_monolithic_grover(make_spec(2, "11", 1, 1));
    EXPECT_NEAR(res.success_probability, 1.0, 1e-12);
    EXPECT_EQ(res.layers_used, 1);
    EXPECT_EQ(res.cost.ebits, 0);
}

TEST(MonolithicGrover, ThreeQubitsTwoLayersMatchesClosedForm) {
    const auto res = run_monolithic_grover(make_spec(3, "101", 2, 1));
    const double theta = std::asin(1.0 / std::sqrt(8.0));
    const double expected = std::pow(std::sin(5.0 * theta), 2.0);  // = 242/256
    EXPECT_NEAR(expected, 0.9453125, 1e-10);
    EXPECT_NEAR(res.success_probability, expected, 1e-6);
}

TEST(MonolithicGrover, ZeroLayersMeansOptimal) {
    const auto res = run_monolithic_grover(make_spec(3, "010", 0, 1));
    EXPECT_EQ(res.layers_used, 2);
}

TEST(MonolithicGrover, DistributionIsNormalized) {
    const auto res = run_monolithic_grover(make_spec(5, "10110", 0, 1));
    double sum = 0.0;
    for (double p : res.outcome_distribution) sum += p;
    EXPECT_NEAR(sum, 1.0, 1e-9);
    EXPECT_EQ(res.outcome_distribution.size(), 32u);
}

TEST(GroverSpec, ValidatesMarkedString) {
    EXPECT_THROW(make_spec(3, "10", 1, 1).validate(), std::invalid_argument);
    EXPECT_THROW(make_spec(3, "1a1", 1, 1).validate(), std::invalid_argument);
    EXPECT_THROW(make_spec(1, "1", 1, 1).validate(), std::invalid_argument);  // N >= 2
}

TEST(DistributedGrover, MatchesMonolithicDistribution) {
    const GroverSpec spec = make_spec(4, "1011", 0, 2);
    const auto mono = run_monolithic_grover(spec);

    Network net(grover_topology(spec.partition), RunPolicy::seeded(42));
    const auto dist = run_distributed_grover(spec, net);

    EXPECT_EQ(dist.layers_used, 3);
    ASSERT_EQ(dist.outcome_distribution.size(), mono.outcome_distribution.size());
    for (std::size_t i = 0; i < dist.outcome_distribution.size(); ++i) {
        EXPECT_NEAR(dist.outcome_distribution[i], mono.outcome_distribution[i], 1e-10);
    }
    EXPECT_EQ(dist.cost.ebits, 12);  // 2k per layer: 2*2*3
    EXPECT_EQ(net.total_qubits(), 4 + 2 * 2);
}

TEST(DistributedGrover, OneLayerThreeNodes) {
    const GroverSpec spec = make_spec(6, "110100", 1, 3);
    const auto mono = run_monolithic_grover(spec);
    Network net(grover_topology(spec.partition), RunPolicy::seeded(7));
    const auto dist = run_distributed_grover(spec, net);
    for (std::size_t i = 0; i < dist.outcome_distribution.size(); ++i) {
        EXPECT_NEAR(dist.outcome_distribution[i], mono.outcome_distribution[i], 1e-10);
    }
    EXPECT_EQ(dist.cost.ebits, 6);
    EXPECT_EQ(net.total_qubits(), 6 + 2 * 3);
}

TEST(DistributedGrover, SuccessProbabilityNearOneAtOptimalLayers) {
    for (int n = 3; n <= 6; ++n) {
        std::string marked;
        for (int q = 0; q < n; ++q) marked.push_back((q * 7 + n) % 3 == 0 ? '1' : '0');
        const GroverSpec spec = make_spec(n, marked, 0, 2);
        Network net(grover_topology(spec.partition), RunPolicy::seeded(11));
        const auto res = run_distributed_grover(spec, net);
        EXPECT_GE(res.success_probability, 1.0 - 2.0 / std::pow(2.0, n)) << "N=" << n;
    }
}

TEST(DistributedGrover, EbitsScaleLinearlyInLayersAndNodes) {
    for (int k = 2; k <= 3; ++k) {
        for (int layers = 1; layers <= 3; ++layers) {
            const GroverSpec spec = make_spec(6, "101010", layers, k);
            Network net(grover_topology(spec.partition), RunPolicy::seeded(5));
            const auto res = run_distributed_grover(spec, net);
            EXPECT_EQ(res.cost.ebits, 2L * k * layers);
            EXPECT_EQ(res.cost.ebits, ebit_cost(GroverLayer{k}).min * layers);
        }
    }
    // A 2-layer, k=2 search consumes 8 ebits in the network ledger.
    const GroverSpec spec = make_spec(4, "1001", 2, 2);
    Network net(grover_topology(spec.partition), RunPolicy::seeded(5));
    run_distributed_grover(spec, net);
    EXPECT_EQ(ledger_report(net).ebits, 8);
}

TEST(DistributedGrover, SingleNodeRunsWithoutEbits) {
    const GroverSpec spec = make_spec(4, "0110", 0, 1);
    Network net(grover_topology(spec.partition), RunPolicy::seeded(3));
    const auto res = run_distributed_grover(spec, net);
    const auto mono = run_monolithic_grover(spec);
    EXPECT_EQ(res.cost.ebits, 0);
    for (std::size_t i = 0; i < res.outcome_distribution.size(); ++i) {
        EXPECT_NEAR(res.outcome_distribution[i], mono.outcome_distribution[i], 1e-10);
    }
}

TEST(DistributedGrover, RejectsUndersizedNetwork) {
    const GroverSpec spec = make_spec(6, "101010", 1, 3);
    StarTopology topo = grover_topology(PartitionPlan::balanced(6, 3));
    topo.nodes[1].data_qubits = 1;  // too small for its 2-qubit share
    Network net(topo, RunPolicy::seeded(1));
    EXPECT_THROW(run_distributed_grover(spec, net), std::invalid_argument);
}
