// Grover search over a single marked bitstring, in a monolithic form (the
// ground truth) and a distributed form whose oracle and diffuser MCZ gates
// run through the star network.
#pragma once

#include <string>
#include <vector>

#include "starsim/cost_model.hpp"
#include "starsim/network.hpp"

namespace starsim {

struct GroverSpec {
    int num_qubits = 0;
    std::string marked;          // bitstring, marked[0] = qubit 0
    int layers = 0;              // 0 = optimal_iterations(num_qubits)
    PartitionPlan partition;

    void validate() const;
};

struct GroverResult {
    std::vector<double> outcome_distribution;  // exact, indexed by basis state
    double success_probability = 0.0;
    CostReport cost;
    int layers_used = 0;
};

// floor(pi/4 * sqrt(2^N)), at least 1.
int optimal_iterations(int num_qubits);

GroverResult run_monolithic_grover(const GroverSpec& spec);

// Network must provide ceil(N/k) data qubits per node (balanced plan), one
// comm qubit per node and k router qubits: N + 2k qubits in total.
GroverResult run_distributed_grover(const GroverSpec& spec, Network& net);

// Topology matching a partition plan: (per_node[i] data, 1 comm) per node
// plus a k-qubit router.
StarTopology grover_topology(const PartitionPlan& plan);

}  // namespace starsim
