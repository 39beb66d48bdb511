#include "starsim/grover.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "starsim/protocols.hpp"

namespace starsim {

namespace {

std::uint64_t marked_index(const std::string& marked) {
    std::uint64_t idx = 0;
    for (char c : marked) idx = (idx << 1) | (c == '1' ? 1 : 0);
    return idx;
}

}  // namespace

void GroverSpec::validate() const {
    if (num_qubits < 2) throw std::invalid_argument("GroverSpec: need N >= 2");
    if (static_cast<int>(marked.size()) != num_qubits) {
        throw std::invalid_argument("GroverSpec: marked string length must equal N");
    }
    for (char c : marked) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("GroverSpec: marked string must be binary");
        }
    }
    if (layers < 0) throw std::invalid_argument("GroverSpec: negative layer count");
}

int optimal_iterations(int num_qubits) {
    if (num_qubits < 2) throw std::invalid_argument("optimal_iterations: need N >= 2");
    const double r = std::floor(std::numbers::pi / 4.0 * std::sqrt(std::pow(2.0, num_qubits)));
    return std::max(1, static_cast<int>(r));
}

GroverResult run_monolithic_grover(const GroverSpec& spec) {
    spec.validate();
    const int n = spec.num_qubits;
    if (n > kMaxQubits) throw std::invalid_argument("run_monolithic_grover: cap exceeded");
    const int layers = spec.layers > 0 ? spec.layers : optimal_iterations(n);

    StateVector psi = new_state(n, 0);
    std::vector<int> all(n);
    for (int q = 0; q < n; ++q) all[q] = q;

    auto h_all = [&] {
        for (int q : all) apply_gate(psi, GateOp::h(q));
    };
    auto x_where = [&](bool flip_marked_zeroes) {
        for (int q : all) {
            if (!flip_marked_zeroes || spec.marked[q] == '0') apply_gate(psi, GateOp::x(q));
        }
    };

    h_all();
    for (int layer = 0; layer < layers; ++layer) {
        // Oracle: MCZ conjugated by X on the qubits where the marked string
        // has a 0, flipping the phase of exactly |marked>.
        x_where(true);
        apply_gate(psi, GateOp::mcz(all));
        x_where(true);
        // Diffuser: inversion about the mean.
        h_all();
        x_where(false);
        apply_gate(psi, GateOp::mcz(all));
        x_where(false);
        h_all();
    }

    GroverResult result;
    result.layers_used = layers;
    result.outcome_distribution.resize(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        result.outcome_distribution[i] = std::norm(psi[i]);
    }
    result.success_probability = result.outcome_distribution[marked_index(spec.marked)];
    result.cost.notes = "monolithic-grover";
    if (n >= 3) result.cost.cx_depth = 2L * layers * monolithic_mcz_depth(n);
    return result;
}

StarTopology grover_topology(const PartitionPlan& plan) {
    plan.validate();
    StarTopology topo;
    for (int c : plan.per_node) topo.nodes.push_back({c, 1});
    topo.router_qubits = plan.node_count;
    return topo;
}

GroverResult run_distributed_grover(const GroverSpec& spec, Network& net) {
    spec.validate();
    spec.partition.validate();
    const int n = spec.num_qubits;
    const int k = spec.partition.node_count;
    if (spec.partition.total_data_qubits != n) {
        throw std::invalid_argument("run_distributed_grover: partition does not cover N qubits");
    }
    if (net.node_count() != k) {
        throw std::invalid_argument("run_distributed_grover: network has the wrong node count");
    }
    std::vector<std::vector<QubitAddress>> per_node(k);
    for (int node = 0; node < k; ++node) {
        if (net.topology().nodes[node].data_qubits != spec.partition.per_node[node]) {
            throw std::invalid_argument("run_distributed_grover: undersized network node");
        }
        for (int i = 0; i < spec.partition.per_node[node]; ++i) {
            per_node[node].push_back(net.data_qubit(node, i));
        }
    }
    const int layers = spec.layers > 0 ? spec.layers : optimal_iterations(n);
    const auto before = net.counters();

    // Local single-qubit conjugations run on the owning nodes; only the MCZ
    // rounds are collective.
    auto h_all = [&] {
        for (int q = 0; q < n; ++q) net.apply(GateOp::h(q));
    };
    auto x_where = [&](bool flip_marked_zeroes) {
        for (int q = 0; q < n; ++q) {
            if (!flip_marked_zeroes || spec.marked[q] == '0') net.apply(GateOp::x(q));
        }
    };
    auto collective_mcz = [&] { distributed_mcz(net, spec.partition, per_node); };

    h_all();
    for (int layer = 0; layer < layers; ++layer) {
        x_where(true);
        collective_mcz();
        x_where(true);
        h_all();
        x_where(false);
        collective_mcz();
        x_where(false);
        h_all();
    }

    if (net.branches().size() != 1) {
        throw std::logic_error("run_distributed_grover: expected a single seeded branch");
    }
    GroverResult result;
    result.layers_used = layers;
    result.outcome_distribution = net.data_distribution(net.branches()[0]);
    result.success_probability = result.outcome_distribution[marked_index(spec.marked)];
    result.cost = [&] {
        const auto after = net.counters();
        CostReport r;
        r.ebits = after.consumed - before.consumed;
        r.ebits_created = after.created - before.created;
        r.classical_bits = after.classical_bits - before.classical_bits;
        for (int i = 0; i < kMessageTagCount; ++i) {
            r.bits_by_tag[i] = after.bits_by_tag[i] - before.bits_by_tag[i];
        }
        r.notes = "distributed-grover";
        if (n >= 3 && k >= 2) r.cx_depth = 2L * layers * distributed_mcz_depth(n, k);
        return r;
    }();
    return result;
}

}  // namespace starsim
