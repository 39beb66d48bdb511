#include "starsim/protocols.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace starsim {

namespace {

// Ledger/log deltas accumulated by one protocol call.
CostReport delta_since(const Network& net, const LedgerCounters& before, std::string notes,
                       long cx_depth = 0) {
    const LedgerCounters after = net.counters();
    CostReport r;
    r.ebits = after.consumed - before.consumed;
    r.ebits_created = after.created - before.created;
    r.classical_bits = after.classical_bits - before.classical_bits;
    for (int i = 0; i < kMessageTagCount; ++i) {
        r.bits_by_tag[i] = after.bits_by_tag[i] - before.bits_by_tag[i];
    }
    r.cx_depth = cx_depth;
    r.notes = std::move(notes);
    return r;
}

void require_role(const QubitAddress& q, QubitRole role, const char* what) {
    if (q.role != role) throw std::invalid_argument(what);
}

// Z on a single qubit, MCZ on two or more. The per-node corrections and
// local collective gates degenerate to plain Z/CZ on one-qubit registers.
GateOp z_or_mcz(std::vector<int> targets) {
    if (targets.size() == 1) return GateOp::z(targets[0]);
    return GateOp::mcz(std::move(targets));
}

// Fan-out of one "virtual control" onto a router qubit: the local collective
// gate computes it into the comm qubit (an MCZ over controls + comm qubit,
// H-conjugated on the comm qubit, i.e. a multi-controlled X), the comm qubit
// is measured, and the router qubit is patched with a classically controlled
// X. For a single control this is exactly the basic cat-entangler step.
BitRef fan_out_onto_router(Network& net, const std::vector<int>& control_globals, int node,
                           const QubitAddress& router_target) {
    const QubitAddress comm = net.comm_qubit(node);
    net.create_bell_pair(comm, router_target);
    const int gc = net.global_index(comm);
    net.apply(GateOp::h(gc));
    std::vector<int> collective = control_globals;
    collective.push_back(gc);
    net.apply(GateOp::mcz(std::move(collective)));  // >= 2 targets always
    const BitRef m = net.measure_in_x_basis(comm);
    net.send_classical(node, kRouterNode, m, MessageTag::kFanOutCorrection);
    net.apply(GateOp::x(net.global_index(router_target)).conditioned_on(m.id));
    net.consume_pair(comm, router_target);
    net.reset_measured(comm, m);
    return m;
}

// Fan-in of one router qubit: X-basis measurement plus a classically
// controlled phase correction on the originating register.
BitRef fan_in_from_router(Network& net, const QubitAddress& router_qubit, int node,
                          const GateOp& correction_gate) {
    const BitRef b = net.measure_in_x_basis(router_qubit);
    net.send_classical(kRouterNode, node, b, MessageTag::kFanInCorrection);
    net.apply(correction_gate.conditioned_on(b.id));
    net.reset_measured(router_qubit, b);
    return b;
}

}  // namespace

CatGroup cat_entangler(Network& net, const QubitAddress& source,
                       const std::vector<QubitAddress>& router_targets) {
    if (router_targets.empty()) {
        throw std::invalid_argument("cat_entangler: need at least one router target");
    }
    if (source.role == QubitRole::kRouter) {
        throw std::invalid_argument("cat_entangler: source must live on a worker node");
    }
    if (net.in_open_group(source)) {
        throw std::invalid_argument("cat_entangler: source already in an open cat group");
    }
    std::set<int> distinct;
    for (const auto& t : router_targets) {
        require_role(t, QubitRole::kRouter, "cat_entangler: targets must be router qubits");
        if (net.in_open_group(t)) {
            throw std::invalid_argument("cat_entangler: router target already in use");
        }
        if (!distinct.insert(net.global_index(t)).second) {
            throw std::invalid_argument("cat_entangler: duplicate router target");
        }
    }

    // One Bell pair and one correction per target reproduces the shared
    // GHZ_m resource: after round i the joint state of {source, targets
    // 1..i} has support on |0...0> and |1...1> only.
    const int gs = net.global_index(source);
    for (const auto& target : router_targets) {
        fan_out_onto_router(net, {gs}, source.node, target);
    }

    CatGroup group;
    group.source = source;
    group.members = router_targets;
    group.open = true;
    group.id = net.register_group(router_targets, source);
    return group;
}

void cat_disentangler(Network& net, CatGroup& group) {
    if (!group.open || !net.group_open(group.id)) {
        throw std::invalid_argument("cat_disentangler: group is not open");
    }
    // H + measure every member; a single Z controlled by the mod-2 sum of
    // the outcomes repairs the phase at the source.
    std::vector<BitRef> outcomes;
    for (const auto& member : group.members) {
        outcomes.push_back(net.measure_in_x_basis(member));
    }
    const BitRef parity = outcomes.size() == 1 ? outcomes[0] : net.xor_of(outcomes);
    net.send_classical(kRouterNode, group.source.node, parity, MessageTag::kFanInCorrection);
    net.apply(GateOp::z(net.global_index(group.source)).conditioned_on(parity.id));
    for (std::size_t i = 0; i < group.members.size(); ++i) {
        net.reset_measured(group.members[i], outcomes[i]);
    }
    net.close_group(group.id);
    group.open = false;
}

CostReport remote_diagonal(Network& net, const std::vector<QubitAddress>& data_qubits,
                           const DiagonalGate& gate) {
    if (gate.arity != static_cast<int>(data_qubits.size())) {
        throw std::invalid_argument("remote_diagonal: gate arity must match qubit count");
    }
    const auto before = net.counters();
    const auto routers = net.free_router_qubits(static_cast<int>(data_qubits.size()));

    std::vector<CatGroup> groups;
    groups.reserve(data_qubits.size());
    for (std::size_t i = 0; i < data_qubits.size(); ++i) {
        groups.push_back(cat_entangler(net, data_qubits[i], {routers[i]}));
    }

    std::vector<int> router_globals;
    for (const auto& r : routers) router_globals.push_back(net.global_index(r));
    net.apply(GateOp::diagonal(gate, router_globals));

    for (auto& group : groups) cat_disentangler(net, group);
    return delta_since(net, before, "remote-diagonal");
}

CostReport distributed_mcz(Network& net, const PartitionPlan& plan,
                           const std::vector<std::vector<QubitAddress>>& qubits_per_node) {
    plan.validate();
    if (static_cast<int>(qubits_per_node.size()) != plan.node_count) {
        throw std::invalid_argument("distributed_mcz: plan/node list mismatch");
    }
    std::vector<int> owner_node(plan.node_count);
    std::vector<std::vector<int>> globals(plan.node_count);
    std::set<int> seen;
    for (int i = 0; i < plan.node_count; ++i) {
        const auto& qubits = qubits_per_node[i];
        if (static_cast<int>(qubits.size()) != plan.per_node[i]) {
            throw std::invalid_argument("distributed_mcz: node register size differs from plan");
        }
        for (const auto& q : qubits) {
            require_role(q, QubitRole::kData, "distributed_mcz: operands must be data qubits");
            if (q.node != qubits[0].node) {
                throw std::invalid_argument("distributed_mcz: register spans several nodes");
            }
            if (!seen.insert(net.global_index(q)).second) {
                throw std::invalid_argument("distributed_mcz: duplicate qubit");
            }
            globals[i].push_back(net.global_index(q));
        }
        owner_node[i] = qubits[0].node;
    }
    if (std::set<int>(owner_node.begin(), owner_node.end()).size() != owner_node.size()) {
        throw std::invalid_argument("distributed_mcz: two registers on one node");
    }

    const auto before = net.counters();
    const int k = plan.node_count;

    // Degenerate single-node case: a plain local MCZ, no network involved.
    if (k == 1) {
        net.apply(z_or_mcz(globals[0]));
        return delta_since(net, before, "local-mcz");
    }
    if (plan.total_data_qubits < 2) {
        throw std::invalid_argument("distributed_mcz: need at least 2 qubits");
    }

    const auto routers = net.free_router_qubits(k);

    // Layer 1 (fan-out): per-node collective gate onto the comm qubit, then
    // measurement + classically controlled X on the router side.
    for (int i = 0; i < k; ++i) {
        fan_out_onto_router(net, globals[i], owner_node[i], routers[i]);
    }

    // Layer 2: k-qubit MCZ between the fan-out qubits in the router.
    std::vector<int> router_globals;
    for (const auto& r : routers) router_globals.push_back(net.global_index(r));
    net.apply(z_or_mcz(router_globals));

    // Layer 3 (fan-in): X-basis measurements, each controlling the trailing
    // per-node MCZ, which is skipped whenever the outcome is 0.
    for (int i = 0; i < k; ++i) {
        fan_in_from_router(net, routers[i], owner_node[i], z_or_mcz(globals[i]));
    }

    long depth = 0;
    if (plan.total_data_qubits >= 3) depth = distributed_mcz_depth(plan.total_data_qubits, k);
    return delta_since(net, before, "distributed-mcz", depth);
}

CostReport distributed_mcz(Network& net) {
    const int k = net.node_count();
    std::vector<std::vector<QubitAddress>> qubits(k);
    PartitionPlan plan;
    plan.node_count = k;
    plan.total_data_qubits = net.data_qubit_count();
    for (int node = 0; node < k; ++node) {
        const int count = net.topology().nodes[node].data_qubits;
        plan.per_node.push_back(count);
        for (int i = 0; i < count; ++i) qubits[node].push_back(net.data_qubit(node, i));
    }
    return distributed_mcz(net, plan, qubits);
}

CostReport remote_two_qubit(Network& net, const QubitAddress& a, const QubitAddress& b,
                            const TwoQubitDecomposition& dec) {
    for (const Mat2* u : {&dec.v1, &dec.v2, &dec.w1, &dec.w2}) {
        if (!u->is_unitary()) {
            throw std::invalid_argument("remote_two_qubit: local factor is not unitary");
        }
    }
    if (dec.d.arity != 2) {
        throw std::invalid_argument("remote_two_qubit: diagonal part must have arity 2");
    }
    const auto before = net.counters();
    net.apply(dec.w1, a);
    net.apply(dec.w2, b);
    remote_diagonal(net, {a, b}, dec.d);
    net.apply(dec.v1, a);
    net.apply(dec.v2, b);
    return delta_since(net, before, "remote-two-qubit");
}

CostReport lump_execute(Network& net, const std::vector<CatRequest>& requests,
                        const std::vector<GateOp>& router_gates) {
    // Validate everything before touching the state: gates must be diagonal
    // in the computational basis and act only on router qubits fanned out in
    // this round.
    std::set<int> fanned;
    for (const auto& req : requests) {
        if (req.router_targets.empty()) {
            throw std::invalid_argument("lump_execute: request without router targets");
        }
        for (const auto& t : req.router_targets) {
            require_role(t, QubitRole::kRouter, "lump_execute: targets must be router qubits");
            if (!fanned.insert(net.global_index(t)).second) {
                throw std::invalid_argument("lump_execute: router target requested twice");
            }
        }
    }
    for (const auto& gate : router_gates) {
        if (gate.is_classically_controlled() || !gate.is_diagonal_in_computational_basis()) {
            throw std::invalid_argument("lump_execute: gate is not diagonal");
        }
        for (int t : gate.targets) {
            if (!fanned.count(t)) {
                throw std::invalid_argument("lump_execute: gate touches an un-fanned qubit");
            }
        }
    }

    const auto before = net.counters();
    std::vector<CatGroup> groups;
    groups.reserve(requests.size());
    for (const auto& req : requests) {
        groups.push_back(cat_entangler(net, req.source, req.router_targets));
    }
    for (const auto& gate : router_gates) net.apply(gate);
    for (auto& group : groups) cat_disentangler(net, group);
    return delta_since(net, before, "lump-execute");
}

OpenPair entanglement_swap(Network& net, const OpenPair& pair_ab, const OpenPair& pair_bc) {
    auto router_side = [](const OpenPair& p) -> const QubitAddress& {
        if (p.a.role == QubitRole::kRouter && p.b.role != QubitRole::kRouter) return p.a;
        if (p.b.role == QubitRole::kRouter && p.a.role != QubitRole::kRouter) return p.b;
        throw std::invalid_argument("entanglement_swap: pair does not touch the router");
    };
    auto worker_side = [](const OpenPair& p) -> const QubitAddress& {
        return p.a.role == QubitRole::kRouter ? p.b : p.a;
    };
    if (!net.pair_open(pair_ab.a, pair_ab.b) || !net.pair_open(pair_bc.a, pair_bc.b)) {
        throw std::invalid_argument("entanglement_swap: pair is not open");
    }
    const QubitAddress r1 = router_side(pair_ab);
    const QubitAddress r2 = router_side(pair_bc);
    const QubitAddress a_end = worker_side(pair_ab);
    const QubitAddress c_end = worker_side(pair_bc);
    if (net.global_index(r1) == net.global_index(r2)) {
        throw std::invalid_argument("entanglement_swap: pairs share a router qubit");
    }

    // Bell state measurement on the two router halves.
    net.apply(GateOp::cnot(net.global_index(r1), net.global_index(r2)));
    const BitRef m1 = net.measure_in_x_basis(r1);
    const BitRef m2 = net.measure(r2);
    net.send_classical(kRouterNode, c_end.node, m1, MessageTag::kBsmCorrection);
    net.send_classical(kRouterNode, c_end.node, m2, MessageTag::kBsmCorrection);
    net.apply(GateOp::x(net.global_index(c_end)).conditioned_on(m2.id));
    net.apply(GateOp::z(net.global_index(c_end)).conditioned_on(m1.id));

    net.consume_pair(pair_ab.a, pair_ab.b);
    net.consume_pair(pair_bc.a, pair_bc.b);
    net.reset_measured(r1, m1);
    net.reset_measured(r2, m2);
    return net.record_open_pair(a_end, c_end);
}

void teleport_state(Network& net, const QubitAddress& source, const OpenPair& pair) {
    if (!net.pair_open(pair.a, pair.b)) {
        throw std::invalid_argument("teleport_state: pair is not open");
    }
    const bool a_local = pair.a.node == source.node;
    const bool b_local = pair.b.node == source.node;
    if (a_local == b_local) {
        throw std::invalid_argument("teleport_state: pair must have exactly one end at the source node");
    }
    const QubitAddress& near = a_local ? pair.a : pair.b;
    const QubitAddress& far = a_local ? pair.b : pair.a;
    if (near == source) {
        throw std::invalid_argument("teleport_state: source coincides with the pair");
    }

    net.apply(GateOp::cnot(net.global_index(source), net.global_index(near)));
    const BitRef m1 = net.measure_in_x_basis(source);
    const BitRef m2 = net.measure(near);
    net.send_classical(source.node, far.node, m1, MessageTag::kTeleportCorrection);
    net.send_classical(source.node, far.node, m2, MessageTag::kTeleportCorrection);
    net.apply(GateOp::x(net.global_index(far)).conditioned_on(m2.id));
    net.apply(GateOp::z(net.global_index(far)).conditioned_on(m1.id));

    net.consume_pair(pair.a, pair.b);
    net.reset_measured(source, m1);
    net.reset_measured(near, m2);
}

}  // namespace starsim
