// LOCC protocols executed over a star network: cat-entangler/disentangler
// (fan-out/fan-in between nodes), remote diagonal-gate teleportation,
// distributed multi-controlled-Z, decomposed remote two-qubit gates, gate
// lumping, entanglement swapping and state teleportation.
//
// Every protocol is straight-line: classical control enters only through
// classically controlled gates, so the operation sequence is identical on
// every measurement branch and runs unchanged under branch enumeration.
#pragma once

#include <vector>

#include "starsim/cost_model.hpp"
#include "starsim/network.hpp"

namespace starsim {

// An open fan-out: `source` keeps its amplitudes entangled as
// a0|0>|0...0> + a1|1>|1...1> across the router-side `members`.
struct CatGroup {
    int id = -1;
    QubitAddress source;
    std::vector<QubitAddress> members;
    bool open = false;
};

// Fan-out request used by lump_execute.
struct CatRequest {
    QubitAddress source;
    std::vector<QubitAddress> router_targets;
};

// U = (V1 (x) V2) D (W1 (x) W2) with D diagonal in the computational basis.
struct TwoQubitDecomposition {
    Mat2 v1, v2, w1, w2;
    DiagonalGate d;
};

// Expands `source` into a cat-state across the router targets. One ebit and
// one classical bit per target; the comm qubit is measured and reused.
CatGroup cat_entangler(Network& net, const QubitAddress& source,
                       const std::vector<QubitAddress>& router_targets);

// Measures the members out (H + Z-measure each) and applies the single Z
// correction controlled by the mod-2 sum of the outcomes, sent from the
// router as one aggregated bit. Members end in |0> and are freed.
void cat_disentangler(Network& net, CatGroup& group);

// Teleports an arbitrary diagonal gate onto data qubits spread over nodes:
// fan-out each qubit to a router qubit, apply the gate there (the phases
// reach the data register by kickback), fan everything back in.
CostReport remote_diagonal(Network& net, const std::vector<QubitAddress>& data_qubits,
                           const DiagonalGate& gate);

// Three-layer distributed MCZ over the nodes' data qubits. Consumes exactly
// one ebit per participating node; the trailing per-node MCZ corrections are
// classically controlled and fire half of the time.
CostReport distributed_mcz(Network& net, const PartitionPlan& plan,
                           const std::vector<std::vector<QubitAddress>>& qubits_per_node);
// Convenience: all data qubits of every node, balanced plan.
CostReport distributed_mcz(Network& net);

// Remote two-qubit gate via its diagonal decomposition; 2 ebits.
CostReport remote_two_qubit(Network& net, const QubitAddress& a, const QubitAddress& b,
                            const TwoQubitDecomposition& dec);

// Lumping: one fan-out round, an ordered list of diagonal gates applied on
// the fanned router qubits, one fan-in round. Ebits = fanned qubits, however
// many gates are lumped.
CostReport lump_execute(Network& net, const std::vector<CatRequest>& requests,
                        const std::vector<GateOp>& router_gates);

// Bell state measurement at the router fuses a (worker A, router) pair and a
// (router, worker C) pair into an end-to-end (A, C) pair; 2 classical bits.
OpenPair entanglement_swap(Network& net, const OpenPair& pair_ab, const OpenPair& pair_bc);

// Teledata: moves `source`'s amplitude to the far end of an open pair.
void teleport_state(Network& net, const QubitAddress& source, const OpenPair& pair);

}  // namespace starsim
