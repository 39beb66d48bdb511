#include "starsim/network.hpp"

#include <algorithm>
#include <cmath>

namespace starsim {

int StarTopology::total_data() const {
    int n = 0;
    for (const auto& node : nodes) n += node.data_qubits;
    return n;
}

int StarTopology::total_comm() const {
    int n = 0;
    for (const auto& node : nodes) n += node.comm_qubits;
    return n;
}

int StarTopology::total_qubits() const { return total_data() + total_comm() + router_qubits; }

PartitionPlan PartitionPlan::balanced(int total_data_qubits, int node_count) {
    if (node_count < 1 || total_data_qubits < node_count) {
        throw std::invalid_argument("PartitionPlan: need 1 <= k <= N");
    }
    PartitionPlan plan;
    plan.total_data_qubits = total_data_qubits;
    plan.node_count = node_count;
    const int base = total_data_qubits / node_count;
    const int extra = total_data_qubits % node_count;
    for (int i = 0; i < node_count; ++i) {
        plan.per_node.push_back(base + (i < extra ? 1 : 0));
    }
    return plan;
}

void PartitionPlan::validate() const {
    if (node_count < 1 || static_cast<int>(per_node.size()) != node_count) {
        throw std::invalid_argument("PartitionPlan: node count mismatch");
    }
    int sum = 0, lo = per_node[0], hi = per_node[0];
    for (int c : per_node) {
        if (c < 1) throw std::invalid_argument("PartitionPlan: empty node");
        sum += c;
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    if (sum != total_data_qubits) throw std::invalid_argument("PartitionPlan: sizes do not sum to N");
    if (hi - lo > 1) throw std::invalid_argument("PartitionPlan: split is not balanced");
}

const char* to_string(MessageTag tag) {
    switch (tag) {
        case MessageTag::kFanOutCorrection: return "fan_out";
        case MessageTag::kFanInCorrection: return "fan_in";
        case MessageTag::kBsmCorrection: return "bsm";
        case MessageTag::kTeleportCorrection: return "teleport";
    }
    return "?";
}

Network::Network(StarTopology topology, RunPolicy policy)
    : topology_(std::move(topology)), policy_(std::move(policy)), rng_(policy_.seed) {
    if (topology_.nodes.empty()) {
        throw std::invalid_argument("Network: need at least one worker node");
    }
    for (const auto& node : topology_.nodes) {
        if (node.data_qubits < 0) throw std::invalid_argument("Network: negative data count");
        if (node.comm_qubits < 1) {
            throw std::invalid_argument("Network: every node needs a communication qubit");
        }
    }
    if (topology_.router_qubits < 0) {
        throw std::invalid_argument("Network: negative router size");
    }
    total_data_ = topology_.total_data();
    total_comm_ = topology_.total_comm();
    total_qubits_ = topology_.total_qubits();
    if (total_qubits_ < 1 || total_qubits_ > kMaxQubits) {
        throw std::invalid_argument("Network: simulator cap exceeded");
    }
    int d = 0, c = 0;
    for (const auto& node : topology_.nodes) {
        data_offset_.push_back(d);
        comm_offset_.push_back(c);
        d += node.data_qubits;
        c += node.comm_qubits;
    }
    NetBranch root;
    root.state = new_state(total_qubits_, 0);
    branches_.push_back(std::move(root));
}

QubitAddress Network::data_qubit(int node, int index) const {
    if (node < 0 || node >= node_count() || index < 0 ||
        index >= topology_.nodes[node].data_qubits) {
        throw std::invalid_argument("data_qubit: bad address");
    }
    return {node, index, QubitRole::kData};
}

QubitAddress Network::comm_qubit(int node, int index) const {
    if (node < 0 || node >= node_count() || index < 0 ||
        index >= topology_.nodes[node].comm_qubits) {
        throw std::invalid_argument("comm_qubit: bad address");
    }
    return {node, index, QubitRole::kCommunication};
}

QubitAddress Network::router_qubit(int index) const {
    if (index < 0 || index >= topology_.router_qubits) {
        throw std::invalid_argument("router_qubit: bad address");
    }
    return {kRouterNode, index, QubitRole::kRouter};
}

int Network::global_index(const QubitAddress& addr) const {
    switch (addr.role) {
        case QubitRole::kData:
            data_qubit(addr.node, addr.index);  // validate
            return data_offset_[addr.node] + addr.index;
        case QubitRole::kCommunication:
            comm_qubit(addr.node, addr.index);
            return total_data_ + comm_offset_[addr.node] + addr.index;
        case QubitRole::kRouter:
            router_qubit(addr.index);
            if (addr.node != kRouterNode) {
                throw std::invalid_argument("global_index: router role off the router node");
            }
            return total_data_ + total_comm_ + addr.index;
    }
    throw std::invalid_argument("global_index: bad role");
}

QubitAddress Network::address_of(int global) const {
    if (global < 0 || global >= total_qubits_) {
        throw std::invalid_argument("address_of: index out of range");
    }
    if (global >= total_data_ + total_comm_) {
        return {kRouterNode, global - total_data_ - total_comm_, QubitRole::kRouter};
    }
    const bool is_comm = global >= total_data_;
    const int local = is_comm ? global - total_data_ : global;
    const auto& offsets = is_comm ? comm_offset_ : data_offset_;
    int node = static_cast<int>(offsets.size()) - 1;
    while (node > 0 && offsets[node] > local) --node;
    return {node, local - offsets[node], is_comm ? QubitRole::kCommunication : QubitRole::kData};
}

StateVector& Network::state() {
    if (branches_.size() != 1) {
        throw std::logic_error("Network::state: run has multiple branches");
    }
    return branches_[0].state;
}

const StateVector& Network::state() const {
    if (branches_.size() != 1) {
        throw std::logic_error("Network::state: run has multiple branches");
    }
    return branches_[0].state;
}

void Network::set_data_state(const StateVector& data) {
    if (data.num_qubits() != total_data_) {
        throw std::invalid_argument("set_data_state: wrong data qubit count");
    }
    const int ancillas = total_qubits_ - total_data_;
    for (auto& branch : branches_) {
        if (std::abs(std::norm(branch.state[0]) - 1.0) > kNormTolerance) {
            throw std::invalid_argument("set_data_state: network is not in |0...0>");
        }
        std::fill(branch.state.amplitudes().begin(), branch.state.amplitudes().end(),
                  Amp{0.0, 0.0});
        for (std::size_t x = 0; x < data.size(); ++x) {
            branch.state[x << ancillas] = data[x];
        }
    }
}

std::vector<double> Network::data_distribution(const NetBranch& branch) const {
    const int ancillas = total_qubits_ - total_data_;
    std::vector<double> dist(std::size_t{1} << total_data_, 0.0);
    for (std::size_t i = 0; i < branch.state.size(); ++i) {
        dist[i >> ancillas] += std::norm(branch.state[i]);
    }
    return dist;
}

double Network::fidelity_with_data_state(const NetBranch& branch, const StateVector& ref) const {
    if (ref.num_qubits() != total_data_) {
        throw std::invalid_argument("fidelity_with_data_state: wrong reference size");
    }
    const int ancillas = total_qubits_ - total_data_;
    Amp overlap{0.0, 0.0};
    for (std::size_t x = 0; x < ref.size(); ++x) {
        overlap += std::conj(ref[x]) * branch.state[x << ancillas];
    }
    return std::norm(overlap);
}

void Network::apply(const GateOp& op) {
    for (auto& branch : branches_) {
        apply_gate(branch.state, op, branch.bits);
    }
}

void Network::apply(const Mat2& u, const QubitAddress& q) {
    const int g = global_index(q);
    for (auto& branch : branches_) {
        apply_single_qubit(branch.state, u, g);
    }
}

double Network::branch_prob_one(const NetBranch& b, int global) const {
    return probability_of_one(b.state, global);
}

BitRef Network::measure(const QubitAddress& q) {
    const int g = global_index(q);
    std::vector<double> p1s;
    p1s.reserve(branches_.size());
    for (const auto& branch : branches_) p1s.push_back(branch_prob_one(branch, g));
    return split_branches(g, p1s);
}

BitRef Network::measure_in_x_basis(const QubitAddress& q) {
    const int g = global_index(q);
    std::vector<double> p1s;
    p1s.reserve(branches_.size());
    for (auto& branch : branches_) p1s.push_back(apply_h_returning_prob_one(branch.state, g));
    return split_branches(g, p1s);
}

BitRef Network::split_branches(int g, const std::vector<double>& p1s) {
    const int slot = bit_count_++;
    const int measure_index = measure_count_++;

    std::vector<NetBranch> next;
    next.reserve(branches_.size());
    for (std::size_t bi = 0; bi < branches_.size(); ++bi) {
        NetBranch& branch = branches_[bi];
        const double p1 = p1s[bi];
        const double prob[2] = {1.0 - p1, p1};

        int forced = -1;
        if (policy_.mode == RunPolicy::Mode::kSeeded) {
            const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
            forced = u < prob[0] ? 0 : 1;
        } else if (policy_.mode == RunPolicy::Mode::kScripted &&
                   measure_index < static_cast<int>(policy_.script.size())) {
            forced = policy_.script[measure_index];
        }

        if (forced >= 0) {
            if (prob[forced] < kProbEpsilon) continue;  // impossible forced branch: prune
            NetBranch child = std::move(branch);
            collapse(child.state, g, forced, prob[forced]);
            if (policy_.mode != RunPolicy::Mode::kSeeded) child.weight *= prob[forced];
            child.bits.push_back(static_cast<std::int8_t>(forced));
            next.push_back(std::move(child));
        } else {
            // Enumerate both nonzero branches, bit 0 first. The bit-0 child
            // is projected out of the parent in a single pass; the bit-1
            // child collapses in the parent's own buffer.
            const bool b0 = prob[0] >= kProbEpsilon;
            const bool b1 = prob[1] >= kProbEpsilon;
            if (b0 && b1) {
                NetBranch child;
                child.weight = branch.weight * prob[0];
                child.bits = branch.bits;
                child.bits.push_back(0);
                std::vector<Amp> amps(branch.state.size());
                const std::size_t step = branch.state.mask_of(g);
                const double inv = 1.0 / std::sqrt(prob[0]);
                const Amp* src = branch.state.amplitudes().data();
                for (std::size_t base = 0; base < amps.size(); base += 2 * step) {
                    for (std::size_t off = 0; off < step; ++off) {
                        amps[base + off] = src[base + off] * inv;
                    }
                }
                child.state = StateVector(branch.state.num_qubits(), std::move(amps));
                next.push_back(std::move(child));
            } else if (b0) {
                NetBranch child = std::move(branch);
                collapse(child.state, g, 0, prob[0]);
                child.weight *= prob[0];
                child.bits.push_back(0);
                next.push_back(std::move(child));
                continue;
            }
            if (b1) {
                NetBranch child = std::move(branch);
                collapse(child.state, g, 1, prob[1]);
                child.weight *= prob[1];
                child.bits.push_back(1);
                next.push_back(std::move(child));
            }
        }
    }
    branches_ = std::move(next);
    return {slot};
}

BitRef Network::xor_of(const std::vector<BitRef>& refs) {
    if (refs.empty()) throw std::invalid_argument("xor_of: empty bit list");
    const int slot = bit_count_++;
    for (auto& branch : branches_) {
        int v = 0;
        for (const auto& r : refs) v ^= bit_value(branch, r);
        branch.bits.push_back(static_cast<std::int8_t>(v));
    }
    return {slot};
}

BitRef Network::constant_bit(int value) {
    if (value != 0 && value != 1) throw std::invalid_argument("constant_bit: value must be 0/1");
    const int slot = bit_count_++;
    for (auto& branch : branches_) branch.bits.push_back(static_cast<std::int8_t>(value));
    return {slot};
}

int Network::bit_value(const BitRef& ref) const {
    if (branches_.size() != 1) {
        throw std::logic_error("bit_value: run has multiple branches");
    }
    return bit_value(branches_[0], ref);
}

int Network::bit_value(const NetBranch& b, const BitRef& ref) const {
    if (!ref.valid() || static_cast<std::size_t>(ref.id) >= b.bits.size() || b.bits[ref.id] < 0) {
        throw std::invalid_argument("bit_value: unset classical bit");
    }
    return b.bits[ref.id];
}

void Network::reset_measured(const QubitAddress& q, const BitRef& outcome) {
    apply(GateOp::x(global_index(q)).conditioned_on(outcome.id));
}

void Network::create_bell_pair(const QubitAddress& a, const QubitAddress& b) {
    const int ga = global_index(a);
    const int gb = global_index(b);
    if (ga == gb) throw std::invalid_argument("create_bell_pair: identical qubits");
    const bool a_router = a.role == QubitRole::kRouter;
    const bool b_router = b.role == QubitRole::kRouter;
    if (a_router == b_router) {
        throw StarViolation(
            "create_bell_pair: exactly one endpoint must be a router qubit "
            "(no direct worker-worker links in a star)");
    }
    for (const auto& branch : branches_) {
        if (branch_prob_one(branch, ga) > kNormTolerance ||
            branch_prob_one(branch, gb) > kNormTolerance) {
            throw NotFresh("create_bell_pair: endpoint qubit is not in |0>");
        }
    }
    apply(GateOp::h(ga));
    apply(GateOp::cnot(ga, gb));
    ledger_.created += 1;
    ledger_.open_pairs.push_back({a, b});
}

namespace {
bool same_pair(const OpenPair& p, const QubitAddress& a, const QubitAddress& b) {
    return (p.a == a && p.b == b) || (p.a == b && p.b == a);
}
}  // namespace

void Network::consume_pair(const QubitAddress& a, const QubitAddress& b) {
    auto it = std::find_if(ledger_.open_pairs.begin(), ledger_.open_pairs.end(),
                           [&](const OpenPair& p) { return same_pair(p, a, b); });
    if (it == ledger_.open_pairs.end()) {
        throw std::invalid_argument("consume_pair: unknown pair");
    }
    ledger_.open_pairs.erase(it);
    ledger_.consumed += 1;
}

bool Network::pair_open(const QubitAddress& a, const QubitAddress& b) const {
    return std::any_of(ledger_.open_pairs.begin(), ledger_.open_pairs.end(),
                       [&](const OpenPair& p) { return same_pair(p, a, b); });
}

OpenPair Network::record_open_pair(const QubitAddress& a, const QubitAddress& b) {
    ledger_.created += 1;
    ledger_.open_pairs.push_back({a, b});
    return {a, b};
}

std::vector<QubitAddress> Network::free_router_qubits(int count) const {
    std::vector<QubitAddress> out;
    for (int i = 0; i < topology_.router_qubits && static_cast<int>(out.size()) < count; ++i) {
        const QubitAddress q = router_qubit(i);
        const bool in_pair =
            std::any_of(ledger_.open_pairs.begin(), ledger_.open_pairs.end(),
                        [&](const OpenPair& p) { return p.a == q || p.b == q; });
        if (!in_pair && !in_open_group(q)) out.push_back(q);
    }
    if (static_cast<int>(out.size()) < count) {
        throw RouterCapacityExceeded("router capacity exceeded: need " + std::to_string(count) +
                                     " free router qubits");
    }
    return out;
}

void Network::send_classical(int source_node, int dest_node, const BitRef& bit, MessageTag tag) {
    if (source_node == dest_node) {
        throw std::invalid_argument("send_classical: source and destination coincide");
    }
    for (const auto& branch : branches_) bit_value(branch, bit);  // must be set everywhere
    log_.entries.push_back({source_node, dest_node, bit, tag});
}

LedgerCounters Network::counters() const {
    LedgerCounters c;
    c.created = ledger_.created;
    c.consumed = ledger_.consumed;
    c.classical_bits = static_cast<long>(log_.entries.size());
    for (const auto& e : log_.entries) c.bits_by_tag[static_cast<int>(e.tag)] += 1;
    return c;
}

int Network::register_group(const std::vector<QubitAddress>& members, const QubitAddress& source) {
    groups_.push_back({source, members, true});
    return static_cast<int>(groups_.size()) - 1;
}

void Network::close_group(int group_id) {
    if (group_id < 0 || group_id >= static_cast<int>(groups_.size()) || !groups_[group_id].open) {
        throw std::invalid_argument("close_group: group is not open");
    }
    groups_[group_id].open = false;
}

bool Network::group_open(int group_id) const {
    return group_id >= 0 && group_id < static_cast<int>(groups_.size()) && groups_[group_id].open;
}

bool Network::in_open_group(const QubitAddress& q) const {
    for (const auto& g : groups_) {
        if (!g.open) continue;
        if (g.source == q) return true;
        if (std::find(g.members.begin(), g.members.end(), q) != g.members.end()) return true;
    }
    return false;
}

Network build_star(const StarTopology& topology, RunPolicy policy) {
    return Network(topology, std::move(policy));
}

CostReport ledger_report(const Network& net) {
    const LedgerCounters c = net.counters();
    CostReport report;
    report.ebits = c.consumed;
    report.ebits_created = c.created;
    report.classical_bits = c.classical_bits;
    report.bits_by_tag = c.bits_by_tag;
    report.notes = "ledger";
    return report;
}

}  // namespace starsim
