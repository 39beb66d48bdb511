// Star network model: k worker nodes around one router, all mapped into a
// single global state vector, with exact accounting of Bell pairs and
// classical messages.
//
// Global qubit layout (big-endian, see state_vector.hpp): all data qubits
// first (node-major), then the communication qubits (node-major), then the
// router qubits. Data qubits therefore occupy the most significant bits,
// which keeps embedding and marginals over data states trivial.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "starsim/cost_model.hpp"
#include "starsim/gates.hpp"
#include "starsim/state_vector.hpp"

namespace starsim {

class StarViolation : public std::runtime_error {
public:
    explicit StarViolation(const std::string& what) : std::runtime_error(what) {}
};

class NotFresh : public std::runtime_error {
public:
    explicit NotFresh(const std::string& what) : std::runtime_error(what) {}
};

class RouterCapacityExceeded : public std::runtime_error {
public:
    explicit RouterCapacityExceeded(const std::string& what) : std::runtime_error(what) {}
};

enum class QubitRole { kData, kCommunication, kRouter };

// Reserved node id of the router.
inline constexpr int kRouterNode = -1;

struct QubitAddress {
    int node = 0;  // kRouterNode for router qubits
    int index = 0;
    QubitRole role = QubitRole::kData;

    friend bool operator==(const QubitAddress& a, const QubitAddress& b) {
        return a.node == b.node && a.index == b.index && a.role == b.role;
    }
};

struct NodeSpec {
    int data_qubits = 0;
    int comm_qubits = 1;
};

struct StarTopology {
    std::vector<NodeSpec> nodes;
    int router_qubits = 0;

    int total_data() const;
    int total_comm() const;
    int total_qubits() const;
};

// Balanced assignment of N logical data qubits to k nodes.
struct PartitionPlan {
    int total_data_qubits = 0;
    int node_count = 0;
    std::vector<int> per_node;

    static PartitionPlan balanced(int total_data_qubits, int node_count);
    void validate() const;
};

enum class MessageTag : int {
    kFanOutCorrection = 0,
    kFanInCorrection = 1,
    kBsmCorrection = 2,
    kTeleportCorrection = 3,
};
inline constexpr int kMessageTagCount = 4;
const char* to_string(MessageTag tag);

// Reference to one classical bit slot. Values live per branch; the slot
// structure is identical across branches of a run.
struct BitRef {
    int id = -1;
    bool valid() const { return id >= 0; }
};

struct OpenPair {
    QubitAddress a, b;
};

struct BellPairLedger {
    long created = 0;
    long consumed = 0;
    std::vector<OpenPair> open_pairs;
};

struct LogEntry {
    int source_node = 0;
    int dest_node = 0;
    BitRef bit;
    MessageTag tag = MessageTag::kFanOutCorrection;
};

struct ClassicalLog {
    std::vector<LogEntry> entries;
};

// How measurement outcomes are decided during a run.
struct RunPolicy {
    enum class Mode { kSeeded, kScripted, kEnumerate };
    Mode mode = Mode::kSeeded;
    std::uint64_t seed = 0;
    std::vector<int> script;  // forced prefix; later measurements enumerate

    static RunPolicy seeded(std::uint64_t seed) { return {Mode::kSeeded, seed, {}}; }
    static RunPolicy enumerate_all() { return {Mode::kEnumerate, 0, {}}; }
    static RunPolicy scripted(std::vector<int> bits) {
        return {Mode::kScripted, 0, std::move(bits)};
    }
};

// One branch of the measurement tree: its state, the classical bits observed
// along its path, and the path probability (1.0 for seeded trajectories).
struct NetBranch {
    double weight = 1.0;
    StateVector state;
    BitVector bits;
};

struct LedgerCounters {
    long created = 0;
    long consumed = 0;
    long classical_bits = 0;
    std::array<long, kMessageTagCount> bits_by_tag{};
};

class Network {
public:
    Network(StarTopology topology, RunPolicy policy = RunPolicy::seeded(0));

    const StarTopology& topology() const { return topology_; }
    int total_qubits() const { return total_qubits_; }
    int data_qubit_count() const { return total_data_; }
    int node_count() const { return static_cast<int>(topology_.nodes.size()); }

    // Address construction (validated) and the address <-> index bijection.
    QubitAddress data_qubit(int node, int index) const;
    QubitAddress comm_qubit(int node, int index = 0) const;
    QubitAddress router_qubit(int index) const;
    int global_index(const QubitAddress& addr) const;
    QubitAddress address_of(int global_index) const;

    // Branch access. Seeded and fully scripted runs keep exactly one branch.
    const std::vector<NetBranch>& branches() const { return branches_; }
    StateVector& state();
    const StateVector& state() const;

    // Installs `data` over the data qubits; every qubit must still be |0>.
    void set_data_state(const StateVector& data);
    // Marginal probability distribution over the data qubits of one branch.
    std::vector<double> data_distribution(const NetBranch& branch) const;
    // |<ref (x) 0...0|branch>|^2 with `ref` living on the data qubits.
    double fidelity_with_data_state(const NetBranch& branch, const StateVector& ref) const;

    // Gate application across all branches. Targets are global indices;
    // classically controlled ops read each branch's own bits.
    void apply(const GateOp& op);
    void apply(const Mat2& u, const QubitAddress& q);

    // Z-measurement of one qubit; appends one classical bit slot per branch
    // and splits/collapses branches according to the run policy.
    BitRef measure(const QubitAddress& q);
    // H then Z-measurement, fused into one pass over each branch.
    BitRef measure_in_x_basis(const QubitAddress& q);
    // Derived classical bits.
    BitRef xor_of(const std::vector<BitRef>& refs);
    BitRef constant_bit(int value);
    int bit_value(const BitRef& ref) const;          // single-branch runs
    int bit_value(const NetBranch& b, const BitRef& ref) const;
    // Classically controlled X restoring a just-measured qubit to |0>.
    void reset_measured(const QubitAddress& q, const BitRef& outcome);

    // Entanglement resources.
    void create_bell_pair(const QubitAddress& a, const QubitAddress& b);
    void consume_pair(const QubitAddress& a, const QubitAddress& b);
    bool pair_open(const QubitAddress& a, const QubitAddress& b) const;
    // Records an already-entangled pair (e.g. produced by swapping).
    OpenPair record_open_pair(const QubitAddress& a, const QubitAddress& b);

    // Router qubits not reserved by open pairs or open cat groups.
    std::vector<QubitAddress> free_router_qubits(int count) const;

    void send_classical(int source_node, int dest_node, const BitRef& bit, MessageTag tag);

    const BellPairLedger& ledger() const { return ledger_; }
    const ClassicalLog& log() const { return log_; }
    LedgerCounters counters() const;

    // Cat-group registry; groups reserve their router-side member qubits.
    int register_group(const std::vector<QubitAddress>& members, const QubitAddress& source);
    void close_group(int group_id);
    bool group_open(int group_id) const;
    bool in_open_group(const QubitAddress& q) const;

private:
    struct GroupRecord {
        QubitAddress source;
        std::vector<QubitAddress> members;
        bool open = false;
    };

    void check_probability_sum() const;
    double branch_prob_one(const NetBranch& b, int global) const;
    BitRef split_branches(int global, const std::vector<double>& p1s);

    StarTopology topology_;
    RunPolicy policy_;
    std::mt19937_64 rng_;
    int total_data_ = 0;
    int total_comm_ = 0;
    int total_qubits_ = 0;
    std::vector<int> data_offset_;  // per node
    std::vector<int> comm_offset_;  // per node
    std::vector<NetBranch> branches_;
    int measure_count_ = 0;
    int bit_count_ = 0;
    BellPairLedger ledger_;
    ClassicalLog log_;
    std::vector<GroupRecord> groups_;
};

// Builds the global |0...0> state over the topology and the address map.
Network build_star(const StarTopology& topology, RunPolicy policy = RunPolicy::seeded(0));

// Exact resource totals of a run so far: ebits created/consumed plus
// classical bits by tag.
CostReport ledger_report(const Network& net);

}  // namespace starsim
