#include "starsim/verify.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "starsim/grover.hpp"
#include "starsim/protocols.hpp"

namespace starsim {

namespace {

constexpr double kPassFidelity = 1.0 - 1e-10;

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Runs the case builders on a small worker pool; results keep their order
// and a throwing case turns into a failed result instead of taking the
// whole run down.
std::vector<CaseResult> run_cases(std::vector<std::function<CaseResult()>> builders,
                                  int threads) {
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    threads = std::min<int>(threads, static_cast<int>(builders.size()));
    std::vector<CaseResult> results(builders.size());
    auto run_one = [&](std::size_t i) {
        try {
            results[i] = builders[i]();
        } catch (const std::exception& e) {
            results[i].id = "case-" + std::to_string(i);
            results[i].pass = false;
            results[i].detail = std::string("exception: ") + e.what();
        }
    };
    if (threads <= 1) {
        for (std::size_t i = 0; i < builders.size(); ++i) run_one(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= builders.size()) return;
            run_one(i);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return results;
}

// Enumeration gets partitioned into scripted prefixes once the frontier
// would outgrow ~64 branches of a large state.
int prefix_bits_for(int total_qubits, int measurements) {
    if (total_qubits < 16) return 0;
    return std::max(0, measurements - 6);
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

std::string describe_topology(const StarTopology& topo) {
    std::ostringstream os;
    os << "nodes=";
    for (std::size_t i = 0; i < topo.nodes.size(); ++i) {
        if (i) os << "|";
        os << topo.nodes[i].data_qubits << "+" << topo.nodes[i].comm_qubits << "c";
    }
    os << " router=" << topo.router_qubits;
    return os.str();
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

StateVector random_state(int num_qubits, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto uniform = [&] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
    const std::size_t dim = std::size_t{1} << num_qubits;
    std::vector<Amp> amps(dim);
    for (auto& a : amps) {
        // Box-Muller: two independent N(0,1) draws per amplitude.
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        a = Amp{r * std::cos(2.0 * std::numbers::pi * u2),
                r * std::sin(2.0 * std::numbers::pi * u2)};
    }
    StateVector psi(num_qubits, std::move(amps));
    psi.renormalize();
    return psi;
}

BranchScan scan_branches(const std::function<Network(const RunPolicy&)>& make_net,
                         const std::function<void(Network&)>& protocol,
                         const std::function<double(const Network&, const NetBranch&)>& leaf_score,
                         int prefix_bits) {
    BranchScan scan;
    scan.min_score = 1.0;
    const long prefixes = 1L << prefix_bits;
    for (long p = 0; p < prefixes; ++p) {
        RunPolicy policy = RunPolicy::enumerate_all();
        if (prefix_bits > 0) {
            std::vector<int> script(prefix_bits);
            for (int i = 0; i < prefix_bits; ++i) script[i] = static_cast<int>((p >> i) & 1);
            policy = RunPolicy::scripted(std::move(script));
        }
        Network net = make_net(policy);
        protocol(net);
        for (const auto& branch : net.branches()) {
            scan.leaves += 1;
            scan.probability_sum += branch.weight;
            const double score = leaf_score(net, branch);
            if (scan.leaves == 1 || score < scan.min_score) {
                scan.min_score = score;
                scan.worst_path.clear();
                for (std::int8_t bit : branch.bits) {
                    scan.worst_path.push_back(bit ? '1' : '0');
                }
            }
        }
        scan.counters = net.counters();
    }
    return scan;
}

bool SuiteReport::all_pass() const {
    for (const auto& c : cases) {
        if (!c.pass) return false;
    }
    return true;
}

double SuiteReport::min_fidelity() const {
    double m = 1.0;
    for (const auto& c : cases) m = std::min(m, c.min_fidelity);
    return m;
}

SuiteReport verify_mcz(const VerifyOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport report;
    report.suite = "mcz";

    std::vector<std::function<CaseResult()>> builders;
    for (int n = 3; n <= opts.max_n; ++n) {
        for (int k = 2; k <= std::min(opts.max_k, n); ++k) {
            for (int s = 0; s < opts.states_per_case; ++s) {
                builders.push_back([n, k, s, &opts] {
                    const PartitionPlan plan = PartitionPlan::balanced(n, k);
                    const StarTopology topo = grover_topology(plan);
                    const std::uint64_t case_seed =
                        mix_seed(opts.seed, (static_cast<std::uint64_t>(n) << 20) +
                                                (static_cast<std::uint64_t>(k) << 10) + s);
                    const StateVector input = random_state(n, case_seed);
                    StateVector ref = input;
                    std::vector<int> all(n);
                    for (int q = 0; q < n; ++q) all[q] = q;
                    apply_gate(ref, GateOp::mcz(all));

                    auto make_net = [&](const RunPolicy& policy) {
                        Network net(topo, policy);
                        net.set_data_state(input);
                        return net;
                    };
                    auto protocol = [&](Network& net) {
                        std::vector<std::vector<QubitAddress>> per_node(k);
                        for (int node = 0; node < k; ++node) {
                            for (int i = 0; i < plan.per_node[node]; ++i) {
                                per_node[node].push_back(net.data_qubit(node, i));
                            }
                        }
                        distributed_mcz(net, plan, per_node);
                    };
                    auto score = [&](const Network& net, const NetBranch& b) {
                        return net.fidelity_with_data_state(b, ref);
                    };
                    const BranchScan scan = scan_branches(
                        make_net, protocol, score, prefix_bits_for(topo.total_qubits(), 2 * k));

                    CaseResult r;
                    r.topology_desc = describe_topology(topo);
                    std::ostringstream id;
                    id << "mcz/N=" << n << "/k=" << k << "/state=" << s;
                    r.id = id.str();
                    r.branches = scan.leaves;
                    r.min_fidelity = scan.min_score;
                    r.ebits = scan.counters.consumed;
                    r.expected_ebits = k;
                    r.classical_bits = scan.counters.classical_bits;
                    r.pass = scan.min_score >= kPassFidelity && scan.counters.consumed == k &&
                             scan.counters.created == k && scan.counters.classical_bits == 2L * k &&
                             std::abs(scan.probability_sum - 1.0) < kNormTolerance;
                    r.detail = "prob_sum=" + format_double(scan.probability_sum);
                    if (!r.pass) r.detail += " worst_branch=" + scan.worst_path;
                    return r;
                });
            }
        }
    }
    report.cases = run_cases(std::move(builders), opts.threads);
    report.elapsed_seconds = elapsed_since(t0);
    return report;
}

SuiteReport verify_diagonal(const VerifyOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport report;
    report.suite = "diagonal";

    std::vector<std::function<CaseResult()>> builders;
    for (int c = 0; c < opts.diagonal_cases; ++c) {
        builders.push_back([c, &opts] {
            const std::uint64_t case_seed = mix_seed(opts.seed ^ 0xd1a60ULL, c);
            std::mt19937_64 rng(case_seed);
            auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

            const int arity = 2 + static_cast<int>(rng() % 3);          // 2..4
            const int max_k = std::min(std::min(4, arity), opts.max_k);
            const int k = max_k < 2 ? 2 : 2 + static_cast<int>(rng() % (max_k - 1));
            // Random balanced-ish split of the qubits over k nodes.
            const PartitionPlan plan = PartitionPlan::balanced(arity, k);
            StarTopology topo;
            for (int K : plan.per_node) topo.nodes.push_back({K, 1});
            topo.router_qubits = arity;

            std::vector<double> phases(std::size_t{1} << arity);
            for (auto& p : phases) p = 2.0 * std::numbers::pi * uniform();
            const DiagonalGate gate(arity, phases);

            const StateVector input = random_state(arity, mix_seed(case_seed, 1));
            StateVector ref = input;
            std::vector<int> all(arity);
            for (int q = 0; q < arity; ++q) all[q] = q;
            apply_gate(ref, GateOp::diagonal(gate, all));

            auto make_net = [&](const RunPolicy& policy) {
                Network net(topo, policy);
                net.set_data_state(input);
                return net;
            };
            auto protocol = [&](Network& net) {
                std::vector<QubitAddress> qubits;
                for (int node = 0; node < k; ++node) {
                    for (int i = 0; i < plan.per_node[node]; ++i) {
                        qubits.push_back(net.data_qubit(node, i));
                    }
                }
                remote_diagonal(net, qubits, gate);
            };
            auto score = [&](const Network& net, const NetBranch& b) {
                return net.fidelity_with_data_state(b, ref);
            };
            const BranchScan scan = scan_branches(
                make_net, protocol, score, prefix_bits_for(topo.total_qubits(), 2 * arity));

            CaseResult r;
            r.topology_desc = describe_topology(topo);
            std::ostringstream id;
            id << "diagonal/case=" << c << "/m=" << arity << "/k=" << k;
            r.id = id.str();
            r.branches = scan.leaves;
            r.min_fidelity = scan.min_score;
            r.ebits = scan.counters.consumed;
            r.expected_ebits = arity;
            r.classical_bits = scan.counters.classical_bits;
            // Ebits land inside the general diagonal-gate bound [k, N].
            r.pass = scan.min_score >= kPassFidelity && scan.counters.consumed == arity &&
                     scan.counters.consumed >= k && scan.counters.consumed <= arity &&
                     std::abs(scan.probability_sum - 1.0) < kNormTolerance;
            r.detail = "prob_sum=" + format_double(scan.probability_sum);
            if (!r.pass) r.detail += " worst_branch=" + scan.worst_path;
            return r;
        });
    }
    report.cases = run_cases(std::move(builders), opts.threads);
    report.elapsed_seconds = elapsed_since(t0);
    return report;
}

SuiteReport verify_swap(const VerifyOptions& opts) {
    (void)opts;
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport report;
    report.suite = "swap";

    StarTopology topo;
    topo.nodes = {{0, 1}, {0, 1}};
    topo.router_qubits = 2;

    // Reference: |Phi+> between the two comm qubits (globals 0 and 1 of 4).
    StateVector ref = new_state(4, 0);
    apply_gate(ref, GateOp::h(0));
    apply_gate(ref, GateOp::cnot(0, 1));

    auto make_net = [&](const RunPolicy& policy) { return Network(topo, policy); };
    auto protocol = [](Network& net) {
        const auto ca = net.comm_qubit(0);
        const auto cb = net.comm_qubit(1);
        const auto r0 = net.router_qubit(0);
        const auto r1 = net.router_qubit(1);
        net.create_bell_pair(ca, r0);
        net.create_bell_pair(r1, cb);
        entanglement_swap(net, {ca, r0}, {r1, cb});
    };
    auto score = [&](const Network&, const NetBranch& b) {
        return fidelity_up_to_global_phase(b.state, ref);
    };
    const BranchScan scan = scan_branches(make_net, protocol, score, 0);

    CaseResult r;
    r.topology_desc = describe_topology(topo);
    r.id = "swap/all-bsm-branches";
    r.branches = scan.leaves;
    r.min_fidelity = scan.min_score;
    r.ebits = scan.counters.consumed;
    r.expected_ebits = 2;
    r.classical_bits = scan.counters.classical_bits;
    r.pass = scan.leaves == 4 && scan.min_score >= 1.0 - 1e-12 && scan.counters.consumed == 2 &&
             scan.counters.created == 3 &&
             scan.counters.bits_by_tag[static_cast<int>(MessageTag::kBsmCorrection)] == 2 &&
             std::abs(scan.probability_sum - 1.0) < kNormTolerance;
    // The star-collective route reaches the same two nodes for k ebits; with
    // two nodes both tallies come to 2 per end-to-end operation.
    r.detail = "swap_ebits=2 star_collective(k=2)=2";
    report.cases.push_back(r);
    report.elapsed_seconds = elapsed_since(t0);
    return report;
}

namespace {

CaseResult cat_roundtrip_case(int members, std::uint64_t seed) {
    StarTopology topo;
    topo.nodes = {{2, 1}};
    topo.router_qubits = members;
    // Two data qubits, entangled at random; the fan-out source is qubit 0.
    const StateVector input = random_state(2, seed);

    auto make_net = [&](const RunPolicy& policy) {
        Network net(topo, policy);
        net.set_data_state(input);
        return net;
    };
    auto protocol = [&](Network& net) {
        std::vector<QubitAddress> targets;
        for (int i = 0; i < members; ++i) targets.push_back(net.router_qubit(i));
        CatGroup group = cat_entangler(net, net.data_qubit(0, 0), targets);
        cat_disentangler(net, group);
    };
    auto score = [&](const Network& net, const NetBranch& b) {
        return net.fidelity_with_data_state(b, input);
    };
    const BranchScan scan = scan_branches(make_net, protocol, score, 0);

    CaseResult r;
    r.topology_desc = describe_topology(topo);
    r.id = "protocols/cat-roundtrip/members=" + std::to_string(members);
    r.branches = scan.leaves;
    r.min_fidelity = scan.min_score;
    r.ebits = scan.counters.consumed;
    r.expected_ebits = members;
    r.classical_bits = scan.counters.classical_bits;
    r.pass = scan.min_score >= kPassFidelity && scan.counters.consumed == members &&
             scan.counters.classical_bits == members + 1 &&
             std::abs(scan.probability_sum - 1.0) < kNormTolerance;
    return r;
}

CaseResult teleport_case(std::uint64_t seed) {
    // Teleport a random single-qubit state from node 0 to node 1 over an
    // end-to-end pair produced by entanglement swapping.
    StarTopology topo;
    topo.nodes = {{1, 1}, {0, 1}};
    topo.router_qubits = 2;
    const StateVector input = random_state(1, seed);

    // Expected global state: the input moved onto node 1's comm qubit.
    // Layout: data d0, comm c0, comm c1, routers r0 r1.
    StateVector ref = new_state(5, 0);
    ref[0] = input[0];
    ref[std::size_t{1} << 2] = input[1];  // c1 is global qubit 2 of 5

    auto make_net = [&](const RunPolicy& policy) {
        Network net(topo, policy);
        net.set_data_state(input);
        return net;
    };
    auto protocol = [](Network& net) {
        const auto c0 = net.comm_qubit(0);
        const auto c1 = net.comm_qubit(1);
        const auto r0 = net.router_qubit(0);
        const auto r1 = net.router_qubit(1);
        net.create_bell_pair(c0, r0);
        net.create_bell_pair(r1, c1);
        const OpenPair end_to_end = entanglement_swap(net, {c0, r0}, {r1, c1});
        teleport_state(net, net.data_qubit(0, 0), end_to_end);
    };
    auto score = [&](const Network&, const NetBranch& b) {
        return fidelity_up_to_global_phase(b.state, ref);
    };
    const BranchScan scan = scan_branches(make_net, protocol, score, 0);

    CaseResult r;
    r.topology_desc = describe_topology(topo);
    r.id = "protocols/teleport-after-swap";
    r.branches = scan.leaves;
    r.min_fidelity = scan.min_score;
    r.ebits = scan.counters.consumed;
    r.expected_ebits = 3;  // two raw pairs + the swapped end-to-end pair
    r.classical_bits = scan.counters.classical_bits;
    r.pass = scan.leaves == 16 && scan.min_score >= kPassFidelity &&
             scan.counters.consumed == 3 &&
             std::abs(scan.probability_sum - 1.0) < kNormTolerance;
    return r;
}

CaseResult two_qubit_case(const std::string& name, const TwoQubitDecomposition& dec,
                          const std::function<void(StateVector&)>& reference_gate,
                          std::uint64_t seed) {
    StarTopology topo;
    topo.nodes = {{1, 1}, {1, 1}};
    topo.router_qubits = 2;
    const StateVector input = random_state(2, seed);
    StateVector ref = input;
    reference_gate(ref);

    auto make_net = [&](const RunPolicy& policy) {
        Network net(topo, policy);
        net.set_data_state(input);
        return net;
    };
    auto protocol = [&](Network& net) {
        remote_two_qubit(net, net.data_qubit(0, 0), net.data_qubit(1, 0), dec);
    };
    auto score = [&](const Network& net, const NetBranch& b) {
        return net.fidelity_with_data_state(b, ref);
    };
    const BranchScan scan = scan_branches(make_net, protocol, score, 0);

    CaseResult r;
    r.topology_desc = describe_topology(topo);
    r.id = "protocols/two-qubit/" + name;
    r.branches = scan.leaves;
    r.min_fidelity = scan.min_score;
    r.ebits = scan.counters.consumed;
    r.expected_ebits = 2;
    r.classical_bits = scan.counters.classical_bits;
    r.pass = scan.min_score >= kPassFidelity && scan.counters.consumed == 2 &&
             std::abs(scan.probability_sum - 1.0) < kNormTolerance;
    return r;
}

CaseResult lump_neutrality_case(std::uint64_t seed) {
    StarTopology topo;
    topo.nodes = {{1, 1}, {1, 1}};
    topo.router_qubits = 2;
    std::mt19937_64 rng(seed);
    auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<double> phases(4);
    for (auto& p : phases) p = 2.0 * std::numbers::pi * uniform();
    const DiagonalGate gate(2, phases);
    const StateVector input = random_state(2, mix_seed(seed, 7));
    StateVector ref = input;
    apply_gate(ref, GateOp::diagonal(gate, {0, 1}));

    auto make_net = [&](const RunPolicy& policy) {
        Network net(topo, policy);
        net.set_data_state(input);
        return net;
    };
    auto score = [&](const Network& net, const NetBranch& b) {
        return net.fidelity_with_data_state(b, ref);
    };

    auto lump_protocol = [&](Network& net) {
        std::vector<CatRequest> requests = {{net.data_qubit(0, 0), {net.router_qubit(0)}},
                                            {net.data_qubit(1, 0), {net.router_qubit(1)}}};
        std::vector<GateOp> gates = {GateOp::diagonal(
            gate, {net.global_index(net.router_qubit(0)), net.global_index(net.router_qubit(1))})};
        lump_execute(net, requests, gates);
    };
    auto diag_protocol = [&](Network& net) {
        remote_diagonal(net, {net.data_qubit(0, 0), net.data_qubit(1, 0)}, gate);
    };
    const BranchScan lump_scan = scan_branches(make_net, lump_protocol, score, 0);
    const BranchScan diag_scan = scan_branches(make_net, diag_protocol, score, 0);

    CaseResult r;
    r.topology_desc = describe_topology(topo);
    r.id = "protocols/lump-neutrality";
    r.branches = lump_scan.leaves;
    r.min_fidelity = std::min(lump_scan.min_score, diag_scan.min_score);
    r.ebits = lump_scan.counters.consumed;
    r.expected_ebits = 2;
    r.classical_bits = lump_scan.counters.classical_bits;
    r.pass = lump_scan.min_score >= kPassFidelity && diag_scan.min_score >= kPassFidelity &&
             lump_scan.counters.consumed == diag_scan.counters.consumed &&
             lump_scan.counters.classical_bits == diag_scan.counters.classical_bits &&
             lump_scan.leaves == diag_scan.leaves;
    r.detail = "lump and remote_diagonal deltas match";
    return r;
}

CaseResult lump_phase_case(double t1, double t2, double t3) {
    StarTopology topo;
    topo.nodes = {{1, 1}};
    topo.router_qubits = 1;
    StateVector input = new_state(1, 0);
    apply_gate(input, GateOp::h(0));  // |+>

    auto make_net = [&](const RunPolicy& policy) {
        Network net(topo, policy);
        net.set_data_state(input);
        return net;
    };
    auto protocol = [&](Network& net) {
        const int r0 = net.global_index(net.router_qubit(0));
        std::vector<CatRequest> requests = {{net.data_qubit(0, 0), {net.router_qubit(0)}}};
        std::vector<GateOp> gates = {GateOp::rz(t1, r0), GateOp::rz(t2, r0), GateOp::rz(t3, r0)};
        lump_execute(net, requests, gates);
    };
    // Score: 1 - |relative phase error| against theta1+theta2+theta3.
    auto score = [&](const Network&, const NetBranch& b) {
        const Amp a0 = b.state[0];
        const Amp a1 = b.state[b.state.size() >> 1];  // data qubit is the MSB
        const double got = std::arg(a1 / a0);
        double err = std::remainder(got - (t1 + t2 + t3), 2.0 * std::numbers::pi);
        return 1.0 - std::abs(err);
    };
    const BranchScan scan = scan_branches(make_net, protocol, score, 0);

    CaseResult r;
    r.topology_desc = describe_topology(topo);
    r.id = "protocols/lump-phase-accumulation";
    r.branches = scan.leaves;
    r.min_fidelity = scan.min_score;
    r.ebits = scan.counters.consumed;
    r.expected_ebits = 1;
    r.classical_bits = scan.counters.classical_bits;
    r.pass = scan.min_score >= kPassFidelity && scan.counters.consumed == 1 &&
             scan.counters.classical_bits == 2;
    r.detail = "one fan-out/fan-in round, three Rz lumped";
    return r;
}

}  // namespace

SuiteReport verify_protocols(const VerifyOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport report;
    report.suite = "protocols";

    std::vector<std::function<CaseResult()>> builders;
    for (int members = 1; members <= 3; ++members) {
        builders.push_back(
            [members, &opts] { return cat_roundtrip_case(members, mix_seed(opts.seed, members)); });
    }
    builders.push_back([&opts] { return teleport_case(mix_seed(opts.seed, 101)); });

    builders.push_back([&opts] {
        TwoQubitDecomposition dec;
        dec.d = DiagonalGate::cz();
        return two_qubit_case("cz", dec, [](StateVector& s) { apply_gate(s, GateOp::cz(0, 1)); },
                              mix_seed(opts.seed, 201));
    });
    builders.push_back([&opts] {
        TwoQubitDecomposition dec;
        dec.v2 = Mat2::hadamard();
        dec.w2 = Mat2::hadamard();
        dec.d = DiagonalGate::cz();
        return two_qubit_case("cnot", dec,
                              [](StateVector& s) { apply_gate(s, GateOp::cnot(0, 1)); },
                              mix_seed(opts.seed, 202));
    });
    builders.push_back([&opts] {
        const double theta = std::numbers::pi / 2.0;
        TwoQubitDecomposition dec;
        dec.d = DiagonalGate::rzz(theta);
        return two_qubit_case("rzz", dec,
                              [theta](StateVector& s) { apply_gate(s, GateOp::rzz(theta, 0, 1)); },
                              mix_seed(opts.seed, 203));
    });
    builders.push_back([&opts] { return lump_neutrality_case(mix_seed(opts.seed, 301)); });
    builders.push_back([] { return lump_phase_case(0.3, 1.1, -0.7); });

    report.cases = run_cases(std::move(builders), opts.threads);
    report.elapsed_seconds = elapsed_since(t0);
    return report;
}

std::vector<SuiteReport> verify_all(const VerifyOptions& opts) {
    return {verify_protocols(opts), verify_mcz(opts), verify_diagonal(opts), verify_swap(opts)};
}

CorrectionStats correction_frequency(int n, int k, long runs, std::uint64_t seed) {
    const PartitionPlan plan = PartitionPlan::balanced(n, k);
    const StarTopology topo = grover_topology(plan);
    CorrectionStats stats;
    stats.runs = runs;
    stats.fired_per_node.assign(k, 0);
    for (long run = 0; run < runs; ++run) {
        Network net(topo, RunPolicy::seeded(mix_seed(seed, run)));
        net.set_data_state(random_state(n, mix_seed(seed ^ 0xabcdULL, run)));
        std::vector<std::vector<QubitAddress>> per_node(k);
        for (int node = 0; node < k; ++node) {
            for (int i = 0; i < plan.per_node[node]; ++i) {
                per_node[node].push_back(net.data_qubit(node, i));
            }
        }
        distributed_mcz(net, plan, per_node);
        // The trailing per-node MCZ fires iff the fan-in bit sent to that
        // node was 1.
        for (const auto& entry : net.log().entries) {
            if (entry.tag != MessageTag::kFanInCorrection) continue;
            stats.fired_per_node[entry.dest_node] += net.bit_value(entry.bit);
        }
    }
    return stats;
}

}  // namespace starsim
