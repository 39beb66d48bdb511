// Oracle-equivalence verification suites: every protocol is run under full
// measurement-branch enumeration and each final branch is compared against
// the monolithic simulation of the same operation.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "starsim/network.hpp"
#include "starsim/state_vector.hpp"

namespace starsim {

// splitmix64; used to derive independent per-case seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt);

// Normalized state with i.i.d. complex Gaussian amplitudes, deterministic in
// the seed and portable across platforms.
StateVector random_state(int num_qubits, std::uint64_t seed);

struct BranchScan {
    long leaves = 0;
    double min_score = 1.0;       // leaf_score minimum over all branches
    double probability_sum = 0.0; // branch weights; sums to 1 over all branches
    std::string worst_path;       // measurement outcomes of the worst branch
    LedgerCounters counters;
};

// Runs `protocol` under branch enumeration and folds `leaf_score` over every
// final branch. When prefix_bits > 0 the enumeration is partitioned into
// 2^prefix_bits scripted runs (bit i of the prefix forces measurement i),
// bounding the number of simultaneously live branches.
BranchScan scan_branches(const std::function<Network(const RunPolicy&)>& make_net,
                         const std::function<void(Network&)>& protocol,
                         const std::function<double(const Network&, const NetBranch&)>& leaf_score,
                         int prefix_bits = 0);

struct VerifyOptions {
    int max_n = 8;
    int max_k = 4;
    int states_per_case = 20;
    int diagonal_cases = 50;
    std::uint64_t seed = 42;
    int threads = 0;  // 0 = hardware concurrency
};

struct CaseResult {
    std::string id;
    bool pass = false;
    long branches = 0;
    double min_fidelity = 0.0;
    long ebits = 0;
    long expected_ebits = 0;
    long classical_bits = 0;
    std::string topology_desc;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CaseResult> cases;
    double elapsed_seconds = 0.0;

    bool all_pass() const;
    double min_fidelity() const;
};

// Distributed MCZ vs monolithic MCZ over every (N, k), N <= max_n,
// k <= min(max_k, N), states_per_case random inputs, every branch.
SuiteReport verify_mcz(const VerifyOptions& opts);

// Random diagonal gates (arity 2..4, uniform phases) across 2..4 nodes.
SuiteReport verify_diagonal(const VerifyOptions& opts);

// Entanglement swapping: all four BSM branches vs |Phi+>.
SuiteReport verify_swap(const VerifyOptions& opts);

// Cat-entangler/disentangler round trips, teleportation, decomposed remote
// two-qubit gates, lumping neutrality and phase accumulation.
SuiteReport verify_protocols(const VerifyOptions& opts);

std::vector<SuiteReport> verify_all(const VerifyOptions& opts);

// Seeded distributed-MCZ runs counting how often each node's trailing
// classically controlled MCZ fired (expected half of the time).
struct CorrectionStats {
    long runs = 0;
    std::vector<long> fired_per_node;
};
CorrectionStats correction_frequency(int n, int k, long runs, std::uint64_t seed);

}  // namespace starsim
