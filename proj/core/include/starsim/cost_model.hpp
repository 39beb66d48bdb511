// Closed-form resource formulas (ebit tallies and CNOT-depth estimates) and
// the depth-ratio sweep behind the scaling plots.
#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

namespace starsim {

struct CostReport {
    long ebits = 0;          // consumed
    long ebits_created = 0;
    long classical_bits = 0;
    std::array<long, 4> bits_by_tag{};  // indexed by MessageTag
    long cx_depth = 0;       // CNOT-depth estimate, 0 when no model applies
    std::string notes;
};

// CNOT depth of a monolithic N-qubit MCZ: 6N - 12. Requires N >= 3.
long monolithic_mcz_depth(int n);

// CNOT depth of the distributed MCZ over k nodes: 12*ceil(N/k) + 6k - 30.
// The formula decomposes as two per-node layers of 6(ceil(N/k)+1) - 12 each,
// plus the k-qubit router layer of 6k - 12, minus a shared overlap of 6.
// Requires k >= 2 and 3 <= N, k <= N (which keeps the count non-negative).
long distributed_mcz_depth(int n, int k);

// Integer k in {floor(sqrt(2N)), ceil(sqrt(2N))} minimizing the distributed
// depth; ties resolve to the smaller k. The real-valued optimum sqrt(2N)
// need not round to the integer argmin, so both neighbors are compared.
int optimal_k(int n);

// Ebit tallies per strategy.
struct TeledataCollective { int n; };        // 4N
struct TelegateCollective { int n; };        // 2N
struct StarCollective { int k; };            // k
struct DenseMesh { int k; int m; };          // C(k,2) * M^2
struct DenseStar { int k; int m; };          // k * M
struct DiagonalBounds { int k; int n; };     // [k, N]
struct GroverLayer { int k; };               // 2k

using EbitStrategy = std::variant<TeledataCollective, TelegateCollective, StarCollective,
                                  DenseMesh, DenseStar, DiagonalBounds, GroverLayer>;

// Inclusive range; min == max for every exact strategy, [k, N] for
// DiagonalBounds.
struct EbitRange {
    long min = 0;
    long max = 0;
    bool exact() const { return min == max; }
};

EbitRange ebit_cost(const EbitStrategy& strategy);

struct SweepRow {
    int n = 0;
    int k = 0;
    long monolithic_depth = 0;
    long distributed_depth = 0;
    double ratio = 0.0;
    int optimal_k = 0;
    double speedup = 0.0;  // monolithic / distributed at optimal k
};

// One row per (N, k) with 2 <= k <= min(k_max, N).
std::vector<SweepRow> sweep_fig9(const std::vector<int>& n_list, int k_max);

}  // namespace starsim
