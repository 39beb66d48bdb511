#include "starsim/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace starsim {

namespace {
long ceil_div(long a, long b) { return (a + b - 1) / b; }
}  // namespace

long monolithic_mcz_depth(int n) {
    if (n < 3) throw std::invalid_argument("monolithic_mcz_depth: need N >= 3");
    return 6L * n - 12;
}

long distributed_mcz_depth(int n, int k) {
    if (k < 2 || n < 3 || k > n) {
        throw std::invalid_argument("distributed_mcz_depth: need k >= 2 and 3 <= N, k <= N");
    }
    return 12L * ceil_div(n, k) + 6L * k - 30;
}

int optimal_k(int n) {
    if (n < 3) throw std::invalid_argument("optimal_k: need N >= 3");
    const double root = std::sqrt(2.0 * n);
    int lo = static_cast<int>(std::floor(root));
    int hi = static_cast<int>(std::ceil(root));
    lo = std::max(2, std::min(lo, n));
    hi = std::max(2, std::min(hi, n));
    if (lo == hi) return lo;
    return distributed_mcz_depth(n, lo) <= distributed_mcz_depth(n, hi) ? lo : hi;
}

EbitRange ebit_cost(const EbitStrategy& strategy) {
    struct Visitor {
        EbitRange operator()(const TeledataCollective& s) const {
            require(s.n >= 1, "TeledataCollective: N >= 1");
            return exact(4L * s.n);
        }
        EbitRange operator()(const TelegateCollective& s) const {
            require(s.n >= 1, "TelegateCollective: N >= 1");
            return exact(2L * s.n);
        }
        EbitRange operator()(const StarCollective& s) const {
            require(s.k >= 1, "StarCollective: k >= 1");
            return exact(s.k);
        }
        EbitRange operator()(const DenseMesh& s) const {
            require(s.k >= 2 && s.m >= 1, "DenseMesh: k >= 2, M >= 1");
            return exact(static_cast<long>(s.k) * (s.k - 1) / 2 * s.m * s.m);
        }
        EbitRange operator()(const DenseStar& s) const {
            require(s.k >= 1 && s.m >= 1, "DenseStar: k >= 1, M >= 1");
            return exact(static_cast<long>(s.k) * s.m);
        }
        EbitRange operator()(const DiagonalBounds& s) const {
            require(s.k >= 1 && s.n >= s.k, "DiagonalBounds: 1 <= k <= N");
            return {s.k, s.n};
        }
        EbitRange operator()(const GroverLayer& s) const {
            require(s.k >= 1, "GroverLayer: k >= 1");
            return exact(2L * s.k);
        }

        static void require(bool ok, const char* what) {
            if (!ok) throw std::invalid_argument(std::string("ebit_cost: ") + what);
        }
        static EbitRange exact(long v) { return {v, v}; }
    };
    return std::visit(Visitor{}, strategy);
}

std::vector<SweepRow> sweep_fig9(const std::vector<int>& n_list, int k_max) {
    if (k_max < 2) throw std::invalid_argument("sweep_fig9: need k_max >= 2");
    std::vector<SweepRow> rows;
    for (int n : n_list) {
        if (n < 3) throw std::invalid_argument("sweep_fig9: need N >= 3");
        const long mono = monolithic_mcz_depth(n);
        const int k_opt = optimal_k(n);
        const double speedup =
            static_cast<double>(mono) / static_cast<double>(distributed_mcz_depth(n, k_opt));
        for (int k = 2; k <= std::min(k_max, n); ++k) {
            const long dist = distributed_mcz_depth(n, k);
            rows.push_back({n, k, mono, dist,
                            static_cast<double>(dist) / static_cast<double>(mono), k_opt,
                            speedup});
        }
    }
    return rows;
}

}  // namespace starsim
