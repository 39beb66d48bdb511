#include "starsim/gates.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "starsim/verify.hpp"

using namespace starsim;

namespace {

// Random gate drawn from the full vocabulary, for property tests.
GateOp random_gate(int num_qubits, std::mt19937_64& rng) {
    auto pick_targets = [&](int count) {
        std::vector<int> all(num_qubits);
        for (int i = 0; i < num_qubits; ++i) all[i] = i;
        std::shuffle(all.begin(), all.end(), rng);
        return std::vector<int>(all.begin(), all.begin() + count);
    };
    const double theta = 0.1 + static_cast<double>(rng() % 1000) / 200.0;
    switch (rng() % 10) {
        case 0: return GateOp::h(pick_targets(1)[0]);
        case 1: return GateOp::x(pick_targets(1)[0]);
        case 2: return GateOp::z(pick_targets(1)[0]);
        case 3: return GateOp::s(pick_targets(1)[0]);
        case 4: return GateOp::rz(theta, pick_targets(1)[0]);
        case 5: {
            auto t = pick_targets(2);
            return GateOp::rzz(theta, t[0], t[1]);
        }
        case 6: {
            auto t = pick_targets(2);
            return GateOp::cnot(t[0], t[1]);
        }
        case 7: {
            auto t = pick_targets(2);
            return GateOp::cz(t[0], t[1]);
        }
        case 8: {
            const int m = 2 + static_cast<int>(rng() % (num_qubits - 1));
            return GateOp::mcz(pick_targets(m));
        }
        default: {
            const int m = 1 + static_cast<int>(rng() % 3);
            std::vector<double> phases(std::size_t{1} << m);
            for (auto& p : phases) {
                p = 2.0 * std::numbers::pi * static_cast<double>(rng() % 10000) / 10000.0;
            }
            return GateOp::diagonal(DiagonalGate(m, phases), pick_targets(m));
        }
    }
}

// The inverse within the same vocabulary (up to global phase for S).
GateOp inverse_of(const GateOp& op) {
    switch (op.kind) {
        case GateKind::kRz: return GateOp::rz(-op.theta, op.targets[0]);
        case GateKind::kRzz: return GateOp::rzz(-op.theta, op.targets[0], op.targets[1]);
        case GateKind::kDiagonal: {
            DiagonalGate inv = op.diag;
            for (auto& p : inv.phases) p = -p;
            return GateOp::diagonal(inv, op.targets);
        }
        case GateKind::kS: {
            return GateOp::diagonal(DiagonalGate(1, {0.0, -std::numbers::pi / 2.0}),
                                    {op.targets[0]});
        }
        default: return op;  // H, X, Z, CNOT, CZ, MCZ are involutions
    }
}

}  // namespace

TEST(ApplyGate, MczFlipsOnlyAllOnes) {
    StateVector psi = new_state(3, 7);  // |111>
    apply_gate(psi, GateOp::mcz({0, 1, 2}));
    EXPECT_NEAR(psi[7].real(), -1.0, 1e-15);

    StateVector other = new_state(3, 6);  // |110>
    apply_gate(other, GateOp::mcz({0, 1, 2}));
    EXPECT_NEAR(other[6].real(), 1.0, 1e-15);
}

TEST(ApplyGate, DiagonalCzEqualsCz) {
    StateVector a = random_state(2, 3);
    StateVector b = a;
    apply_gate(a, GateOp::diagonal(DiagonalGate::cz(), {0, 1}));
    apply_gate(b, GateOp::cz(0, 1));
    EXPECT_NEAR(fidelity_up_to_global_phase(a, b), 1.0, 1e-12);
    // On |11> the diagonal acts as a plain sign flip.
    StateVector ones = new_state(2, 3);
    apply_gate(ones, GateOp::diagonal(DiagonalGate::cz(), {0, 1}));
    EXPECT_NEAR(ones[3].real(), -1.0, 1e-12);
}

TEST(ApplyGate, RejectsBadTargets) {
    StateVector psi = new_state(2, 0);
    EXPECT_THROW(apply_gate(psi, GateOp::h(2)), std::invalid_argument);
    EXPECT_THROW(apply_gate(psi, GateOp::cnot(0, 0)), std::invalid_argument);
    EXPECT_THROW(apply_gate(psi, GateOp::mcz({0})), std::invalid_argument);
    EXPECT_THROW(apply_gate(psi, GateOp::diagonal(DiagonalGate::cz(), {0})),
                 std::invalid_argument);
}

TEST(ApplyGate, ClassicalControlNeedsARegister) {
    StateVector psi = new_state(1, 0);
    const GateOp op = GateOp::x(0).conditioned_on(0);
    EXPECT_THROW(apply_gate(psi, op), std::invalid_argument);

    BitVector unset = {-1};
    EXPECT_THROW(apply_gate(psi, op, unset), std::invalid_argument);

    BitVector off = {0};
    apply_gate(psi, op, off);
    EXPECT_NEAR(std::abs(psi[0]), 1.0, 1e-15);  // gate skipped

    BitVector on = {1};
    apply_gate(psi, op, on);
    EXPECT_NEAR(std::abs(psi[1]), 1.0, 1e-15);  // gate fired
}

TEST(GateProperties, NormPreservedByRandomGates) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        StateVector psi = random_state(5, mix_seed(1, trial));
        apply_gate(psi, random_gate(5, rng));
        EXPECT_NEAR(psi.norm_sq(), 1.0, 1e-9);
    }
}

TEST(GateProperties, InverseRestoresState) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const StateVector input = random_state(5, mix_seed(2, trial));
        StateVector psi = input;
        const GateOp op = random_gate(5, rng);
        apply_gate(psi, op);
        apply_gate(psi, inverse_of(op));
        EXPECT_GE(fidelity_up_to_global_phase(psi, input), 1.0 - 1e-10);
    }
}

TEST(GateProperties, MczIsTargetOrderInvariant) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const StateVector input = random_state(5, mix_seed(3, trial));
        std::vector<int> targets = {0, 2, 3, 4};
        StateVector a = input;
        apply_gate(a, GateOp::mcz(targets));
        std::shuffle(targets.begin(), targets.end(), rng);
        StateVector b = input;
        apply_gate(b, GateOp::mcz(targets));
        EXPECT_GE(fidelity_up_to_global_phase(a, b), 1.0 - 1e-12);
    }
}

TEST(GateProperties, DiagonalsComposeByPhaseAddition) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> t1(8), t2(8), sum(8);
        for (int i = 0; i < 8; ++i) {
            t1[i] = static_cast<double>(rng() % 1000) / 100.0;
            t2[i] = static_cast<double>(rng() % 1000) / 100.0;
            sum[i] = t1[i] + t2[i];
        }
        StateVector a = random_state(4, mix_seed(4, trial));
        StateVector b = a;
        apply_gate(a, GateOp::diagonal(DiagonalGate(3, t1), {0, 2, 3}));
        apply_gate(a, GateOp::diagonal(DiagonalGate(3, t2), {0, 2, 3}));
        apply_gate(b, GateOp::diagonal(DiagonalGate(3, sum), {0, 2, 3}));
        EXPECT_GE(fidelity_up_to_global_phase(a, b), 1.0 - 1e-12);
    }
}

TEST(Mat2, UnitarityCheck) {
    EXPECT_TRUE(Mat2::identity().is_unitary());
    EXPECT_TRUE(Mat2::hadamard().is_unitary());
    Mat2 bad;
    bad.m00 = Amp{2.0, 0.0};
    EXPECT_FALSE(bad.is_unitary());
}

TEST(Mat2, HadamardMatchesGate) {
    StateVector a = random_state(3, 21);
    StateVector b = a;
    apply_single_qubit(a, Mat2::hadamard(), 1);
    apply_gate(b, GateOp::h(1));
    EXPECT_GE(fidelity_up_to_global_phase(a, b), 1.0 - 1e-12);
}

TEST(DiagonalGate, RejectsMalformedTables) {
    EXPECT_THROW(DiagonalGate(0, {}), std::invalid_argument);
    EXPECT_THROW(DiagonalGate(2, {0.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(DiagonalGate(1, {0.0, std::nan("")}), std::invalid_argument);
}
