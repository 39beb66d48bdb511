// Gate vocabulary and application kernels.
#pragma once

#include <cstdint>
#include <vector>

#include "starsim/state_vector.hpp"

namespace starsim {

// A unitary diagonal in the computational basis, parametrized by 2^arity
// phases: diag(e^{i*phases[idx]}). The index substring is read from the
// targets in order, targets[0] being the most significant bit.
struct DiagonalGate {
    int arity = 0;
    std::vector<double> phases;

    DiagonalGate() = default;
    DiagonalGate(int arity, std::vector<double> phases);

    static DiagonalGate cz();                  // [0, 0, 0, pi]
    static DiagonalGate rz(double theta);      // diag(e^{-i t/2}, e^{+i t/2})
    static DiagonalGate rzz(double theta);     // exp(-i t/2 Z(x)Z)
};

enum class GateKind {
    kH,
    kX,
    kZ,
    kS,
    kRz,
    kRzz,
    kCnot,
    kCz,
    kMcz,
    kDiagonal,
};

// One gate application. `condition_bit >= 0` marks the classically controlled
// variant: the inner gate fires iff that classical bit is 1.
struct GateOp {
    GateKind kind = GateKind::kH;
    std::vector<int> targets;
    double theta = 0.0;
    DiagonalGate diag;
    int condition_bit = -1;

    static GateOp h(int q);
    static GateOp x(int q);
    static GateOp z(int q);
    static GateOp s(int q);
    static GateOp rz(double theta, int q);
    static GateOp rzz(double theta, int a, int b);
    static GateOp cnot(int control, int target);
    static GateOp cz(int a, int b);
    static GateOp mcz(std::vector<int> targets);
    static GateOp diagonal(DiagonalGate gate, std::vector<int> targets);

    GateOp conditioned_on(int bit) const;
    bool is_classically_controlled() const { return condition_bit >= 0; }
    // True when the induced unitary is diagonal in the computational basis.
    bool is_diagonal_in_computational_basis() const;
};

// Classical bit register; -1 marks an unset slot.
using BitVector = std::vector<std::int8_t>;

void apply_gate(StateVector& state, const GateOp& op);
void apply_gate(StateVector& state, const GateOp& op, const BitVector& bits);

// Arbitrary single-qubit unitary, row-major [[m00 m01][m10 m11]]. Used for
// the local V/W factors of decomposed two-qubit gates, which fall outside
// the named gate set.
struct Mat2 {
    Amp m00{1.0, 0.0}, m01{0.0, 0.0}, m10{0.0, 0.0}, m11{1.0, 0.0};

    static Mat2 identity();
    static Mat2 hadamard();
    bool is_unitary(double tol = 1e-10) const;
};

void apply_single_qubit(StateVector& state, const Mat2& u, int qubit);

// H on `qubit` fused with the probability of then measuring it as 1; saves a
// separate read pass in the X-basis measurements of the fan-in protocols.
double apply_h_returning_prob_one(StateVector& state, int qubit);

}  // namespace starsim
