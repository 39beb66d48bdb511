#include "starsim/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

namespace starsim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_targets(const StateVector& state, const GateOp& op, std::size_t expected) {
    if (expected != 0 && op.targets.size() != expected) {
        throw std::invalid_argument("apply_gate: wrong number of targets");
    }
    std::unordered_set<int> seen;
    for (int t : op.targets) {
        if (t < 0 || t >= state.num_qubits()) {
            throw std::invalid_argument("apply_gate: target index out of range");
        }
        if (!seen.insert(t).second) {
            throw std::invalid_argument("apply_gate: duplicate target");
        }
    }
}

std::uint64_t joint_mask(const StateVector& state, const std::vector<int>& targets) {
    std::uint64_t m = 0;
    for (int t : targets) m |= state.mask_of(t);
    return m;
}

// Phase multiply on every index whose bits under `mask` equal `match`,
// visiting only the 2^(n-m) affected amplitudes via submask enumeration.
void phase_on_pattern(StateVector& state, std::uint64_t mask, std::uint64_t match, Amp phase) {
    const std::uint64_t free = ~mask & (state.size() - 1);
    std::uint64_t s = 0;
    do {
        state[match | s] *= phase;
        s = (s - free) & free;
    } while (s != 0);
}

void apply_unconditional(StateVector& state, const GateOp& op) {
    switch (op.kind) {
        case GateKind::kH: {
            check_targets(state, op, 1);
            const std::size_t step = state.mask_of(op.targets[0]);
            Amp* amps = state.amplitudes().data();
            for (std::size_t base = 0; base < state.size(); base += 2 * step) {
                for (std::size_t off = 0; off < step; ++off) {
                    const Amp a = amps[base + off];
                    const Amp b = amps[base + off + step];
                    amps[base + off] = (a + b) * kInvSqrt2;
                    amps[base + off + step] = (a - b) * kInvSqrt2;
                }
            }
            break;
        }
        case GateKind::kX: {
            check_targets(state, op, 1);
            const std::size_t step = state.mask_of(op.targets[0]);
            Amp* amps = state.amplitudes().data();
            for (std::size_t base = 0; base < state.size(); base += 2 * step) {
                for (std::size_t off = 0; off < step; ++off) {
                    std::swap(amps[base + off], amps[base + off + step]);
                }
            }
            break;
        }
        case GateKind::kZ: {
            check_targets(state, op, 1);
            const std::uint64_t m = state.mask_of(op.targets[0]);
            phase_on_pattern(state, m, m, Amp{-1.0, 0.0});
            break;
        }
        case GateKind::kS: {
            check_targets(state, op, 1);
            const std::uint64_t m = state.mask_of(op.targets[0]);
            phase_on_pattern(state, m, m, Amp{0.0, 1.0});
            break;
        }
        case GateKind::kRz: {
            check_targets(state, op, 1);
            const std::uint64_t m = state.mask_of(op.targets[0]);
            const Amp lo = std::polar(1.0, -op.theta / 2.0);
            const Amp hi = std::polar(1.0, op.theta / 2.0);
            for (std::size_t i = 0; i < state.size(); ++i) {
                state[i] *= (i & m) ? hi : lo;
            }
            break;
        }
        case GateKind::kRzz: {
            check_targets(state, op, 2);
            const std::uint64_t ma = state.mask_of(op.targets[0]);
            const std::uint64_t mb = state.mask_of(op.targets[1]);
            const Amp even = std::polar(1.0, -op.theta / 2.0);  // bits equal
            const Amp odd = std::polar(1.0, op.theta / 2.0);    // bits differ
            for (std::size_t i = 0; i < state.size(); ++i) {
                const bool differ = static_cast<bool>(i & ma) != static_cast<bool>(i & mb);
                state[i] *= differ ? odd : even;
            }
            break;
        }
        case GateKind::kCnot: {
            check_targets(state, op, 2);
            const std::uint64_t mc = state.mask_of(op.targets[0]);
            const std::size_t mt = state.mask_of(op.targets[1]);
            Amp* amps = state.amplitudes().data();
            // Swap target pairs inside the control=1 half.
            for (std::size_t base = 0; base < state.size(); base += 2 * mt) {
                if (!(base & mc) && mc > mt) continue;
                for (std::size_t off = 0; off < mt; ++off) {
                    const std::size_t i = base + off;
                    if (i & mc) std::swap(amps[i], amps[i + mt]);
                }
            }
            break;
        }
        case GateKind::kCz: {
            check_targets(state, op, 2);
            const std::uint64_t m = joint_mask(state, op.targets);
            phase_on_pattern(state, m, m, Amp{-1.0, 0.0});
            break;
        }
        case GateKind::kMcz: {
            if (op.targets.size() < 2) {
                throw std::invalid_argument("apply_gate: MCZ needs at least 2 targets");
            }
            check_targets(state, op, op.targets.size());
            const std::uint64_t m = joint_mask(state, op.targets);
            phase_on_pattern(state, m, m, Amp{-1.0, 0.0});
            break;
        }
        case GateKind::kDiagonal: {
            const auto& gate = op.diag;
            if (gate.arity < 1 || gate.phases.size() != (std::size_t{1} << gate.arity)) {
                throw std::invalid_argument("apply_gate: malformed diagonal gate");
            }
            if (op.targets.size() != static_cast<std::size_t>(gate.arity)) {
                throw std::invalid_argument("apply_gate: diagonal arity/target mismatch");
            }
            check_targets(state, op, op.targets.size());
            std::vector<Amp> phase(gate.phases.size());
            for (std::size_t idx = 0; idx < phase.size(); ++idx) {
                phase[idx] = std::polar(1.0, gate.phases[idx]);
            }
            std::vector<std::uint64_t> masks(op.targets.size());
            for (std::size_t t = 0; t < op.targets.size(); ++t) {
                masks[t] = state.mask_of(op.targets[t]);
            }
            for (std::size_t i = 0; i < state.size(); ++i) {
                std::size_t idx = 0;
                for (std::size_t t = 0; t < masks.size(); ++t) {
                    idx = (idx << 1) | ((i & masks[t]) ? 1 : 0);
                }
                state[i] *= phase[idx];
            }
            break;
        }
    }
}

}  // namespace

DiagonalGate::DiagonalGate(int arity_in, std::vector<double> phases_in)
    : arity(arity_in), phases(std::move(phases_in)) {
    if (arity < 1) throw std::invalid_argument("DiagonalGate: arity must be >= 1");
    if (phases.size() != (std::size_t{1} << arity)) {
        throw std::invalid_argument("DiagonalGate: need 2^arity phases");
    }
    for (double p : phases) {
        if (!std::isfinite(p)) throw std::invalid_argument("DiagonalGate: phases must be finite");
    }
}

DiagonalGate DiagonalGate::cz() { return DiagonalGate(2, {0.0, 0.0, 0.0, std::numbers::pi}); }

DiagonalGate DiagonalGate::rz(double theta) { return DiagonalGate(1, {-theta / 2.0, theta / 2.0}); }

DiagonalGate DiagonalGate::rzz(double theta) {
    const double h = theta / 2.0;
    return DiagonalGate(2, {-h, h, h, -h});
}

GateOp GateOp::h(int q) { return {GateKind::kH, {q}, 0.0, {}, -1}; }
GateOp GateOp::x(int q) { return {GateKind::kX, {q}, 0.0, {}, -1}; }
GateOp GateOp::z(int q) { return {GateKind::kZ, {q}, 0.0, {}, -1}; }
GateOp GateOp::s(int q) { return {GateKind::kS, {q}, 0.0, {}, -1}; }
GateOp GateOp::rz(double theta, int q) { return {GateKind::kRz, {q}, theta, {}, -1}; }
GateOp GateOp::rzz(double theta, int a, int b) { return {GateKind::kRzz, {a, b}, theta, {}, -1}; }
GateOp GateOp::cnot(int control, int target) {
    return {GateKind::kCnot, {control, target}, 0.0, {}, -1};
}
GateOp GateOp::cz(int a, int b) { return {GateKind::kCz, {a, b}, 0.0, {}, -1}; }
GateOp GateOp::mcz(std::vector<int> targets) {
    return {GateKind::kMcz, std::move(targets), 0.0, {}, -1};
}
GateOp GateOp::diagonal(DiagonalGate gate, std::vector<int> targets) {
    return {GateKind::kDiagonal, std::move(targets), 0.0, std::move(gate), -1};
}

GateOp GateOp::conditioned_on(int bit) const {
    if (bit < 0) throw std::invalid_argument("conditioned_on: bad bit reference");
    GateOp out = *this;
    out.condition_bit = bit;
    return out;
}

bool GateOp::is_diagonal_in_computational_basis() const {
    switch (kind) {
        case GateKind::kZ:
        case GateKind::kS:
        case GateKind::kRz:
        case GateKind::kRzz:
        case GateKind::kCz:
        case GateKind::kMcz:
        case GateKind::kDiagonal:
            return true;
        default:
            return false;
    }
}

void apply_gate(StateVector& state, const GateOp& op) {
    if (op.is_classically_controlled()) {
        throw std::invalid_argument("apply_gate: classical bit reference unset");
    }
    apply_unconditional(state, op);
}

void apply_gate(StateVector& state, const GateOp& op, const BitVector& bits) {
    if (op.is_classically_controlled()) {
        if (static_cast<std::size_t>(op.condition_bit) >= bits.size() ||
            bits[op.condition_bit] < 0) {
            throw std::invalid_argument("apply_gate: classical bit reference unset");
        }
        if (bits[op.condition_bit] == 0) return;
    }
    apply_unconditional(state, op);
}

Mat2 Mat2::identity() { return {}; }

Mat2 Mat2::hadamard() {
    return {Amp{kInvSqrt2, 0}, Amp{kInvSqrt2, 0}, Amp{kInvSqrt2, 0}, Amp{-kInvSqrt2, 0}};
}

bool Mat2::is_unitary(double tol) const {
    // Rows of U must be orthonormal: U U^dag = I.
    const Amp r00 = m00 * std::conj(m00) + m01 * std::conj(m01);
    const Amp r11 = m10 * std::conj(m10) + m11 * std::conj(m11);
    const Amp r01 = m00 * std::conj(m10) + m01 * std::conj(m11);
    return std::abs(r00 - Amp{1.0, 0.0}) <= tol && std::abs(r11 - Amp{1.0, 0.0}) <= tol &&
           std::abs(r01) <= tol;
}

double apply_h_returning_prob_one(StateVector& state, int qubit) {
    const std::size_t step = state.mask_of(qubit);
    Amp* amps = state.amplitudes().data();
    double p1 = 0.0;
    for (std::size_t base = 0; base < state.size(); base += 2 * step) {
        for (std::size_t off = 0; off < step; ++off) {
            const Amp a = amps[base + off];
            const Amp b = amps[base + off + step];
            const Amp hi = (a - b) * kInvSqrt2;
            amps[base + off] = (a + b) * kInvSqrt2;
            amps[base + off + step] = hi;
            p1 += std::norm(hi);
        }
    }
    return p1 < 0.0 ? 0.0 : (p1 > 1.0 ? 1.0 : p1);
}

void apply_single_qubit(StateVector& state, const Mat2& u, int qubit) {
    const std::uint64_t m = state.mask_of(qubit);
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (i & m) continue;
        const Amp a = state[i];
        const Amp b = state[i | m];
        state[i] = u.m00 * a + u.m01 * b;
        state[i | m] = u.m10 * a + u.m11 * b;
    }
}

}  // namespace starsim
