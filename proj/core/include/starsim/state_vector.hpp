// Dense state-vector simulator core.
//
// Bit convention (used everywhere in this project): qubit 0 is the MOST
// significant bit of a basis index. A 3-qubit basis state |q0 q1 q2> = |101>
// therefore has index 0b101 = 5.
#pragma once

#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

namespace starsim {

using Amp = std::complex<double>;

// Dense simulation is capped at desk scale; everything in this project fits.
inline constexpr int kMaxQubits = 24;

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kFidelityTolerance = 1e-10;
inline constexpr double kProbEpsilon = 1e-12;

class StateVector {
public:
    StateVector() = default;
    StateVector(int num_qubits, std::vector<Amp> amplitudes);

    int num_qubits() const { return num_qubits_; }
    std::size_t size() const { return amps_.size(); }

    Amp& operator[](std::size_t i) { return amps_[i]; }
    const Amp& operator[](std::size_t i) const { return amps_[i]; }

    std::vector<Amp>& amplitudes() { return amps_; }
    const std::vector<Amp>& amplitudes() const { return amps_; }

    // Index mask selecting `qubit` under the big-endian convention above.
    std::uint64_t mask_of(int qubit) const;

    double norm_sq() const;
    void renormalize();

private:
    int num_qubits_ = 0;
    std::vector<Amp> amps_;
};

// |basis_index> on num_qubits qubits.
StateVector new_state(int num_qubits, std::uint64_t basis_index);

// |<a|b>|^2. This is the single equality notion for states in this project:
// LOCC corrections fix states only up to a global phase.
double fidelity_up_to_global_phase(const StateVector& a, const StateVector& b);

double probability_of_one(const StateVector& state, int qubit);

// Projects `qubit` onto `bit` and renormalizes. The caller supplies the
// pre-computed branch probability to avoid a second pass.
void collapse(StateVector& state, int qubit, int bit, double branch_probability);

struct MeasurementOutcome {
    int bit = 0;
    double probability = 0.0;
    StateVector post_state;
};

struct Seeded {
    std::uint64_t seed = 0;
};
struct Forced {
    int bit = 0;
};
struct EnumerateAll {};

using MeasurePolicy = std::variant<Seeded, Forced, EnumerateAll>;

// Z-basis measurement of one qubit.
//   Seeded:       one outcome drawn from a deterministic stream.
//   Forced:       the requested branch (error if its probability < 1e-12).
//   EnumerateAll: every branch with probability >= 1e-12, bit 0 first.
std::vector<MeasurementOutcome> measure(const StateVector& state, int qubit,
                                        const MeasurePolicy& policy);

}  // namespace starsim
