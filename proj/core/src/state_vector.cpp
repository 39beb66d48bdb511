#include "starsim/state_vector.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace starsim {

StateVector::StateVector(int num_qubits, std::vector<Amp> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
    if (num_qubits < 0 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("StateVector: qubit count out of range");
    }
    if (amps_.size() != (std::size_t{1} << num_qubits)) {
        throw std::invalid_argument("StateVector: amplitude length must be 2^num_qubits");
    }
}

std::uint64_t StateVector::mask_of(int qubit) const {
    if (qubit < 0 || qubit >= num_qubits_) {
        throw std::invalid_argument("StateVector: qubit index out of range");
    }
    return std::uint64_t{1} << (num_qubits_ - 1 - qubit);
}

double StateVector::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

void StateVector::renormalize() {
    const double s = norm_sq();
    if (s <= 0.0) throw std::runtime_error("StateVector: cannot renormalize zero vector");
    const double inv = 1.0 / std::sqrt(s);
    for (auto& a : amps_) a *= inv;
}

StateVector new_state(int num_qubits, std::uint64_t basis_index) {
    if (num_qubits < 0 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("new_state: qubit count out of range");
    }
    const std::size_t dim = std::size_t{1} << num_qubits;
    if (basis_index >= dim) {
        throw std::invalid_argument("new_state: basis index out of range");
    }
    std::vector<Amp> amps(dim, Amp{0.0, 0.0});
    amps[basis_index] = Amp{1.0, 0.0};
    return StateVector(num_qubits, std::move(amps));
}

double fidelity_up_to_global_phase(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    Amp overlap{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        overlap += std::conj(a[i]) * b[i];
    }
    return std::norm(overlap);
}

double probability_of_one(const StateVector& state, int qubit) {
    const std::size_t step = state.mask_of(qubit);
    const Amp* amps = state.amplitudes().data();
    double p1 = 0.0;
    for (std::size_t base = step; base < state.size(); base += 2 * step) {
        for (std::size_t off = 0; off < step; ++off) p1 += std::norm(amps[base + off]);
    }
    return p1 < 0.0 ? 0.0 : (p1 > 1.0 ? 1.0 : p1);
}

void collapse(StateVector& state, int qubit, int bit, double branch_probability) {
    const std::size_t step = state.mask_of(qubit);
    const double inv = 1.0 / std::sqrt(branch_probability);
    Amp* amps = state.amplitudes().data();
    const std::size_t keep_off = bit ? step : 0;
    const std::size_t zero_off = bit ? 0 : step;
    for (std::size_t base = 0; base < state.size(); base += 2 * step) {
        for (std::size_t off = 0; off < step; ++off) amps[base + keep_off + off] *= inv;
        for (std::size_t off = 0; off < step; ++off) amps[base + zero_off + off] = Amp{0.0, 0.0};
    }
}

std::vector<MeasurementOutcome> measure(const StateVector& state, int qubit,
                                        const MeasurePolicy& policy) {
    const double p1 = probability_of_one(state, qubit);
    const double p0 = 1.0 - p1;
    const double prob[2] = {p0, p1};

    auto branch = [&](int bit) {
        MeasurementOutcome out;
        out.bit = bit;
        out.probability = prob[bit];
        out.post_state = state;
        collapse(out.post_state, qubit, bit, prob[bit]);
        return out;
    };

    std::vector<MeasurementOutcome> outcomes;
    if (std::holds_alternative<Seeded>(policy)) {
        std::mt19937_64 rng(std::get<Seeded>(policy).seed);
        // Portable uniform in [0,1): top 53 bits of the generator output.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        outcomes.push_back(branch(u < p0 ? 0 : 1));
    } else if (std::holds_alternative<Forced>(policy)) {
        const int bit = std::get<Forced>(policy).bit;
        if (bit != 0 && bit != 1) throw std::invalid_argument("measure: forced bit must be 0 or 1");
        if (prob[bit] < kProbEpsilon) {
            throw std::runtime_error("measure: forced branch has zero probability");
        }
        outcomes.push_back(branch(bit));
    } else {
        for (int bit = 0; bit <= 1; ++bit) {
            if (prob[bit] >= kProbEpsilon) outcomes.push_back(branch(bit));
        }
    }
    return outcomes;
}

}  // namespace starsim
