#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qbb/kernels.hpp"

namespace qbb {

// Default register cap: 26 qubits is 1 GiB of amplitudes at 16 bytes each.
inline constexpr int kDefaultQubitCap = 26;

// Dense amplitude vector over a fixed number of qubits. Qubit 0 is the most
// significant bit of the amplitude index, so |x1,...,xm> reads left to right.
// Distributions are computed from amplitudes, never sampled.
class StateVector {
public:
    explicit StateVector(int num_qubits, int cap = kDefaultQubitCap);
    StateVector(int num_qubits, std::uint64_t basis_state, int cap = kDefaultQubitCap);

    int num_qubits() const { return num_qubits_; }
    std::uint64_t dim() const { return amps_.size(); }
    std::span<cplx> amplitudes() { return amps_; }
    std::span<const cplx> amplitudes() const { return amps_; }
    const cplx& amplitude(std::uint64_t basis) const { return amps_[basis]; }
    cplx& amplitude(std::uint64_t basis) { return amps_[basis]; }

    double norm() const;

    // Reads bit of `qubit` in a basis index.
    int basis_bit(std::uint64_t basis, int qubit) const {
        return static_cast<int>(basis >> (num_qubits_ - 1 - qubit) & 1);
    }

    void apply_h(int qubit);
    void apply_x(int qubit);
    void apply_z(int qubit);
    void apply_single(int qubit, const std::array<cplx, 4>& u);
    void apply_cnot(int control, int target);
    void apply_mcx(std::span<const int> controls, std::span<const int> polarities,
                   int target);
    void apply_phase_flip(std::span<const int> qubits, std::uint64_t pattern);
    void apply_bitxor(std::span<const int> inputs, int target,
                      const std::function<int(std::uint64_t)>& fn);
    void invert_about_mean(std::span<const int> qubits);

    // Marginal probabilities of the listed qubits (bitstring keyed, MSB first
    // in list order). No collapse; exact analysis only.
    std::map<std::string, double> output_distribution(std::span<const int> qubits) const;

    // Probability that the listed qubits carry the given bit pattern.
    double pattern_probability(std::span<const int> qubits, std::uint64_t pattern) const;

    void check_qubit(int qubit) const;

private:
    int num_qubits_;
    std::vector<cplx> amps_;
};

double euclidean_distance(const StateVector& a, const StateVector& b);

// Seeded measurement sampler for demos; the analysis paths never use it.
std::uint64_t sample_basis_state(const StateVector& state, std::uint64_t seed);

}  // namespace qbb
