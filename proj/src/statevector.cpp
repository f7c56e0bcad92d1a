#include "qbb/statevector.hpp"

#include <cmath>
#include <random>

#include "qbb/errors.hpp"

namespace qbb {

namespace {
constexpr double kSqrtHalf = 0.70710678118654752440;
}

StateVector::StateVector(int num_qubits, int cap) : StateVector(num_qubits, 0, cap) {}

StateVector::StateVector(int num_qubits, std::uint64_t basis_state, int cap)
    : num_qubits_(num_qubits) {
    if (num_qubits < 1) throw ValidationError("state needs at least one qubit");
    if (num_qubits > cap)
        throw ResourceError("register of " + std::to_string(num_qubits) +
                            " qubits exceeds the cap of " + std::to_string(cap) +
                            " (override the cap to go larger)");
    amps_.assign(std::uint64_t{1} << num_qubits, cplx{0.0, 0.0});
    if (basis_state >= amps_.size()) throw ValidationError("basis state out of range");
    amps_[basis_state] = cplx{1.0, 0.0};
}

double StateVector::norm() const { return std::sqrt(kernels::norm_sq(amps_)); }

void StateVector::check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= num_qubits_)
        throw ValidationError("qubit index " + std::to_string(qubit) +
                              " out of range for " + std::to_string(num_qubits_) +
                              "-qubit register");
}

void StateVector::apply_h(int qubit) {
    apply_single(qubit, {kSqrtHalf, kSqrtHalf, kSqrtHalf, -kSqrtHalf});
}

void StateVector::apply_x(int qubit) {
    apply_single(qubit, {cplx{0.0}, cplx{1.0}, cplx{1.0}, cplx{0.0}});
}

void StateVector::apply_z(int qubit) {
    apply_single(qubit, {cplx{1.0}, cplx{0.0}, cplx{0.0}, cplx{-1.0}});
}

void StateVector::apply_single(int qubit, const std::array<cplx, 4>& u) {
    check_qubit(qubit);
    kernels::apply_single(amps_, num_qubits_, qubit, u);
}

void StateVector::apply_cnot(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) throw ValidationError("controlled-NOT control equals target");
    kernels::apply_cnot(amps_, num_qubits_, control, target);
}

void StateVector::apply_mcx(std::span<const int> controls, std::span<const int> polarities,
                            int target) {
    if (controls.size() != polarities.size())
        throw ValidationError("one polarity per control required");
    check_qubit(target);
    for (int c : controls) {
        check_qubit(c);
        if (c == target) throw ValidationError("multi-controlled-X control equals target");
    }
    kernels::apply_mcx(amps_, num_qubits_, controls, polarities, target);
}

void StateVector::apply_phase_flip(std::span<const int> qubits, std::uint64_t pattern) {
    for (int q : qubits) check_qubit(q);
    kernels::apply_phase_flip(amps_, num_qubits_, qubits, pattern);
}

void StateVector::apply_bitxor(std::span<const int> inputs, int target,
                               const std::function<int(std::uint64_t)>& fn) {
    check_qubit(target);
    for (int q : inputs) {
        check_qubit(q);
        if (q == target) throw ValidationError("bit-xor input collides with its target");
    }
    kernels::apply_bitxor(amps_, num_qubits_, inputs, target, fn);
}

void StateVector::invert_about_mean(std::span<const int> qubits) {
    for (int q : qubits) check_qubit(q);
    kernels::invert_about_mean(amps_, num_qubits_, qubits);
}

std::map<std::string, double> StateVector::output_distribution(
    std::span<const int> qubits) const {
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        check_qubit(qubits[i]);
        for (std::size_t j = i + 1; j < qubits.size(); ++j)
            if (qubits[i] == qubits[j])
                throw ValidationError("duplicate qubit in measurement list");
    }
    std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
    for (std::uint64_t idx = 0; idx < amps_.size(); ++idx) {
        std::uint64_t key = 0;
        for (int q : qubits) key = key << 1 | static_cast<unsigned>(basis_bit(idx, q));
        probs[key] += std::norm(amps_[idx]);
    }
    std::map<std::string, double> out;
    for (std::uint64_t key = 0; key < probs.size(); ++key) {
        std::string bits(qubits.size(), '0');
        for (std::size_t b = 0; b < qubits.size(); ++b)
            if (key >> (qubits.size() - 1 - b) & 1) bits[b] = '1';
        out[bits] = probs[key];
    }
    return out;
}

double StateVector::pattern_probability(std::span<const int> qubits,
                                        std::uint64_t pattern) const {
    for (int q : qubits) check_qubit(q);
    double p = 0.0;
    for (std::uint64_t idx = 0; idx < amps_.size(); ++idx) {
        std::uint64_t key = 0;
        for (int q : qubits) key = key << 1 | static_cast<unsigned>(basis_bit(idx, q));
        if (key == pattern) p += std::norm(amps_[idx]);
    }
    return p;
}

double euclidean_distance(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits())
        throw ValidationError("euclidean distance needs equal register sizes");
    double sum = 0.0;
    for (std::uint64_t i = 0; i < a.dim(); ++i)
        sum += std::norm(a.amplitude(i) - b.amplitude(i));
    return std::sqrt(sum);
}

std::uint64_t sample_basis_state(const StateVector& state, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    double r = dist(rng);
    double acc = 0.0;
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        acc += std::norm(state.amplitude(i));
        if (r < acc) return i;
    }
    return state.dim() - 1;
}

}  // namespace qbb
