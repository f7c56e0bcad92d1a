#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include "qbb/circuit.hpp"
#include "qbb/errors.hpp"
#include "qbb/statevector.hpp"

using namespace qbb;

namespace {

constexpr double kTol = 1e-9;

StateVector random_state(int qubits, std::uint64_t seed) {
    StateVector s(qubits);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    double norm2 = 0.0;
    for (std::uint64_t i = 0; i < s.dim(); ++i) {
        s.amplitude(i) = cplx{dist(rng), dist(rng)};
        norm2 += std::norm(s.amplitude(i));
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::uint64_t i = 0; i < s.dim(); ++i) s.amplitude(i) *= inv;
    return s;
}

}  // namespace

TEST_CASE("basis indexing puts qubit 0 at the most significant position") {
    StateVector s(3, std::uint64_t{0b100});
    CHECK(s.basis_bit(0b100, 0) == 1);
    CHECK(s.basis_bit(0b100, 1) == 0);
    CHECK(s.basis_bit(0b100, 2) == 0);
    CHECK(s.pattern_probability(std::vector<int>{0}, 1) == doctest::Approx(1.0));
    CHECK(s.pattern_probability(std::vector<int>{2}, 0) == doctest::Approx(1.0));
}

TEST_CASE("single-qubit gates act on the right wire") {
    StateVector s(2);
    s.apply_x(1);
    CHECK(std::abs(s.amplitude(0b01) - cplx{1.0}) < kTol);
    s.apply_h(0);
    CHECK(std::abs(s.amplitude(0b01) - cplx{std::sqrt(0.5)}) < kTol);
    CHECK(std::abs(s.amplitude(0b11) - cplx{std::sqrt(0.5)}) < kTol);
    s.apply_z(0);
    CHECK(std::abs(s.amplitude(0b11) + cplx{std::sqrt(0.5)}) < kTol);
}

TEST_CASE("cnot and mcx with polarities") {
    StateVector s(3, std::uint64_t{0b110});
    s.apply_cnot(0, 2);
    CHECK(std::abs(s.amplitude(0b111) - cplx{1.0}) < kTol);
    const std::vector<int> controls{0, 1};
    const std::vector<int> on_zero{0, 0};
    StateVector t(3);
    t.apply_mcx(controls, on_zero, 2);  // fires on |00>
    CHECK(std::abs(t.amplitude(0b001) - cplx{1.0}) < kTol);
}

TEST_CASE("phase flip matches z via pattern") {
    StateVector s(1);
    s.apply_h(0);
    s.apply_phase_flip(std::vector<int>{0}, 1);
    StateVector t(1);
    t.apply_h(0);
    t.apply_z(0);
    CHECK(euclidean_distance(s, t) < kTol);
}

TEST_CASE("serial and parallel kernels agree on a random workload") {
    auto run = [](kernels::ExecMode mode) {
        kernels::set_exec_mode(mode);
        StateVector s = random_state(8, 99);
        std::vector<int> half{0, 1, 2, 3};
        for (int q = 0; q < 8; ++q) s.apply_h(q);
        s.apply_bitxor(half, 7, [](std::uint64_t x) { return int(x & 1); });
        s.apply_phase_flip(half, 3);
        s.invert_about_mean(half);
        s.apply_cnot(2, 6);
        const std::vector<int> ctr{0, 5};
        const std::vector<int> pol{1, 0};
        s.apply_mcx(ctr, pol, 4);
        return s;
    };
    StateVector serial = run(kernels::ExecMode::Serial);
    StateVector parallel = run(kernels::ExecMode::Parallel);
    kernels::set_exec_mode(kernels::ExecMode::Parallel);
    CHECK(euclidean_distance(serial, parallel) < 1e-12);
}

TEST_CASE("output distribution sums to one and flags duplicates") {
    StateVector s = random_state(5, 3);
    auto dist = s.output_distribution(std::vector<int>{1, 3});
    double total = 0.0;
    for (const auto& [bits, p] : dist) total += p;
    CHECK(total == doctest::Approx(1.0));
    CHECK_THROWS_AS(s.output_distribution(std::vector<int>{1, 1}), ValidationError);
}

TEST_CASE("register cap raises a resource error") {
    CHECK_THROWS_AS(StateVector(12, 10), ResourceError);
    CHECK_NOTHROW(StateVector(12, 12));
}

TEST_CASE("invalid qubit indices raise validation errors") {
    StateVector s(2);
    CHECK_THROWS_AS(s.apply_h(2), ValidationError);
    CHECK_THROWS_AS(s.apply_cnot(0, 0), ValidationError);
    CHECK_THROWS_AS(
        s.apply_bitxor(std::vector<int>{0}, 0, [](std::uint64_t) { return 0; }),
        ValidationError);
}

TEST_CASE("non-unitary 2x2 matrices are rejected") {
    StateVector s(1);
    QueryCounter counter;
    GateOp bad = GateOp::single(0, {cplx{1.0}, cplx{1.0}, cplx{0.0}, cplx{1.0}});
    CHECK_THROWS_AS(apply_gate(s, bad, counter), ValidationError);
}

TEST_CASE("adjoint of a random circuit undoes it") {
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<int> qubit(0, 6);
    std::uniform_real_distribution<double> angle(0.0, 6.28318530717958648);
    for (int trial = 0; trial < 10; ++trial) {
        Circuit circuit;
        const int ops = 1 + int(rng() % 50);
        for (int i = 0; i < ops; ++i) {
            switch (rng() % 4) {
                case 0: circuit.push_back(GateOp::hadamard(qubit(rng))); break;
                case 1: {
                    // arbitrary phased rotation
                    const double a = angle(rng), b = angle(rng);
                    const cplx e1 = std::polar(1.0, a), e2 = std::polar(1.0, b);
                    const double t = angle(rng);
                    circuit.push_back(GateOp::single(
                        qubit(rng), {std::cos(t) * e1, -std::sin(t) * e2,
                                     std::sin(t) * std::conj(e2),
                                     std::cos(t) * std::conj(e1)}));
                    break;
                }
                case 2: {
                    int c = qubit(rng), t = qubit(rng);
                    if (c != t) circuit.push_back(GateOp::cnot(c, t));
                    break;
                }
                default:
                    circuit.push_back(GateOp::oracle_call(
                        OracleTable::random(2, rng()), std::vector<int>{1, 3}, 5));
            }
        }
        StateVector start = random_state(7, rng());
        StateVector s = start;
        QueryCounter counter;
        apply_circuit(s, circuit, counter);
        apply_adjoint(s, circuit, counter);
        CHECK(euclidean_distance(s, start) < 1e-9);
    }
}

TEST_CASE("adjoint blocks nest correctly") {
    Circuit inner{GateOp::hadamard(0), GateOp::cnot(0, 1)};
    Circuit circuit{GateOp::adjoint_of(inner), GateOp::adjoint_of({GateOp::adjoint_of(inner)})};
    StateVector s = random_state(2, 77);
    StateVector expect = s;  // adjoint(inner) then inner = identity
    QueryCounter counter;
    apply_circuit(s, circuit, counter);
    CHECK(euclidean_distance(s, expect) < 1e-9);
}
