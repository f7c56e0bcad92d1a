#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbb/oracle.hpp"
#include "qbb/statevector.hpp"

namespace qbb {

// Outcome of a black-box decision procedure. Success probabilities are exact
// values computed from amplitudes, never sampled.
struct DeciderResult {
    int answer = 0;
    std::int64_t queries = 0;
    double success_probability = 0.0;
    // Probability that the procedure outputs 1 (the answer is the likelier
    // outcome; success_probability scores it against the classical truth).
    double output_one_probability = 0.0;
    // Measured queries / (k * sqrt(2^m)) where applicable.
    double cost_constant = 0.0;
};

// Deterministic surrogate for the randomized run-length sequence: Fibonacci
// steps 1, 2, 3, 5, 8, ... strictly below ceil(sqrt(2^m)), then the cap
// itself. Reproducible by construction, so no seed is consumed by default.
struct RunSchedule {
    std::vector<int> lengths;
    std::string rule;
    std::uint64_t seed = 0;
};

RunSchedule ladder_schedule(int m);
// The full ladder repeated k times (one copy per repetition).
RunSchedule repeated_ladder(int m, int k);

// Exact BAL decision: H^n, one phase-oracle call, H^n; answer 0 iff the
// all-zeros outcome is the likelier one. Exactly one query.
DeciderResult deutsch_jozsa(const OracleTable& f);

// Applies j Grover iterations (phase oracle + inversion about the mean) to a
// register of f.n()+1 qubits whose last qubit is the phase ancilla.
void grover_iterate(StateVector& state, const OracleTable& f, int j,
                    QueryCounter& counter);

enum class MarkSense { Ones, Zeros };

// One-sided OR decision: k repetitions of the run ladder, each run followed by
// a one-query check of the candidate. Never errs on unsatisfiable inputs.
// With MarkSense::Zeros it decides "f has a zero" instead.
DeciderResult or_decider(const OracleTable& f, int k, const RunSchedule& schedule,
                         MarkSense sense = MarkSense::Ones);
DeciderResult or_decider(const OracleTable& f, int k);

}  // namespace qbb
