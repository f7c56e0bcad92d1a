#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qbb/statevector.hpp"

namespace qbb {

// Explicit truth table of f : {0,1}^n -> {0,1}. Index convention matches the
// state vector: x = (x1,...,xn) maps to index sum(xi * 2^(n-i)), x1 most
// significant.
class OracleTable {
public:
    OracleTable(int n, std::vector<std::uint8_t> bits);
    static OracleTable constant(int n, int value);
    static OracleTable single_one(int n, std::uint64_t where);
    static OracleTable random(int n, std::uint64_t seed);
    static OracleTable from_bitstring(int n, const std::string& bits);

    int n() const { return n_; }
    std::uint64_t size() const { return bits_.size(); }
    int value(std::uint64_t x) const { return bits_[x]; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }

    std::uint64_t count_ones() const;
    std::string bitstring() const;
    OracleTable negated() const;
    // Fixes the first `count` inputs to the bits of `prefix` (MSB-first),
    // leaving a table over the remaining n-count inputs.
    OracleTable restrict_prefix(std::uint64_t prefix, int count) const;

    static OracleTable load_json(const std::string& path);
    void save_json(const std::string& path) const;
    std::string to_json() const;
    static OracleTable parse_json(const std::string& text);

private:
    int n_;
    std::vector<std::uint8_t> bits_;
};

// Counts black-box accesses. One f-gate or phase-oracle application is one
// query regardless of superposition width.
struct QueryCounter {
    std::int64_t count = 0;
    void add(std::int64_t k = 1) { count += k; }
};

// L : {0,1} x {0,1} -> {0,1}, as the 4-entry table L(a,b) = table[2a + b].
struct CombinerSpec {
    std::array<std::uint8_t, 4> table;
    int eval(int a, int b) const { return table[2 * (a & 1) + (b & 1)]; }
    static CombinerSpec and_combiner() { return {{0, 0, 0, 1}}; }
    static CombinerSpec or_combiner() { return {{0, 1, 1, 1}}; }
    static CombinerSpec xor_combiner() { return {{0, 1, 1, 0}}; }
    std::string name() const;
};

// |x>|y> -> |x>|f(x) xor y>; one query.
void apply_f_gate(StateVector& state, const OracleTable& f, std::span<const int> inputs,
                  int output, QueryCounter& counter);

// |x> -> (-1)^f(x) |x> on the input register, realized through an ancilla that
// starts and ends in |0>; one query.
void apply_phase_oracle(StateVector& state, const OracleTable& f,
                        std::span<const int> inputs, int ancilla, QueryCounter& counter);

// L(g,h)(x) = L(g(x), h(x)).
OracleTable pointwise_combine(const CombinerSpec& L, const OracleTable& g,
                              const OracleTable& h);

// Classical reference evaluators (full enumeration); the test oracles for
// every quantum routine.
int eval_or(const OracleTable& f);
int eval_parity(const OracleTable& f);
int eval_majority(const OracleTable& f);

enum class BalAnswer { ConstantZero, Balanced, OutsidePromise };
BalAnswer eval_bal(const OracleTable& f);

// SIGMA_d: alternating quantifiers starting with an OR block, widths summing
// to f.n(). PI_d is the De Morgan dual: negate f, negate the answer.
int eval_sigma(const OracleTable& f, std::span<const int> widths);
int eval_pi(const OracleTable& f, std::span<const int> widths);

int hamming_distance(const OracleTable& g, const OracleTable& h);

}  // namespace qbb
