#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qbb/circuit.hpp"
#include "qbb/nested.hpp"
#include "qbb/oracle.hpp"
#include "qbb/statevector.hpp"

namespace qbb {

enum class Party { Alice, Bob };

std::string party_name(Party p);

// One qubit transfer between the parties.
struct TransferEvent {
    Party from = Party::Alice;
    Party to = Party::Bob;
    int qubits = 0;
};

struct Transcript {
    std::vector<TransferEvent> events;
    std::int64_t total_qubits = 0;
    bool one_way = true;  // false once any Bob-to-Alice transfer occurs

    void add(Party from, Party to, int qubits);
    std::string to_json() const;
};

// Qubit ownership map. Every qubit has exactly one owner; a party may only
// act on qubits it currently owns.
class PartyLedger {
public:
    explicit PartyLedger(int num_qubits, Party owner = Party::Alice);

    int num_qubits() const { return static_cast<int>(owner_.size()); }
    Party owner(int qubit) const;
    void transfer(std::span<const int> qubits, Party to);
    // Throws ProtocolError naming the step when any qubit is not owned by p.
    void check_owned(Party p, std::span<const int> qubits, const std::string& step) const;

private:
    std::vector<Party> owner_;
};

// Shared access point for the combined oracle L(g, h): Alice holds g, Bob
// holds h, and every oracle call is realized by the four-step exchange. The
// net effect on the data qubits is exactly the f-gate for L(g, h), and the
// dedicated ancilla returns exactly to |0>.
class CombinedOracle {
public:
    CombinedOracle(OracleTable g, OracleTable h, CombinerSpec combiner);

    int n() const { return g_.n(); }
    const OracleTable& g() const { return g_; }
    const OracleTable& h() const { return h_; }
    const CombinerSpec& combiner() const { return combiner_; }
    const OracleTable& combined() const { return combined_; }
    Transcript& transcript() { return transcript_; }
    const Transcript& transcript() const { return transcript_; }

    // The four steps: Alice writes g(x) into the ancilla, sends the n+2
    // qubits, Bob XORs L(a, h(x)) into the target, sends them back, Alice
    // uncomputes the ancilla. Adds 2n+4 transferred qubits and one query.
    // Locality is enforced through `ledger` (a fresh all-Alice ledger is used
    // when none is given).
    void exchange_call(StateVector& state, std::span<const int> inputs, int target,
                       int ancilla, QueryCounter& counter,
                       PartyLedger* ledger = nullptr);

    // Accounts exchanges whose outcome was computed offline (candidate
    // confirmations): same cost per call as a live exchange.
    void charge_offline_calls(std::int64_t calls);

private:
    OracleTable g_;
    OracleTable h_;
    CombinerSpec combiner_;
    OracleTable combined_;
    Transcript transcript_;
};

// GGate leaf whose every application is a four-step exchange; its single
// workspace qubit is the exchanged ancilla. Amplitude-identical to the exact
// table gate for L(g, h).
class ExchangeGGate final : public GGate {
public:
    explicit ExchangeGGate(std::shared_ptr<CombinedOracle> oracle)
        : oracle_(std::move(oracle)) {}

    int input_bits() const override { return oracle_->n(); }
    int workspace_bits() const override { return 1; }
    std::int64_t queries_per_call() const override { return 1; }
    double beta_max() const override { return 0.0; }
    const OracleTable* table() const override { return &oracle_->combined(); }
    void apply(StateVector& state, int answer, std::span<const int> inputs,
               std::span<const int> workspace, QueryCounter& counter) const override;
    // Analysis-only: restriction drops to the exact table gate.
    std::shared_ptr<const GGate> restrict_inputs(std::uint64_t prefix,
                                                 int count) const override;

private:
    std::shared_ptr<CombinedOracle> oracle_;
};

struct ProtocolRunResult {
    std::map<std::string, double> output_distribution;
    Transcript transcript;
    std::int64_t queries = 0;
};

// Alice simulates `circuit` locally; every unbound oracle call becomes an
// exchange. The register gains one trailing ancilla qubit for the exchanges.
// Output distribution is over `output_qubits`.
ProtocolRunResult run_protocol(const Circuit& circuit, int num_qubits,
                               std::span<const int> output_qubits,
                               const CombinerSpec& combiner, const OracleTable& g,
                               const OracleTable& h, int cap = kDefaultQubitCap);

struct ProtocolResult {
    std::string problem;
    int n = 0;
    int answer = 0;
    std::int64_t t = 0;  // oracle calls
    Transcript transcript;
    double success_probability = 0.0;
    bool one_way = false;

    std::string to_json() const;
};

// DISJ(g, h) = OR_x (g(x) AND h(x)) with one-sided search error <= 2^-k;
// transcript total is exactly t * (2n + 4).
ProtocolResult disj_protocol(const OracleTable& g, const OracleTable& h, int k = 3,
                             int cap = kDefaultQubitCap);

// EQ' under the promise Delta(g, h) in {0, 2^(n-1)}: exact, one message of
// n+1 qubits from Alice to Bob, answer measured at Bob.
ProtocolResult eqprime_protocol(const OracleTable& g, const OracleTable& h,
                                int cap = kDefaultQubitCap);

// Balanced alternating formula over the combined oracle: SIGMA_d given by
// `widths` applied to L(g, h), evaluated through exchanges. Empty `ks` picks
// the documented defaults (outer 3, inner levels 2).
ProtocolResult ac0_protocol(std::span<const int> widths, const CombinerSpec& combiner,
                            const OracleTable& g, const OracleTable& h,
                            std::vector<int> ks = {}, int cap = kDefaultQubitCap);

}  // namespace qbb
