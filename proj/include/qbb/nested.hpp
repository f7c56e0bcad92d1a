#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qbb/algorithms.hpp"
#include "qbb/oracle.hpp"
#include "qbb/statevector.hpp"

namespace qbb {

enum class QuantSense { Exists, ForAll };

// Reversible carrier of a boolean function g of `input_bits` inputs:
// |z>|x>|0...0>  ->  |z xor g(x)>|x>|~0...0>, exactly or approximately.
// Every implementation is an involution, so no adjoint flag is needed.
class GGate {
public:
    virtual ~GGate() = default;
    virtual int input_bits() const = 0;
    virtual int workspace_bits() const = 0;
    // Black-box queries charged per application.
    virtual std::int64_t queries_per_call() const = 0;
    // Worst-case error amplitude over basis inputs (0 for exact gates).
    virtual double beta_max() const = 0;
    // Truth table when the gate computes its function exactly, else nullptr.
    virtual const OracleTable* table() const { return nullptr; }
    virtual void apply(StateVector& state, int answer, std::span<const int> inputs,
                       std::span<const int> workspace, QueryCounter& counter) const = 0;
    // Fixes the first `count` inputs (MSB-first) to the bits of `prefix`.
    virtual std::shared_ptr<const GGate> restrict_inputs(std::uint64_t prefix,
                                                         int count) const = 0;
};

// Exact gate backed by a truth table: one query per application, no workspace.
class TableGGate final : public GGate {
public:
    explicit TableGGate(OracleTable table) : table_(std::move(table)) {}

    int input_bits() const override { return table_.n(); }
    int workspace_bits() const override { return 0; }
    std::int64_t queries_per_call() const override { return 1; }
    double beta_max() const override { return 0.0; }
    const OracleTable* table() const override { return &table_; }
    void apply(StateVector& state, int answer, std::span<const int> inputs,
               std::span<const int> workspace, QueryCounter& counter) const override;
    std::shared_ptr<const GGate> restrict_inputs(std::uint64_t prefix,
                                                 int count) const override;

private:
    OracleTable table_;
};

// The purely unitary stage G: decides Q_{y in {0,1}^m} inner(x, y) into an
// internal answer qubit without intermediate measurement. Each scheduled run
// gets a fresh m-qubit search register plus a record qubit (deferred
// measurement); one phase ancilla and the inner gate's workspace are shared.
//
// Workspace block layout (first to last):
//   [0]                     internal answer
//   [1 .. R*m]              run search registers
//   [1+R*m .. R*m+R]        record qubits
//   [1+R*m+R]               phase ancilla
//   [2+R*m+R .. ]           inner gate workspace
class UnitaryDecider {
public:
    UnitaryDecider(std::shared_ptr<const GGate> inner, int m, QuantSense sense,
                   RunSchedule schedule);

    int controls() const { return controls_; }
    int m() const { return m_; }
    QuantSense sense() const { return sense_; }
    const RunSchedule& schedule() const { return schedule_; }
    int runs() const { return static_cast<int>(schedule_.lengths.size()); }
    const GGate& inner() const { return *inner_; }
    std::shared_ptr<const GGate> inner_ptr() const { return inner_; }

    int workspace_bits() const;
    // Inner-gate applications per stage: sum over runs of (j_r + 1).
    std::int64_t inner_calls_per_stage() const;
    std::int64_t queries_per_stage() const {
        return inner_calls_per_stage() * inner_->queries_per_call();
    }

    // Applies G (or G† when adjoint) given the control inputs and the
    // workspace block in the layout above.
    void apply_stage(StateVector& state, std::span<const int> inputs,
                     std::span<const int> block, bool adjoint,
                     QueryCounter& counter) const;

    // Exact per-control error probabilities beta^2(x), measured at build time.
    const std::vector<double>& branch_error() const { return branch_error_; }
    double beta_max() const { return beta_max_; }
    void set_measured_errors(std::vector<double> branch_error);

private:
    std::shared_ptr<const GGate> inner_;
    int controls_;
    int m_;
    QuantSense sense_;
    RunSchedule schedule_;
    std::vector<double> branch_error_;
    double beta_max_ = 0.0;
};

// Builds the decider for Q_{y} inner(x, y) with schedule repeated_ladder(m, k)
// and measures beta(x) exactly for every control setting x. `truth` is the
// classical table of the decided function over the control bits.
UnitaryDecider build_unitary_decider(std::shared_ptr<const GGate> inner, int m, int k,
                                     QuantSense sense, const OracleTable& truth,
                                     int cap = kDefaultQubitCap);

// The three-step approximate g-gate V = G, CNOT(answer <- internal answer), G†.
// Per basis input the distance to the ideal gate is sqrt(2)*beta(x).
class ApproxGGate final : public GGate {
public:
    explicit ApproxGGate(UnitaryDecider decider) : decider_(std::move(decider)) {}

    int input_bits() const override { return decider_.controls(); }
    int workspace_bits() const override { return decider_.workspace_bits(); }
    std::int64_t queries_per_call() const override {
        return 2 * decider_.queries_per_stage();
    }
    double beta_max() const override { return decider_.beta_max(); }
    void apply(StateVector& state, int answer, std::span<const int> inputs,
               std::span<const int> workspace, QueryCounter& counter) const override;
    std::shared_ptr<const GGate> restrict_inputs(std::uint64_t prefix,
                                                 int count) const override;

    const UnitaryDecider& decider() const { return decider_; }

private:
    UnitaryDecider decider_;
};

std::shared_ptr<const ApproxGGate> approx_g_gate(UnitaryDecider decider);

struct GateDistanceReport {
    double max_distance = 0.0;        // max over basis inputs of ||V|b> - U|b>||
    double superposition_bound = 0.0; // sqrt(2^(controls+1)) * max_distance
    double max_norm_error = 0.0;      // worst deviation of ||V|b>|| from 1
    // True when the distances come from full simulation of V; false when the
    // register would not fit and the exact per-branch value sqrt(2)*beta(x)
    // is reported instead.
    bool exact_simulation = true;
};

// Compares V against the ideal gate for `ideal` over every basis input.
GateDistanceReport verify_gate_distance(const ApproxGGate& gate,
                                        const OracleTable& ideal,
                                        int cap = kDefaultQubitCap,
                                        int full_sim_limit = 22);

// Smallest k with k >= 2(n-m) + 2*log2(2/epsilon).
int choose_k(int n, int m, double epsilon);

// Parameter block for the depth-d alternating evaluator. widths[0] is the
// outermost (OR) block; widths sum to n; ks[i] repeats level i+1's ladder.
struct ApproxParams {
    int n = 0;
    std::vector<int> widths;
    std::vector<int> ks;
    double epsilon = 1.0 / 12;
    double delta = 0.0;
    int cap = kDefaultQubitCap;

    int depth() const { return static_cast<int>(widths.size()); }
    void validate() const;

    std::string to_json() const;
    static ApproxParams parse_json(const std::string& text);
    static ApproxParams load_json(const std::string& path);
    void save_json(const std::string& path) const;
};

// All k_i set to ceil(2^(n/(delta*d))); the implied target error is
// epsilon = 2^-(2^((n/(delta*d)) - 1)). Refuses k beyond `k_cap` since the
// resulting circuits grow astronomically except at toy sizes.
ApproxParams double_exp_params(int n, int d, double delta, int k_cap = 64);

// Top-level measured decider: k repetitions of the ladder, fresh registers per
// run, candidate confirmation by one extra gate call. Exact probabilities;
// `truth_value` is the classical value of the decided predicate. `analysis`
// may supply an amplitude-identical twin used for the offline confirmation
// probabilities, so that gates with external side effects (e.g. transcript
// logging) are not charged for analysis-only runs.
DeciderResult measured_decider(const GGate& gate, int k, const RunSchedule& ladder,
                               QuantSense sense, int truth_value,
                               int cap = kDefaultQubitCap,
                               const GGate* analysis = nullptr);

// Gate chain for the inner levels d..2 of the alternation, shared between the
// evaluator and the communication-protocol front end.
struct SigmaGateChain {
    std::shared_ptr<const GGate> top;  // level-2 gate (the leaf itself when d == 1)
    int truth_value = 0;               // classical SIGMA_d(f)
    std::vector<double> level_beta_max;
};

// Builds approximate gates for levels d down to 2 over `leaf` (defaults to an
// exact table gate for f; any substitute must realize f exactly and expose
// its table). Zero-width levels pass through at no cost.
SigmaGateChain build_sigma_gate(const OracleTable& f, const ApproxParams& params,
                                std::shared_ptr<const GGate> leaf = nullptr);

struct SigmaStats {
    // beta_max of the approximate gate built for levels 2..d (index 0 = level 2).
    std::vector<double> level_beta_max;
    // Workspace qubits of the gate handed to the top-level decider.
    int top_gate_workspace = 0;
    std::int64_t predicted_queries = 0;
};

// Depth-d alternating evaluator: OR over widths[0], AND over widths[1], ...
// d = 1 delegates to or_decider verbatim. Zero-width levels pass through.
DeciderResult sigma_d_eval(const OracleTable& f, const ApproxParams& params,
                           SigmaStats* stats = nullptr);
// De Morgan dual: PI_d(f) = not SIGMA_d(not f).
DeciderResult pi_d_eval(const OracleTable& f, const ApproxParams& params,
                        SigmaStats* stats = nullptr);

// Default repetition counts for the two-level evaluator. These are deliberate
// desk-scale substitutes for the choose_k prescription (which demands
// workspace far beyond any simulable register); the exhaustive n <= 3 suite
// verifies success >= 2/3 at exactly these values.
inline constexpr int kSigma2OuterK = 3;
inline constexpr int kSigma2InnerK = 2;

// SIGMA_2 with widths (n - m, m): OR over the first n-m bits of the AND over
// the last m bits. epsilon is recorded in the parameter block; the ks default
// to the constants above.
DeciderResult sigma2_eval(const OracleTable& f, int m, double epsilon = 1.0 / 12,
                          int outer_k = kSigma2OuterK, int inner_k = kSigma2InnerK,
                          int cap = kDefaultQubitCap, SigmaStats* stats = nullptr);

// Query count implied by the schedules alone (no simulation); always equals
// the measured counter of sigma_d_eval.
std::int64_t sigma_predicted_queries(const ApproxParams& params);

}  // namespace qbb
