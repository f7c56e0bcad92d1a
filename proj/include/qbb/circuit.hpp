#pragma once

#include <optional>
#include <vector>

#include "qbb/oracle.hpp"
#include "qbb/statevector.hpp"

namespace qbb {

// One circuit element. Oracle calls may either carry their own table or leave
// it unset, in which case the runner substitutes the circuit's input oracle
// (this is how the same circuit runs directly and as a protocol).
struct GateOp {
    enum class Kind { SingleQubit, ControlledNot, OracleCall, AdjointBlock };

    Kind kind = Kind::SingleQubit;
    int target = 0;
    int control = 0;
    std::array<cplx, 4> matrix{};
    std::optional<OracleTable> oracle;
    std::vector<int> inputs;
    std::vector<GateOp> block;

    static GateOp single(int qubit, const std::array<cplx, 4>& u);
    static GateOp hadamard(int qubit);
    static GateOp pauli_x(int qubit);
    static GateOp cnot(int control, int target);
    static GateOp oracle_call(std::vector<int> inputs, int output);
    static GateOp oracle_call(OracleTable f, std::vector<int> inputs, int output);
    static GateOp adjoint_of(std::vector<GateOp> block);

    GateOp adjoint() const;
};

using Circuit = std::vector<GateOp>;

// Applies one gate. 2x2 matrices are checked for unitarity (1e-9 entrywise);
// oracle calls without a bound table use `fallback` and charge one query.
void apply_gate(StateVector& state, const GateOp& op, QueryCounter& counter,
                const OracleTable* fallback = nullptr);

void apply_circuit(StateVector& state, const Circuit& circuit, QueryCounter& counter,
                   const OracleTable* fallback = nullptr);

// Inverse gates in reverse order.
void apply_adjoint(StateVector& state, const Circuit& circuit, QueryCounter& counter,
                   const OracleTable* fallback = nullptr);

}  // namespace qbb
