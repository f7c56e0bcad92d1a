#include "qbb/circuit.hpp"

#include <cmath>

#include "qbb/errors.hpp"

namespace qbb {

namespace {
constexpr double kSqrtHalf = 0.70710678118654752440;

void check_unitary(const std::array<cplx, 4>& u) {
    // U U† = I, entrywise within 1e-9.
    const cplx a = u[0], b = u[1], c = u[2], d = u[3];
    const cplx e00 = a * std::conj(a) + b * std::conj(b);
    const cplx e01 = a * std::conj(c) + b * std::conj(d);
    const cplx e10 = c * std::conj(a) + d * std::conj(b);
    const cplx e11 = c * std::conj(c) + d * std::conj(d);
    if (std::abs(e00 - 1.0) > 1e-9 || std::abs(e11 - 1.0) > 1e-9 ||
        std::abs(e01) > 1e-9 || std::abs(e10) > 1e-9)
        throw ValidationError("2x2 gate matrix is not unitary");
}

std::array<cplx, 4> dagger(const std::array<cplx, 4>& u) {
    return {std::conj(u[0]), std::conj(u[2]), std::conj(u[1]), std::conj(u[3])};
}
}  // namespace

GateOp GateOp::single(int qubit, const std::array<cplx, 4>& u) {
    GateOp op;
    op.kind = Kind::SingleQubit;
    op.target = qubit;
    op.matrix = u;
    return op;
}

GateOp GateOp::hadamard(int qubit) {
    return single(qubit, {kSqrtHalf, kSqrtHalf, kSqrtHalf, -kSqrtHalf});
}

GateOp GateOp::pauli_x(int qubit) {
    return single(qubit, {cplx{0.0}, cplx{1.0}, cplx{1.0}, cplx{0.0}});
}

GateOp GateOp::cnot(int control, int target) {
    GateOp op;
    op.kind = Kind::ControlledNot;
    op.control = control;
    op.target = target;
    return op;
}

GateOp GateOp::oracle_call(std::vector<int> inputs, int output) {
    GateOp op;
    op.kind = Kind::OracleCall;
    op.inputs = std::move(inputs);
    op.target = output;
    return op;
}

GateOp GateOp::oracle_call(OracleTable f, std::vector<int> inputs, int output) {
    GateOp op = oracle_call(std::move(inputs), output);
    op.oracle = std::move(f);
    return op;
}

GateOp GateOp::adjoint_of(std::vector<GateOp> block) {
    GateOp op;
    op.kind = Kind::AdjointBlock;
    op.block = std::move(block);
    return op;
}

GateOp GateOp::adjoint() const {
    switch (kind) {
        case Kind::SingleQubit: {
            GateOp op = *this;
            op.matrix = dagger(matrix);
            return op;
        }
        case Kind::ControlledNot:
        case Kind::OracleCall:
            return *this;  // self-inverse
        case Kind::AdjointBlock:
            return adjoint_of(block);  // handled by the runner
    }
    throw InternalError("unknown gate kind");
}

void apply_gate(StateVector& state, const GateOp& op, QueryCounter& counter,
                const OracleTable* fallback) {
    switch (op.kind) {
        case GateOp::Kind::SingleQubit:
            check_unitary(op.matrix);
            state.apply_single(op.target, op.matrix);
            return;
        case GateOp::Kind::ControlledNot:
            state.apply_cnot(op.control, op.target);
            return;
        case GateOp::Kind::OracleCall: {
            const OracleTable* f = op.oracle ? &*op.oracle : fallback;
            if (!f) throw ValidationError("oracle call without a bound or fallback table");
            apply_f_gate(state, *f, op.inputs, op.target, counter);
            return;
        }
        case GateOp::Kind::AdjointBlock:
            apply_adjoint(state, op.block, counter, fallback);
            return;
    }
    throw InternalError("unknown gate kind");
}

void apply_circuit(StateVector& state, const Circuit& circuit, QueryCounter& counter,
                   const OracleTable* fallback) {
    for (const GateOp& op : circuit) apply_gate(state, op, counter, fallback);
}

void apply_adjoint(StateVector& state, const Circuit& circuit, QueryCounter& counter,
                   const OracleTable* fallback) {
    for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) {
        if (it->kind == GateOp::Kind::AdjointBlock) {
            // adjoint of an adjoint block: run it forward
            apply_circuit(state, it->block, counter, fallback);
        } else {
            apply_gate(state, it->adjoint(), counter, fallback);
        }
    }
}

}  // namespace qbb
