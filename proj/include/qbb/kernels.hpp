#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>

namespace qbb {

using cplx = std::complex<double>;

// Amplitude-array kernels. Every kernel exists twice: a serial reference
// implementation and an OpenMP one. The public entry points dispatch on the
// process-wide execution mode; tests compare the two directly.
//
// Bit convention (used project-wide): qubit 0 is the MOST significant bit of
// the amplitude index. For a register of Q qubits, qubit q owns index bit
// (Q-1-q).
namespace kernels {

enum class ExecMode { Serial, Parallel };

ExecMode exec_mode();
void set_exec_mode(ExecMode mode);

// target ⊕-bit of each kernel argument below is a qubit number, not an index bit.

void apply_single(std::span<cplx> amps, int num_qubits, int qubit,
                  const std::array<cplx, 4>& u);
void apply_cnot(std::span<cplx> amps, int num_qubits, int control, int target);

// Multi-controlled X: flips `target` on basis states where every control
// qubit matches its polarity bit (1 = require |1>, 0 = require |0>).
void apply_mcx(std::span<cplx> amps, int num_qubits,
               std::span<const int> controls, std::span<const int> polarities,
               int target);

// Phase flip: negates amplitudes of basis states whose `qubits` bits equal
// `pattern` (pattern bit i corresponds to qubits[i], MSB-first within the list).
void apply_phase_flip(std::span<cplx> amps, int num_qubits,
                      std::span<const int> qubits, std::uint64_t pattern);

// target ⊕= fn(x) where x is read MSB-first from `inputs`. Covers f-gates and
// any classical reversible map a protocol party applies.
void apply_bitxor(std::span<cplx> amps, int num_qubits,
                  std::span<const int> inputs, int target,
                  const std::function<int(std::uint64_t)>& fn);

// Inversion about the mean restricted to the 2^|qubits| block spanned by
// `qubits`, independently for every setting of the remaining qubits.
void invert_about_mean(std::span<cplx> amps, int num_qubits,
                       std::span<const int> qubits);

double norm_sq(std::span<const cplx> amps);

// Serial reference versions (always available, used by tests and the bench).
namespace serial {
void apply_single(std::span<cplx> amps, int num_qubits, int qubit,
                  const std::array<cplx, 4>& u);
void apply_cnot(std::span<cplx> amps, int num_qubits, int control, int target);
void apply_mcx(std::span<cplx> amps, int num_qubits,
               std::span<const int> controls, std::span<const int> polarities,
               int target);
void apply_phase_flip(std::span<cplx> amps, int num_qubits,
                      std::span<const int> qubits, std::uint64_t pattern);
void apply_bitxor(std::span<cplx> amps, int num_qubits,
                  std::span<const int> inputs, int target,
                  const std::function<int(std::uint64_t)>& fn);
void invert_about_mean(std::span<cplx> amps, int num_qubits,
                       std::span<const int> qubits);
double norm_sq(std::span<const cplx> amps);
}  // namespace serial

namespace parallel {
void apply_single(std::span<cplx> amps, int num_qubits, int qubit,
                  const std::array<cplx, 4>& u);
void apply_cnot(std::span<cplx> amps, int num_qubits, int control, int target);
void apply_mcx(std::span<cplx> amps, int num_qubits,
               std::span<const int> controls, std::span<const int> polarities,
               int target);
void apply_phase_flip(std::span<cplx> amps, int num_qubits,
                      std::span<const int> qubits, std::uint64_t pattern);
void apply_bitxor(std::span<cplx> amps, int num_qubits,
                  std::span<const int> inputs, int target,
                  const std::function<int(std::uint64_t)>& fn);
void invert_about_mean(std::span<cplx> amps, int num_qubits,
                       std::span<const int> qubits);
double norm_sq(std::span<const cplx> amps);
}  // namespace parallel

}  // namespace kernels
}  // namespace qbb
