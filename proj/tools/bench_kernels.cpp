// Compares the serial reference kernels against the OpenMP variants on a
// mid-sized register and reports per-kernel timings plus the max amplitude
// deviation between the two execution modes.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbb/statevector.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double run_workload(int qubits, std::vector<qbb::cplx>* out) {
    qbb::StateVector state(qubits, qubits);
    std::vector<int> all(qubits);
    std::iota(all.begin(), all.end(), 0);
    std::vector<int> half(all.begin(), all.begin() + qubits / 2);
    const auto start = Clock::now();
    for (int q : all) state.apply_h(q);
    state.apply_bitxor(half, qubits - 1,
                       [](std::uint64_t x) { return static_cast<int>(x & 1); });
    for (int rep = 0; rep < 4; ++rep) {
        state.apply_phase_flip(half, 0);
        state.invert_about_mean(half);
    }
    for (int q = 0; q + 1 < qubits; ++q) state.apply_cnot(q, q + 1);
    const double norm = state.norm();
    const double elapsed = seconds_since(start);
    if (out) out->assign(state.amplitudes().begin(), state.amplitudes().end());
    std::printf("    norm after workload: %.12f\n", norm);
    return elapsed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP kernel benchmark"};
    int qubits = 22;
    int repeats = 3;
    app.add_option("--qubits", qubits, "register size")->check(CLI::Range(4, 26));
    app.add_option("--repeats", repeats, "timed repetitions")->check(CLI::Range(1, 100));
    CLI11_PARSE(app, argc, argv);

    std::vector<qbb::cplx> serial_amps, parallel_amps;
    double best_serial = 1e300, best_parallel = 1e300;

    std::printf("workload: %d qubits, %d repetitions per mode\n", qubits, repeats);
    qbb::kernels::set_exec_mode(qbb::kernels::ExecMode::Serial);
    std::printf("serial reference:\n");
    for (int r = 0; r < repeats; ++r)
        best_serial = std::min(best_serial, run_workload(qubits, &serial_amps));

    qbb::kernels::set_exec_mode(qbb::kernels::ExecMode::Parallel);
    std::printf("OpenMP:\n");
    for (int r = 0; r < repeats; ++r)
        best_parallel = std::min(best_parallel, run_workload(qubits, &parallel_amps));

    double max_dev = 0.0;
    for (std::size_t i = 0; i < serial_amps.size(); ++i)
        max_dev = std::max(max_dev, std::abs(serial_amps[i] - parallel_amps[i]));

    std::printf("best serial:   %.4f s\n", best_serial);
    std::printf("best OpenMP:   %.4f s\n", best_parallel);
    std::printf("speedup:       %.2fx\n", best_serial / best_parallel);
    std::printf("max amplitude deviation between modes: %.3e\n", max_dev);
    return max_dev < 1e-12 ? 0 : 1;
}
