#include "qbb/kernels.hpp"

#include <atomic>
#include <cstddef>
#include <vector>

namespace qbb::kernels {

namespace {

std::atomic<ExecMode> g_mode{ExecMode::Parallel};

inline std::uint64_t qubit_mask(int num_qubits, int qubit) {
    return std::uint64_t{1} << (num_qubits - 1 - qubit);
}

// Scatters the low bits of `value` into the given index-bit masks (MSB-first
// over the mask list).
inline std::uint64_t scatter(std::uint64_t value, std::span<const std::uint64_t> masks) {
    std::uint64_t out = 0;
    const std::size_t k = masks.size();
    for (std::size_t i = 0; i < k; ++i) {
        if (value >> (k - 1 - i) & 1) out |= masks[i];
    }
    return out;
}

std::vector<std::uint64_t> qubit_masks(int num_qubits, std::span<const int> qubits) {
    std::vector<std::uint64_t> masks;
    masks.reserve(qubits.size());
    for (int q : qubits) masks.push_back(qubit_mask(num_qubits, q));
    return masks;
}

inline std::uint64_t extract(std::uint64_t index, std::span<const std::uint64_t> masks) {
    std::uint64_t out = 0;
    for (std::uint64_t m : masks) out = out << 1 | ((index & m) != 0);
    return out;
}

template <bool Parallel>
void apply_single_impl(std::span<cplx> amps, int num_qubits, int qubit,
                       const std::array<cplx, 4>& u) {
    const std::uint64_t bit = qubit_mask(num_qubits, qubit);
    const std::int64_t half = static_cast<std::int64_t>(amps.size() / 2);
    const std::uint64_t low_mask = bit - 1;
#pragma omp parallel for if (Parallel) schedule(static)
    for (std::int64_t h = 0; h < half; ++h) {
        const std::uint64_t i0 =
            ((static_cast<std::uint64_t>(h) & ~low_mask) << 1) |
            (static_cast<std::uint64_t>(h) & low_mask);
        const std::uint64_t i1 = i0 | bit;
        const cplx a = amps[i0], b = amps[i1];
        amps[i0] = u[0] * a + u[1] * b;
        amps[i1] = u[2] * a + u[3] * b;
    }
}

template <bool Parallel>
void apply_cnot_impl(std::span<cplx> amps, int num_qubits, int control, int target) {
    const std::uint64_t cbit = qubit_mask(num_qubits, control);
    const std::uint64_t tbit = qubit_mask(num_qubits, target);
    const std::int64_t dim = static_cast<std::int64_t>(amps.size());
#pragma omp parallel for if (Parallel) schedule(static)
    for (std::int64_t i = 0; i < dim; ++i) {
        const auto idx = static_cast<std::uint64_t>(i);
        if ((idx & cbit) && !(idx & tbit)) std::swap(amps[idx], amps[idx | tbit]);
    }
}

template <bool Parallel>
void apply_mcx_impl(std::span<cplx> amps, int num_qubits, std::span<const int> controls,
                    std::span<const int> polarities, int target) {
    const std::uint64_t tbit = qubit_mask(num_qubits, target);
    std::uint64_t cmask = 0, cwant = 0;
    for (std::size_t i = 0; i < controls.size(); ++i) {
        const std::uint64_t m = qubit_mask(num_qubits, controls[i]);
        cmask |= m;
        if (polarities[i]) cwant |= m;
    }
    const std::int64_t dim = static_cast<std::int64_t>(amps.size());
#pragma omp parallel for if (Parallel) schedule(static)
    for (std::int64_t i = 0; i < dim; ++i) {
        const auto idx = static_cast<std::uint64_t>(i);
        if ((idx & cmask) == cwant && !(idx & tbit)) std::swap(amps[idx], amps[idx | tbit]);
    }
}

template <bool Parallel>
void apply_phase_flip_impl(std::span<cplx> amps, int num_qubits,
                           std::span<const int> qubits, std::uint64_t pattern) {
    const auto masks = qubit_masks(num_qubits, qubits);
    std::uint64_t mask = 0, want = 0;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        mask |= masks[i];
        if (pattern >> (masks.size() - 1 - i) & 1) want |= masks[i];
    }
    const std::int64_t dim = static_cast<std::int64_t>(amps.size());
#pragma omp parallel for if (Parallel) schedule(static)
    for (std::int64_t i = 0; i < dim; ++i) {
        const auto idx = static_cast<std::uint64_t>(i);
        if ((idx & mask) == want) amps[idx] = -amps[idx];
    }
}

template <bool Parallel>
void apply_bitxor_impl(std::span<cplx> amps, int num_qubits, std::span<const int> inputs,
                       int target, const std::function<int(std::uint64_t)>& fn) {
    const auto masks = qubit_masks(num_qubits, inputs);
    const std::uint64_t tbit = qubit_mask(num_qubits, target);
    const std::int64_t dim = static_cast<std::int64_t>(amps.size());
#pragma omp parallel for if (Parallel) schedule(static)
    for (std::int64_t i = 0; i < dim; ++i) {
        const auto idx = static_cast<std::uint64_t>(i);
        if (idx & tbit) continue;
        if (fn(extract(idx, masks)) & 1) std::swap(amps[idx], amps[idx | tbit]);
    }
}

template <bool Parallel>
void invert_about_mean_impl(std::span<cplx> amps, int num_qubits,
                            std::span<const int> qubits) {
    const auto sub_masks = qubit_masks(num_qubits, qubits);
    const int m = static_cast<int>(qubits.size());
    std::vector<std::uint64_t> comp_masks;
    {
        std::uint64_t sub = 0;
        for (auto msk : sub_masks) sub |= msk;
        for (int b = num_qubits - 1; b >= 0; --b) {
            const std::uint64_t msk = std::uint64_t{1} << b;
            if (!(sub & msk)) comp_masks.insert(comp_masks.begin(), msk);
        }
    }
    std::vector<std::uint64_t> offsets(std::size_t{1} << m);
    for (std::uint64_t v = 0; v < offsets.size(); ++v) offsets[v] = scatter(v, sub_masks);
    const std::int64_t blocks = std::int64_t{1} << (num_qubits - m);
    const double inv = 1.0 / static_cast<double>(offsets.size());
#pragma omp parallel for if (Parallel) schedule(static)
    for (std::int64_t blk = 0; blk < blocks; ++blk) {
        const std::uint64_t base = scatter(static_cast<std::uint64_t>(blk), comp_masks);
        cplx mean{0.0, 0.0};
        for (std::uint64_t off : offsets) mean += amps[base | off];
        mean *= 2.0 * inv;
        for (std::uint64_t off : offsets) {
            cplx& a = amps[base | off];
            a = mean - a;
        }
    }
}

template <bool Parallel>
double norm_sq_impl(std::span<const cplx> amps) {
    const std::int64_t dim = static_cast<std::int64_t>(amps.size());
    double total = 0.0;
#pragma omp parallel for if (Parallel) schedule(static) reduction(+ : total)
    for (std::int64_t i = 0; i < dim; ++i) total += std::norm(amps[i]);
    return total;
}

}  // namespace

ExecMode exec_mode() { return g_mode.load(); }
void set_exec_mode(ExecMode mode) { g_mode.store(mode); }

#define QBB_DISPATCH(fn, ...)                                  \
    if (g_mode.load() == ExecMode::Parallel)                   \
        parallel::fn(__VA_ARGS__);                             \
    else                                                       \
        serial::fn(__VA_ARGS__)

void apply_single(std::span<cplx> amps, int num_qubits, int qubit,
                  const std::array<cplx, 4>& u) {
    QBB_DISPATCH(apply_single, amps, num_qubits, qubit, u);
}
void apply_cnot(std::span<cplx> amps, int num_qubits, int control, int target) {
    QBB_DISPATCH(apply_cnot, amps, num_qubits, control, target);
}
void apply_mcx(std::span<cplx> amps, int num_qubits, std::span<const int> controls,
               std::span<const int> polarities, int target) {
    QBB_DISPATCH(apply_mcx, amps, num_qubits, controls, polarities, target);
}
void apply_phase_flip(std::span<cplx> amps, int num_qubits, std::span<const int> qubits,
                      std::uint64_t pattern) {
    QBB_DISPATCH(apply_phase_flip, amps, num_qubits, qubits, pattern);
}
void apply_bitxor(std::span<cplx> amps, int num_qubits, std::span<const int> inputs,
                  int target, const std::function<int(std::uint64_t)>& fn) {
    QBB_DISPATCH(apply_bitxor, amps, num_qubits, inputs, target, fn);
}
void invert_about_mean(std::span<cplx> amps, int num_qubits, std::span<const int> qubits) {
    QBB_DISPATCH(invert_about_mean, amps, num_qubits, qubits);
}
double norm_sq(std::span<const cplx> amps) {
    return g_mode.load() == ExecMode::Parallel ? parallel::norm_sq(amps)
                                               : serial::norm_sq(amps);
}

#undef QBB_DISPATCH

namespace serial {
void apply_single(std::span<cplx> amps, int num_qubits, int qubit,
                  const std::array<cplx, 4>& u) {
    apply_single_impl<false>(amps, num_qubits, qubit, u);
}
void apply_cnot(std::span<cplx> amps, int num_qubits, int control, int target) {
    apply_cnot_impl<false>(amps, num_qubits, control, target);
}
void apply_mcx(std::span<cplx> amps, int num_qubits, std::span<const int> controls,
               std::span<const int> polarities, int target) {
    apply_mcx_impl<false>(amps, num_qubits, controls, polarities, target);
}
void apply_phase_flip(std::span<cplx> amps, int num_qubits, std::span<const int> qubits,
                      std::uint64_t pattern) {
    apply_phase_flip_impl<false>(amps, num_qubits, qubits, pattern);
}
void apply_bitxor(std::span<cplx> amps, int num_qubits, std::span<const int> inputs,
                  int target, const std::function<int(std::uint64_t)>& fn) {
    apply_bitxor_impl<false>(amps, num_qubits, inputs, target, fn);
}
void invert_about_mean(std::span<cplx> amps, int num_qubits, std::span<const int> qubits) {
    invert_about_mean_impl<false>(amps, num_qubits, qubits);
}
double norm_sq(std::span<const cplx> amps) { return norm_sq_impl<false>(amps); }
}  // namespace serial

namespace parallel {
void apply_single(std::span<cplx> amps, int num_qubits, int qubit,
                  const std::array<cplx, 4>& u) {
    apply_single_impl<true>(amps, num_qubits, qubit, u);
}
void apply_cnot(std::span<cplx> amps, int num_qubits, int control, int target) {
    apply_cnot_impl<true>(amps, num_qubits, control, target);
}
void apply_mcx(std::span<cplx> amps, int num_qubits, std::span<const int> controls,
               std::span<const int> polarities, int target) {
    apply_mcx_impl<true>(amps, num_qubits, controls, polarities, target);
}
void apply_phase_flip(std::span<cplx> amps, int num_qubits, std::span<const int> qubits,
                      std::uint64_t pattern) {
    apply_phase_flip_impl<true>(amps, num_qubits, qubits, pattern);
}
void apply_bitxor(std::span<cplx> amps, int num_qubits, std::span<const int> inputs,
                  int target, const std::function<int(std::uint64_t)>& fn) {
    apply_bitxor_impl<true>(amps, num_qubits, inputs, target, fn);
}
void invert_about_mean(std::span<cplx> amps, int num_qubits, std::span<const int> qubits) {
    invert_about_mean_impl<true>(amps, num_qubits, qubits);
}
double norm_sq(std::span<const cplx> amps) { return norm_sq_impl<true>(amps); }
}  // namespace parallel

}  // namespace qbb::kernels
