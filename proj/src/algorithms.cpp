#include "qbb/algorithms.hpp"

#include <cmath>
#include <numeric>

#include "qbb/errors.hpp"

namespace qbb {

RunSchedule ladder_schedule(int m) {
    if (m < 0) throw ValidationError("negative search width");
    const int cap = static_cast<int>(std::ceil(std::sqrt(std::pow(2.0, m))));
    RunSchedule s;
    s.rule = "fibonacci-capped";
    int a = 1, b = 2;
    while (a < cap) {
        s.lengths.push_back(a);
        const int next = a + b;
        a = b;
        b = next;
    }
    s.lengths.push_back(cap);
    return s;
}

RunSchedule repeated_ladder(int m, int k) {
    if (k < 1) throw ValidationError("repetition count must be positive");
    const RunSchedule one = ladder_schedule(m);
    RunSchedule s;
    s.rule = one.rule + " x" + std::to_string(k);
    for (int i = 0; i < k; ++i)
        s.lengths.insert(s.lengths.end(), one.lengths.begin(), one.lengths.end());
    return s;
}

DeciderResult deutsch_jozsa(const OracleTable& f) {
    const int n = f.n();
    StateVector state(n + 1);
    std::vector<int> inputs(n);
    std::iota(inputs.begin(), inputs.end(), 0);
    QueryCounter counter;
    for (int q : inputs) state.apply_h(q);
    apply_phase_oracle(state, f, inputs, n, counter);
    for (int q : inputs) state.apply_h(q);
    const double p_zero = state.pattern_probability(inputs, 0);
    DeciderResult r;
    r.answer = p_zero > 0.5 ? 0 : 1;
    r.queries = counter.count;
    r.output_one_probability = 1.0 - p_zero;
    r.success_probability = r.answer == 0 ? p_zero : 1.0 - p_zero;
    return r;
}

void grover_iterate(StateVector& state, const OracleTable& f, int j,
                    QueryCounter& counter) {
    const int n = f.n();
    if (state.num_qubits() != n + 1)
        throw ValidationError("grover register must hold the inputs plus one ancilla");
    if (j < 0) throw ValidationError("negative iteration count");
    std::vector<int> inputs(n);
    std::iota(inputs.begin(), inputs.end(), 0);
    for (int it = 0; it < j; ++it) {
        apply_phase_oracle(state, f, inputs, n, counter);
        state.invert_about_mean(inputs);
    }
}

DeciderResult or_decider(const OracleTable& f, int k, const RunSchedule& schedule,
                         MarkSense sense) {
    if (k < 1) throw ValidationError("repetition count must be positive");
    const int m = f.n();
    const OracleTable marked = sense == MarkSense::Ones ? f : f.negated();
    std::vector<int> inputs(m);
    std::iota(inputs.begin(), inputs.end(), 0);

    QueryCounter counter;
    double miss = 1.0;  // probability that no run produces a confirmed candidate
    for (int rep = 0; rep < k; ++rep) {
        for (int j : schedule.lengths) {
            StateVector state(m + 1);
            for (int q : inputs) state.apply_h(q);
            grover_iterate(state, marked, j, counter);
            // classical confirmation of the measured candidate: one query
            counter.add();
            double p_hit = 0.0;
            for (std::uint64_t x = 0; x < marked.size(); ++x)
                if (marked.value(x))
                    p_hit += state.pattern_probability(inputs, x);
            miss *= 1.0 - p_hit;
        }
    }

    DeciderResult r;
    r.queries = counter.count;
    r.output_one_probability = 1.0 - miss;
    r.answer = r.output_one_probability >= 0.5 ? 1 : 0;
    const int truth = eval_or(marked);
    r.success_probability = truth == 1 ? r.output_one_probability : miss;
    r.cost_constant =
        static_cast<double>(r.queries) / (k * std::sqrt(std::pow(2.0, m)));
    return r;
}

DeciderResult or_decider(const OracleTable& f, int k) {
    return or_decider(f, k, repeated_ladder(f.n(), 1));
}

}  // namespace qbb
